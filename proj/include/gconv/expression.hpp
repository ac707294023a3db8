#pragma once

#include <compare>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace gconv {

enum class Kind {
    Epsilon,     // EPSILON, the empty word
    Fail,        // EMPTY, the empty language
    Any,         // ANY
    String,      // STRING
    Int,         // INT
    Terminal,
    Nonterminal,
    Selectable,  // selector::body
    Sequence,
    Choice,
    Optional,
    Plus,
    Star,
    Marked,      // <body>, transformation arguments only
};

std::string_view kind_name(Kind kind);

//===========================================================================
// A grammar expression. Plain value type: construct through the factory
// functions below, which validate the per-variant invariants.
//
//   text      terminal text, nonterminal name or selector
//   children  parts of a sequence, branches of a choice, or the single
//             body of selectable / optional / plus / star / marked
//===========================================================================
class Expression {
public:
    Expression() = default; // epsilon

    Kind kind() const { return m_kind; }
    const std::string & text() const { return m_text; }
    const std::vector<Expression> & children() const { return m_children; }

    // Body of a unary node (selectable, optional, plus, star, marked).
    const Expression & body() const;

    bool is_leaf() const { return m_children.empty() && !is_composite(); }
    bool is_composite() const;
    bool is_repetition() const {
        return m_kind == Kind::Optional || m_kind == Kind::Plus || m_kind == Kind::Star;
    }

    // Number of nodes.
    std::size_t size() const;

    friend bool operator==(const Expression &, const Expression &) = default;
    friend std::strong_ordering operator<=>(const Expression &, const Expression &);

    // Raw constructor used by factories and tree rebuilding.
    static Expression make(Kind kind, std::string text, std::vector<Expression> children);

private:
    Kind m_kind = Kind::Epsilon;
    std::string m_text;
    std::vector<Expression> m_children;
};

Expression epsilon();
Expression fail();
Expression any();
Expression value_string();
Expression value_int();
Expression terminal(std::string text);
Expression nonterminal(std::string name);
Expression selectable(std::string selector, Expression body);
Expression sequence(std::vector<Expression> parts);
Expression choice(std::vector<Expression> branches);
Expression optional(Expression body);
Expression plus(Expression body);
Expression star(Expression body);
Expression marked(Expression body);

// Same node with new children (kind and text kept).
Expression with_children(const Expression & e, std::vector<Expression> children);

// Pre-order visit of every node.
void visit(const Expression & e, const std::function<void(const Expression &)> & fn);

// Bottom-up rebuild: children are mapped first, then fn sees the rebuilt node.
Expression rewrite(const Expression & e, const std::function<Expression(Expression)> & fn);

bool references(const Expression & e, std::string_view name);
std::size_t count_references(const Expression & e, std::string_view name);
std::size_t count_markers(const Expression & e);

// Nonterminal names in first-occurrence order.
std::vector<std::string> referenced_names(const Expression & e);

// Replace every nonterminal `from` with nonterminal `to`.
Expression rename_nonterminal(const Expression & e, std::string_view from, const std::string & to);

// Nullable in the string sense: derives the empty word without consulting
// nonterminal definitions.
bool nillable(const Expression & e);

} // namespace gconv
