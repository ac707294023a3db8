#include "gconv/expression.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace gconv {

namespace {

void require(bool cond, const char * what) {
    if (!cond)
        throw std::invalid_argument(what);
}

} // namespace

//===========================================================================
std::string_view kind_name(Kind kind) {
    switch (kind) {
    case Kind::Epsilon: return "epsilon";
    case Kind::Fail: return "fail";
    case Kind::Any: return "any";
    case Kind::String: return "string";
    case Kind::Int: return "int";
    case Kind::Terminal: return "terminal";
    case Kind::Nonterminal: return "nonterminal";
    case Kind::Selectable: return "selectable";
    case Kind::Sequence: return "sequence";
    case Kind::Choice: return "choice";
    case Kind::Optional: return "optional";
    case Kind::Plus: return "plus";
    case Kind::Star: return "star";
    case Kind::Marked: return "marked";
    }
    return "?";
}

//===========================================================================
const Expression & Expression::body() const {
    if (m_children.size() != 1 || m_kind == Kind::Sequence || m_kind == Kind::Choice)
        throw std::logic_error("expression has no single body");
    return m_children.front();
}

//===========================================================================
bool Expression::is_composite() const {
    switch (m_kind) {
    case Kind::Selectable:
    case Kind::Sequence:
    case Kind::Choice:
    case Kind::Optional:
    case Kind::Plus:
    case Kind::Star:
    case Kind::Marked:
        return true;
    default:
        return false;
    }
}

//===========================================================================
std::size_t Expression::size() const {
    std::size_t n = 1;
    for (auto & c : m_children)
        n += c.size();
    return n;
}

//===========================================================================
std::strong_ordering operator<=>(const Expression & a, const Expression & b) {
    if (auto c = a.m_kind <=> b.m_kind; c != 0)
        return c;
    if (auto c = a.m_text <=> b.m_text; c != 0)
        return c;
    return std::lexicographical_compare_three_way(
        a.m_children.begin(), a.m_children.end(),
        b.m_children.begin(), b.m_children.end());
}

//===========================================================================
Expression Expression::make(Kind kind, std::string text, std::vector<Expression> children) {
    Expression e;
    e.m_kind = kind;
    e.m_text = std::move(text);
    e.m_children = std::move(children);
    return e;
}

Expression epsilon() { return {}; }
Expression fail() { return Expression::make(Kind::Fail, {}, {}); }
Expression any() { return Expression::make(Kind::Any, {}, {}); }
Expression value_string() { return Expression::make(Kind::String, {}, {}); }
Expression value_int() { return Expression::make(Kind::Int, {}, {}); }

Expression terminal(std::string text) {
    require(!text.empty(), "terminal text must be nonempty");
    return Expression::make(Kind::Terminal, std::move(text), {});
}

Expression nonterminal(std::string name) {
    require(!name.empty(), "nonterminal name must be nonempty");
    return Expression::make(Kind::Nonterminal, std::move(name), {});
}

Expression selectable(std::string selector, Expression body) {
    require(!selector.empty(), "selector must be nonempty");
    return Expression::make(Kind::Selectable, std::move(selector), {std::move(body)});
}

Expression sequence(std::vector<Expression> parts) {
    return Expression::make(Kind::Sequence, {}, std::move(parts));
}

Expression choice(std::vector<Expression> branches) {
    return Expression::make(Kind::Choice, {}, std::move(branches));
}

Expression optional(Expression body) {
    return Expression::make(Kind::Optional, {}, {std::move(body)});
}

Expression plus(Expression body) {
    return Expression::make(Kind::Plus, {}, {std::move(body)});
}

Expression star(Expression body) {
    return Expression::make(Kind::Star, {}, {std::move(body)});
}

Expression marked(Expression body) {
    return Expression::make(Kind::Marked, {}, {std::move(body)});
}

//===========================================================================
Expression with_children(const Expression & e, std::vector<Expression> children) {
    return Expression::make(e.kind(), e.text(), std::move(children));
}

//===========================================================================
void visit(const Expression & e, const std::function<void(const Expression &)> & fn) {
    fn(e);
    for (auto & c : e.children())
        visit(c, fn);
}

//===========================================================================
Expression rewrite(const Expression & e, const std::function<Expression(Expression)> & fn) {
    if (e.children().empty())
        return fn(e);
    std::vector<Expression> kids;
    kids.reserve(e.children().size());
    for (auto & c : e.children())
        kids.push_back(rewrite(c, fn));
    return fn(with_children(e, std::move(kids)));
}

//===========================================================================
bool references(const Expression & e, std::string_view name) {
    return count_references(e, name) > 0;
}

std::size_t count_references(const Expression & e, std::string_view name) {
    std::size_t n = 0;
    visit(e, [&](const Expression & x) {
        if (x.kind() == Kind::Nonterminal && x.text() == name)
            ++n;
    });
    return n;
}

std::size_t count_markers(const Expression & e) {
    std::size_t n = 0;
    visit(e, [&](const Expression & x) {
        if (x.kind() == Kind::Marked)
            ++n;
    });
    return n;
}

//===========================================================================
std::vector<std::string> referenced_names(const Expression & e) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    visit(e, [&](const Expression & x) {
        if (x.kind() == Kind::Nonterminal && seen.insert(x.text()).second)
            out.push_back(x.text());
    });
    return out;
}

//===========================================================================
Expression rename_nonterminal(const Expression & e, std::string_view from, const std::string & to) {
    return rewrite(e, [&](Expression x) {
        if (x.kind() == Kind::Nonterminal && x.text() == from)
            return nonterminal(to);
        return x;
    });
}

//===========================================================================
bool nillable(const Expression & e) {
    switch (e.kind()) {
    case Kind::Epsilon:
    case Kind::Optional:
    case Kind::Star:
        return true;
    case Kind::Plus:
    case Kind::Selectable:
    case Kind::Marked:
        return nillable(e.body());
    case Kind::Sequence:
        return std::all_of(e.children().begin(), e.children().end(),
            [](auto & c) { return nillable(c); });
    case Kind::Choice:
        return std::any_of(e.children().begin(), e.children().end(),
            [](auto & c) { return nillable(c); });
    default:
        return false;
    }
}

} // namespace gconv
