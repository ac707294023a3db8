#include "gconv/bgf_text.hpp"

#include "gconv/error.hpp"
#include "gconv/normalize.hpp"
#include "lexer.hpp"

#include <sstream>

namespace gconv {

using detail::Tok;
using detail::TokenCursor;

namespace {

constexpr std::size_t kIndent = 8;
constexpr std::size_t kContinuation = 16;
constexpr std::size_t kWidth = 100;

std::size_t indentation(std::string_view line) {
    std::size_t n = 0;
    while (n < line.size() && (line[n] == ' ' || line[n] == '\t'))
        ++n;
    return n;
}

bool blank_or_comment(std::string_view line) {
    auto n = indentation(line);
    return n == line.size() || line.substr(n, 2) == "//";
}

struct Header {
    std::optional<std::string> label;
    std::string name;
    std::string rest; // text after the colon, usually empty
};

std::optional<Header> parse_header(std::string_view line, std::size_t lineno) {
    if (line.empty() || line[0] == ' ' || line[0] == '\t')
        return std::nullopt;
    auto toks = detail::tokenize(line, lineno);
    TokenCursor cur(std::move(toks));
    Header h;
    if (cur.accept("[")) {
        h.label = cur.expect_name().text;
        cur.expect("]");
    }
    auto & name = cur.expect_name();
    h.name = name.text;
    auto & colon = cur.expect(":");
    // Anything after the colon is kept as an inline alternative.
    std::size_t at = colon.column; // 1-based column of ':'
    if (at < line.size())
        h.rest = std::string(line.substr(at));
    return h;
}

Expression parse_line(const std::string & text, std::size_t lineno) {
    TokenCursor cur(detail::tokenize(text, lineno));
    Expression e = detail::parse_expr(cur, false, false);
    if (!cur.at_end())
        cur.fail("unexpected token");
    return e;
}

//---------------------------------------------------------------------------
// Printing

enum class Ctx { Top, InSequence, InChoice, Operand };

void print(std::ostream & os, const Expression & e, Ctx ctx);

void print_operand(std::ostream & os, const Expression & e) {
    switch (e.kind()) {
    case Kind::Sequence:
    case Kind::Choice:
    case Kind::Selectable:
        os << '(';
        print(os, e, Ctx::Top);
        os << ')';
        break;
    default:
        print(os, e, Ctx::Operand);
    }
}

void print(std::ostream & os, const Expression & e, Ctx ctx) {
    switch (e.kind()) {
    case Kind::Epsilon: os << "EPSILON"; return;
    case Kind::Fail: os << "EMPTY"; return;
    case Kind::Any: os << "ANY"; return;
    case Kind::String: os << "STRING"; return;
    case Kind::Int: os << "INT"; return;
    case Kind::Terminal: os << quote_terminal(e.text()); return;
    case Kind::Nonterminal: os << e.text(); return;
    case Kind::Selectable:
        os << e.text() << "::";
        print_operand(os, e.body());
        return;
    case Kind::Optional:
    case Kind::Plus:
    case Kind::Star:
        print_operand(os, e.body());
        os << (e.kind() == Kind::Optional ? '?' : e.kind() == Kind::Plus ? '+' : '*');
        return;
    case Kind::Marked:
        os << '<';
        print(os, e.body(), Ctx::Top);
        os << '>';
        return;
    case Kind::Sequence: {
        bool paren = ctx != Ctx::Top || e.children().empty();
        if (paren)
            os << '(';
        bool first = true;
        for (auto & c : e.children()) {
            if (!first)
                os << ' ';
            first = false;
            print(os, c, Ctx::InSequence);
        }
        if (paren)
            os << ')';
        return;
    }
    case Kind::Choice: {
        bool paren = ctx != Ctx::Top || e.children().empty();
        if (paren)
            os << '(';
        bool first = true;
        for (auto & c : e.children()) {
            if (!first)
                os << " | ";
            first = false;
            print(os, c, Ctx::InChoice);
        }
        if (paren)
            os << ')';
        return;
    }
    }
}

// Items of one printed alternative, split where a line may wrap.
std::vector<std::string> line_items(const Expression & e) {
    std::vector<std::string> items;
    if (e.kind() == Kind::Sequence && !e.children().empty()) {
        for (auto & c : e.children()) {
            std::ostringstream os;
            print(os, c, Ctx::InSequence);
            items.push_back(os.str());
        }
    } else {
        items.push_back(to_text(e));
    }
    return items;
}

void print_alternative(std::ostream & os, const Expression & e) {
    auto items = line_items(e);
    std::size_t col = kIndent;
    os << std::string(kIndent, ' ');
    bool first = true;
    for (auto & item : items) {
        if (!first) {
            if (col + 1 + item.size() > kWidth) {
                os << '\n' << std::string(kContinuation, ' ');
                col = kContinuation;
            } else {
                os << ' ';
                ++col;
            }
        }
        os << item;
        col += item.size();
        first = false;
    }
    os << '\n';
}

void print_production(std::ostream & os, const Production & p) {
    if (p.label)
        os << '[' << *p.label << "] ";
    os << p.lhs << ":\n";
    if (p.rhs.kind() == Kind::Choice && !p.rhs.children().empty()) {
        for (auto & b : p.rhs.children())
            print_alternative(os, b);
    } else {
        print_alternative(os, p.rhs);
    }
}

void dump_to(std::ostream & os, const Expression & e) {
    auto list = [&](const char * head) {
        os << head << '(';
        bool first = true;
        for (auto & c : e.children()) {
            if (!first)
                os << ", ";
            first = false;
            dump_to(os, c);
        }
        os << ')';
    };
    switch (e.kind()) {
    case Kind::Epsilon: os << "eps"; break;
    case Kind::Fail: os << "fail"; break;
    case Kind::Any: os << "any"; break;
    case Kind::String: os << "str"; break;
    case Kind::Int: os << "int"; break;
    case Kind::Terminal: os << "t(" << quote_terminal(e.text()) << ')'; break;
    case Kind::Nonterminal: os << "n(" << e.text() << ')'; break;
    case Kind::Selectable:
        os << "sel(" << e.text() << ", ";
        dump_to(os, e.body());
        os << ')';
        break;
    case Kind::Sequence: list("seq"); break;
    case Kind::Choice: list("alt"); break;
    case Kind::Optional: list("opt"); break;
    case Kind::Plus: list("plus"); break;
    case Kind::Star: list("star"); break;
    case Kind::Marked: list("mark"); break;
    }
}

} // namespace

//===========================================================================
std::string quote_terminal(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

//===========================================================================
Grammar parse_grammar(std::string_view text) {
    Grammar g;
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start <= text.size();) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }

    struct Open {
        Header header;
        std::size_t line;
        std::size_t alt_indent = 0;
        std::vector<std::pair<std::string, std::size_t>> alternatives;
    };
    std::optional<Open> open;

    auto close = [&]() {
        if (!open)
            return;
        if (open->alternatives.empty())
            throw SyntaxError("production " + open->header.name + " has no alternatives",
                              open->line, 1);
        std::vector<Expression> branches;
        for (auto & [t, ln] : open->alternatives)
            branches.push_back(parse_line(t, ln));
        Expression rhs = branches.size() == 1 ? std::move(branches.front())
                                              : choice(std::move(branches));
        g.productions.push_back(make_production(open->header.name, std::move(rhs),
                                                open->header.label));
        open.reset();
    };

    bool roots_seen = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = lines[i];
        std::size_t lineno = i + 1;
        if (blank_or_comment(line))
            continue;
        if (line.substr(0, 6) == "%roots") {
            close();
            if (roots_seen)
                throw SyntaxError("repeated %roots line", lineno, 1);
            roots_seen = true;
            auto toks = detail::tokenize(line.substr(6), lineno);
            for (auto & t : toks) {
                if (t.kind == Tok::End)
                    break;
                if (t.kind != Tok::Name)
                    throw SyntaxError("root must be a name", lineno, t.column + 6);
                g.roots.push_back(t.text);
            }
            continue;
        }
        auto indent = indentation(line);
        if (indent == 0) {
            close();
            auto h = parse_header(line, lineno);
            if (!h)
                throw SyntaxError("expected a production header", lineno, 1);
            open = Open{*h, lineno, 0, {}};
            auto rest_indent = indentation(open->header.rest);
            if (rest_indent < open->header.rest.size()
                && open->header.rest.substr(rest_indent, 2) != "//")
                open->alternatives.emplace_back(open->header.rest, lineno);
            continue;
        }
        if (!open)
            throw SyntaxError("alternative outside of a production", lineno, indent + 1);
        std::string content(line.substr(indent));
        if (open->alt_indent == 0) {
            open->alt_indent = indent;
            open->alternatives.emplace_back(content, lineno);
        } else if (indent > open->alt_indent && !open->alternatives.empty()) {
            open->alternatives.back().first += " " + content;
        } else {
            open->alternatives.emplace_back(content, lineno);
        }
    }
    close();

    try {
        return finalize(std::move(g));
    } catch (const InvariantError & e) {
        throw SyntaxError(e.what(), 1, 1);
    }
}

//===========================================================================
Expression parse_expression(std::string_view text) {
    TokenCursor cur(detail::tokenize(text));
    Expression e = detail::parse_expr(cur, false, true);
    if (!cur.at_end())
        cur.fail("unexpected token");
    return e;
}

//===========================================================================
std::string pretty(const Grammar & g) {
    std::ostringstream os;
    if (!g.roots.empty()) {
        os << "%roots";
        for (auto & r : g.roots)
            os << ' ' << r;
        os << '\n';
    }
    for (auto & p : g.productions)
        print_production(os, p);
    return os.str();
}

std::string pretty(const Production & p) {
    std::ostringstream os;
    print_production(os, p);
    return os.str();
}

std::string to_text(const Expression & e) {
    std::ostringstream os;
    print(os, e, Ctx::Top);
    return os.str();
}

std::string to_spaced_text(const Expression & e) {
    if (e.kind() != Kind::Sequence || e.children().empty())
        return to_text(e);
    std::ostringstream os;
    bool first = true;
    for (auto & c : e.children()) {
        if (!first)
            os << " SPACE ";
        first = false;
        print(os, c, Ctx::InSequence);
    }
    return os.str();
}

//===========================================================================
std::string dump(const Expression & e) {
    std::ostringstream os;
    dump_to(os, e);
    return os.str();
}

std::string dump(const Grammar & g) {
    std::ostringstream os;
    os << "roots:";
    for (auto & r : g.roots)
        os << ' ' << r;
    os << '\n';
    for (auto & p : g.productions) {
        if (p.label)
            os << '[' << *p.label << "] ";
        os << p.lhs << " -> " << dump(p.rhs) << '\n';
    }
    return os.str();
}

} // namespace gconv
