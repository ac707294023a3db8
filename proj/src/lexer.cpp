#include "lexer.hpp"

#include <cctype>

namespace gconv::detail {

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool is_valid_name(std::string_view s) {
    if (s.empty() || !is_name_start(s[0]))
        return false;
    for (char c : s)
        if (!is_name_char(c))
            return false;
    return true;
}

//===========================================================================
std::vector<Token> tokenize(std::string_view text, std::size_t first_line) {
    std::vector<Token> out;
    std::size_t line = first_line;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (c == '"') {
            std::string s;
            advance(1);
            bool closed = false;
            while (i < text.size()) {
                char d = text[i];
                if (d == '\n')
                    break;
                if (d == '\\' && i + 1 < text.size()) {
                    s += text[i + 1];
                    advance(2);
                    continue;
                }
                advance(1);
                if (d == '"') {
                    closed = true;
                    break;
                }
                s += d;
            }
            if (!closed)
                throw SyntaxError("unterminated string literal", t.line, t.column);
            if (s.empty())
                throw SyntaxError("empty terminal", t.line, t.column);
            t.kind = Tok::Literal;
            t.text = std::move(s);
        } else if (is_name_start(c)) {
            std::size_t j = i;
            while (j < text.size() && is_name_char(text[j]))
                ++j;
            t.kind = Tok::Name;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (c == ':' && i + 1 < text.size() && text[i + 1] == ':') {
            t.kind = Tok::Punct;
            t.text = "::";
            advance(2);
        } else if (std::string_view(":()|?+*<>[],;").find(c) != std::string_view::npos) {
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

//===========================================================================
const Token & TokenCursor::peek(std::size_t ahead) const {
    auto k = std::min(m_pos + ahead, m_toks.size() - 1);
    return m_toks[k];
}

const Token & TokenCursor::next() {
    const Token & t = peek();
    if (m_pos + 1 < m_toks.size())
        ++m_pos;
    return t;
}

bool TokenCursor::accept(std::string_view punct) {
    if (peek().is(punct)) {
        next();
        return true;
    }
    return false;
}

const Token & TokenCursor::expect(std::string_view punct) {
    if (!peek().is(punct))
        fail("expected '" + std::string(punct) + "'");
    return next();
}

const Token & TokenCursor::expect_name() {
    if (peek().kind != Tok::Name)
        fail("expected a name");
    return next();
}

void TokenCursor::fail(const std::string & what) const {
    fail(what, peek());
}

void TokenCursor::fail(const std::string & what, const Token & at) const {
    std::string found = at.kind == Tok::End ? "end of input"
        : at.kind == Tok::Literal ? "\"" + at.text + "\"" : "'" + at.text + "'";
    throw SyntaxError(what + ", found " + found, at.line, at.column);
}

bool TokenCursor::at_production_start() const {
    if (peek().kind == Tok::Name && peek(1).is(":"))
        return true;
    return peek().is("[") && peek(1).kind == Tok::Name && peek(2).is("]")
        && peek(3).kind == Tok::Name && peek(4).is(":");
}

//===========================================================================
namespace {

struct ExprParser {
    TokenCursor & cur;
    bool stop_at_production;
    bool allow_markers;

    bool at_sequence_end() const {
        auto & t = cur.peek();
        if (t.kind == Tok::End)
            return true;
        if (t.is(")") || t.is("]") || t.is(">") || t.is("|") || t.is(",") || t.is(";"))
            return true;
        return stop_at_production && cur.at_production_start();
    }

    Expression expr() {
        std::vector<Expression> branches{seq()};
        while (cur.accept("|"))
            branches.push_back(seq());
        if (branches.size() == 1)
            return std::move(branches.front());
        return choice(std::move(branches));
    }

    Expression seq() {
        std::vector<Expression> parts;
        while (!at_sequence_end())
            parts.push_back(postfix());
        if (parts.empty())
            cur.fail("expected a grammar symbol");
        if (parts.size() == 1)
            return std::move(parts.front());
        return sequence(std::move(parts));
    }

    Expression postfix() {
        Expression e = primary();
        for (;;) {
            if (cur.accept("?"))
                e = optional(std::move(e));
            else if (cur.accept("+"))
                e = plus(std::move(e));
            else if (cur.accept("*"))
                e = star(std::move(e));
            else
                return e;
        }
    }

    Expression primary() {
        const Token & t = cur.peek();
        if (t.kind == Tok::Literal) {
            cur.next();
            return terminal(t.text);
        }
        if (t.kind == Tok::Name) {
            cur.next();
            if (t.text == "EPSILON") return epsilon();
            if (t.text == "EMPTY") return fail();
            if (t.text == "ANY") return any();
            if (t.text == "STRING") return value_string();
            if (t.text == "INT") return value_int();
            if (cur.accept("::"))
                return selectable(t.text, postfix());
            return nonterminal(t.text);
        }
        if (t.is("(")) {
            cur.next();
            if (cur.accept(")"))
                return sequence({});
            Expression e = expr();
            cur.expect(")");
            return e;
        }
        // EBNF brackets, as in [ x ], read as x?
        if (t.is("[")) {
            cur.next();
            Expression e = expr();
            cur.expect("]");
            return optional(std::move(e));
        }
        if (t.is("<")) {
            if (!allow_markers)
                cur.fail("marker not allowed here");
            cur.next();
            Expression e = expr();
            cur.expect(">");
            return marked(std::move(e));
        }
        cur.fail("expected a grammar symbol");
    }
};

} // namespace

Expression parse_expr(TokenCursor & cur, bool stop_at_production, bool allow_markers) {
    ExprParser p{cur, stop_at_production, allow_markers};
    return p.expr();
}

} // namespace gconv::detail
