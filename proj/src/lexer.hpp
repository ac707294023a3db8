#pragma once

// Token stream shared by the grammar, script and argument parsers.

#include "gconv/error.hpp"
#include "gconv/expression.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gconv::detail {

enum class Tok { Name, Literal, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is(std::string_view punct) const { return kind == Tok::Punct && text == punct; }
};

// Splits text into tokens. Recognized punctuation: :: : ( ) | ? + * < > [ ] , ;
// `//` starts a comment to end of line. Line/column are 1-based and offset
// by `first_line` so callers can lex one line of a larger document.
std::vector<Token> tokenize(std::string_view text, std::size_t first_line = 1);

bool is_name_start(char c);
bool is_name_char(char c);
bool is_valid_name(std::string_view s);

class TokenCursor {
public:
    explicit TokenCursor(std::vector<Token> toks) : m_toks(std::move(toks)) {}

    const Token & peek(std::size_t ahead = 0) const;
    const Token & next();
    bool at_end() const { return peek().kind == Tok::End; }
    bool accept(std::string_view punct);
    const Token & expect(std::string_view punct);
    const Token & expect_name();
    [[noreturn]] void fail(const std::string & what) const;
    [[noreturn]] void fail(const std::string & what, const Token & at) const;

    // True when the cursor is at `Name :` (but not `Name ::`), or at
    // `[label] Name :`.
    bool at_production_start() const;

private:
    std::vector<Token> m_toks;
    std::size_t m_pos = 0;
};

// expr := alt ; alt := seq ('|' seq)* ; seq := postfix+ ;
// postfix := primary ('?' | '+' | '*')* ; primary := literal | keyword | name
//   | name '::' postfix | '(' expr? ')' | '<' expr '>'
// A sequence ends at ')', '>', '|', ',', ';', end of input, or at the start of
// another production when `stop_at_production` is set.
Expression parse_expr(TokenCursor & cur, bool stop_at_production, bool allow_markers);

} // namespace gconv::detail
