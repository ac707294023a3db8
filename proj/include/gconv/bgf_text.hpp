#pragma once

#include "gconv/grammar.hpp"

#include <string>
#include <string_view>

namespace gconv {

// Textual grammar format:
//
//   %roots Program
//   [label] Name:
//           alternative one
//           alternative two
//                   continued alternative two
//
// Every indented line under a header is one branch of the production's
// top-level choice; a line indented deeper than the first alternative
// continues the previous one. Repeating a header adds another production
// for the same nonterminal. `//` lines are comments.
Grammar parse_grammar(std::string_view text);

// One expression in the same notation, markers allowed.
Expression parse_expression(std::string_view text);

// Canonical rendering; parse_grammar(pretty(g)) == finalize(g).
std::string pretty(const Grammar & g);
std::string pretty(const Production & p);

// Expression on a single line. A top-level choice is written with bars and
// no surrounding parentheses.
std::string to_text(const Expression & e);

// Same, but with an explicit SPACE between top-level sequence items.
std::string to_spaced_text(const Expression & e);

// Structured one-production-per-line form for machine diffing.
std::string dump(const Grammar & g);
std::string dump(const Expression & e);

std::string quote_terminal(std::string_view text);

} // namespace gconv
