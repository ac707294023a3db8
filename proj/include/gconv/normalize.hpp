#pragma once

#include "gconv/expression.hpp"

namespace gconv {

// Exhaustive application of the normalization rules, innermost first:
//   (,) => eps             (;) => fail
//   nested sequences and nested choices are flattened
//   (x,) => x              (x;) => x
//   eps inside a sequence, fail inside a choice and later duplicate
//   branches are dropped
//   eps? eps+ eps* => eps
Expression normalize(const Expression & e);

// Structural equality of the normal forms. Choice order matters.
bool equal(const Expression & a, const Expression & b);

bool is_normalized(const Expression & e);

} // namespace gconv
