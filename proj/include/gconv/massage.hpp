#pragma once

#include "gconv/expression.hpp"

#include <cstddef>
#include <limits>
#include <string>

namespace gconv {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

// base repeated low..high times (high may be kUnbounded).
struct RepetitionInterval {
    Expression base;
    std::size_t low = 1;
    std::size_t high = 1;

    bool contains(std::size_t n) const { return low <= n && n <= high; }
    friend bool operator==(const RepetitionInterval &, const RepetitionInterval &) = default;
};

// Shallow reading of one postfix operator: x? is [0,1], x* is [0,inf],
// x+ is [1,inf], anything else is itself once. The base is normalized.
RepetitionInterval interval_of(const Expression & e);

// a is a proper subset of b over the same base.
bool strictly_narrower(const RepetitionInterval & a, const RepetitionInterval & b);

// Equality modulo the optionality and repetition laws plus the selector law
// x = (s1::x | s2::x). Decided by comparing canonical forms in which
// repetition towers collapse to intervals, same-base neighbours in a
// sequence add up, and same-base branches of a choice merge when the union
// is contiguous.
bool massage_equal(const Expression & x, const Expression & y);

// Canonical form, printed; for diagnostics.
std::string massage_canonical(const Expression & e);

} // namespace gconv
