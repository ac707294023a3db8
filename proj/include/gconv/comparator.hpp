#pragma once

#include "gconv/grammar.hpp"

#include <string>
#include <vector>

namespace gconv {

enum class Side { Left, Right };
enum class NominalKind { MissingDefinition, MissingReference };

// `side` is the grammar that lacks the definition or the reference.
struct NominalDifference {
    Side side;
    std::string name;
    NominalKind kind;

    friend bool operator==(const NominalDifference &, const NominalDifference &) = default;
};

struct StructuralDifference {
    std::string name;
    std::vector<Expression> unmatched_left;
    std::vector<Expression> unmatched_right;
    std::size_t weight = 0;

    friend bool operator==(const StructuralDifference &, const StructuralDifference &) = default;
};

struct DifferenceReport {
    std::vector<NominalDifference> nominal;
    std::vector<StructuralDifference> structural;
    std::size_t nominal_count = 0;
    std::size_t structural_count = 0;

    bool empty() const { return nominal_count == 0 && structural_count == 0; }
};

// Only nonterminals defined in at least one grammar take part in the
// nominal comparison; a name that both sides merely reference is not a
// difference. A defined name is missing on a side that does not define it,
// or, failing that, on a side that does not reference it (roots count as
// references).
//
// Alternatives of a shared nonterminal are its productions, with top-level
// choices split into branches, normalized, unlabeled and with a top-level
// selector removed; a branch repeated across productions counts once. They
// are matched greedily by equality.
DifferenceReport compare(const Grammar & left, const Grammar & right);

std::size_t total_differences(const DifferenceReport & r);

// Alternatives of `name` as the comparator sees them.
std::vector<Expression> alternatives(const Grammar & g, const std::string & name);

std::string render(const DifferenceReport & r,
                   const std::string & left_name = "left",
                   const std::string & right_name = "right");

} // namespace gconv
