#pragma once

#include "gconv/expression.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gconv {

struct Production {
    std::optional<std::string> label;
    std::string lhs;
    Expression rhs;

    friend bool operator==(const Production &, const Production &) = default;
};

struct Grammar {
    std::vector<std::string> roots;
    std::vector<Production> productions;

    friend bool operator==(const Grammar &, const Grammar &) = default;
};

Production make_production(std::string lhs, Expression rhs,
                           std::optional<std::string> label = std::nullopt);

// Names with at least one production, in order of first definition.
std::vector<std::string> defined_names(const Grammar & g);

// Names referenced from some rhs, in order of first reference. Roots are
// not included.
std::vector<std::string> used_names(const Grammar & g);

bool is_defined(const Grammar & g, std::string_view name);
bool is_used(const Grammar & g, std::string_view name);
bool is_root(const Grammar & g, std::string_view name);

// Indices of the productions of `name`, in grammar order.
std::vector<std::size_t> definition_of(const Grammar & g, std::string_view name);

// Index of the production carrying `label`, if any.
std::optional<std::size_t> find_label(const Grammar & g, std::string_view label);

// Every nonterminal reachable from `name`, including itself.
std::set<std::string> reachable_from(const Grammar & g, const std::string & name);

// Normalizes every rhs, removes exact duplicate productions (first kept)
// and checks the stored-grammar invariants: unique labels, no markers,
// roots defined or used. Throws InvariantError.
Grammar finalize(Grammar g);

// Same checks as finalize, without rewriting.
void validate(const Grammar & g);

// Production-wise normalized equality.
bool equal(const Grammar & a, const Grammar & b);

struct GrammarMetrics {
    std::size_t production_count = 0;
    std::size_t nonterminal_count = 0;
    std::size_t top_count = 0;
    std::size_t bottom_count = 0;
    std::set<std::string> tops;
    std::set<std::string> bottoms;
};

GrammarMetrics metrics(const Grammar & g);

} // namespace gconv
