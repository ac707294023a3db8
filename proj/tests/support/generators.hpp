#pragma once

// Random expressions, grammars and applicable transformation steps.

#include "gconv/xbgf.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gconv::testing {

class Rng {
public:
    explicit Rng(std::uint32_t seed) : m_engine(seed) {}

    std::size_t below(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(m_engine);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(m_engine); }

    template <class T>
    const T & pick(const std::vector<T> & v) { return v[below(v.size())]; }

private:
    std::mt19937 m_engine;
};

struct ExpressionShape {
    std::vector<std::string> terminals{"a", "b"};
    std::vector<std::string> nonterminals{"N0", "N1"};
    std::size_t depth = 3;
    bool units = true;      // eps and fail leaves
    bool selectors = true;
};

Expression random_expression(Rng & rng, const ExpressionShape & shape);

// 2 to 4 nonterminals N0.. with contiguous definitions, root N0.
Grammar random_grammar(Rng & rng);

struct Case {
    Grammar grammar;
    TransformationStep step;
};

// A grammar and a step of `op` that applies to it, or nothing when the
// attempt found no opportunity.
std::optional<Case> synthesize(const std::string & op, Rng & rng);

// Operators synthesize knows, by class.
const std::vector<std::string> & synthesized_operators(SemanticsClass c);

// Every subexpression of every rhs, with the index of its production.
std::vector<std::pair<std::size_t, Expression>> subexpressions(const Grammar & g);

} // namespace gconv::testing
