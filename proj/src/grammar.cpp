#include "gconv/grammar.hpp"

#include "gconv/error.hpp"
#include "gconv/normalize.hpp"

#include <algorithm>
#include <unordered_set>

namespace gconv {

//===========================================================================
Production make_production(std::string lhs, Expression rhs, std::optional<std::string> label) {
    return Production{std::move(label), std::move(lhs), std::move(rhs)};
}

//===========================================================================
std::vector<std::string> defined_names(const Grammar & g) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (auto & p : g.productions)
        if (seen.insert(p.lhs).second)
            out.push_back(p.lhs);
    return out;
}

std::vector<std::string> used_names(const Grammar & g) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (auto & p : g.productions)
        for (auto & n : referenced_names(p.rhs))
            if (seen.insert(n).second)
                out.push_back(n);
    return out;
}

bool is_defined(const Grammar & g, std::string_view name) {
    return std::any_of(g.productions.begin(), g.productions.end(),
        [&](auto & p) { return p.lhs == name; });
}

bool is_used(const Grammar & g, std::string_view name) {
    return std::any_of(g.productions.begin(), g.productions.end(),
        [&](auto & p) { return references(p.rhs, name); });
}

bool is_root(const Grammar & g, std::string_view name) {
    return std::find(g.roots.begin(), g.roots.end(), name) != g.roots.end();
}

std::vector<std::size_t> definition_of(const Grammar & g, std::string_view name) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.productions.size(); ++i)
        if (g.productions[i].lhs == name)
            out.push_back(i);
    return out;
}

std::optional<std::size_t> find_label(const Grammar & g, std::string_view label) {
    for (std::size_t i = 0; i < g.productions.size(); ++i)
        if (g.productions[i].label && *g.productions[i].label == label)
            return i;
    return std::nullopt;
}

//===========================================================================
std::set<std::string> reachable_from(const Grammar & g, const std::string & name) {
    std::set<std::string> seen{name};
    std::vector<std::string> todo{name};
    while (!todo.empty()) {
        auto n = todo.back();
        todo.pop_back();
        for (auto i : definition_of(g, n))
            for (auto & m : referenced_names(g.productions[i].rhs))
                if (seen.insert(m).second)
                    todo.push_back(m);
    }
    return seen;
}

//===========================================================================
void validate(const Grammar & g) {
    std::unordered_set<std::string> labels;
    for (auto & p : g.productions) {
        if (p.lhs.empty())
            throw InvariantError("production with empty left-hand side");
        if (p.label) {
            if (p.label->empty())
                throw InvariantError("empty production label");
            if (!labels.insert(*p.label).second)
                throw InvariantError("duplicate label [" + *p.label + "]");
        }
        if (count_markers(p.rhs))
            throw InvariantError("marker in stored production for " + p.lhs);
    }
    for (auto & r : g.roots)
        if (!is_defined(g, r) && !is_used(g, r))
            throw InvariantError("root " + r + " is neither defined nor used");
}

Grammar finalize(Grammar g) {
    std::vector<Production> kept;
    kept.reserve(g.productions.size());
    for (auto & p : g.productions) {
        Production q{p.label, p.lhs, normalize(p.rhs)};
        if (std::find(kept.begin(), kept.end(), q) == kept.end())
            kept.push_back(std::move(q));
    }
    g.productions = std::move(kept);
    validate(g);
    return g;
}

//===========================================================================
bool equal(const Grammar & a, const Grammar & b) {
    if (a.roots != b.roots || a.productions.size() != b.productions.size())
        return false;
    for (std::size_t i = 0; i < a.productions.size(); ++i) {
        auto & p = a.productions[i];
        auto & q = b.productions[i];
        if (p.label != q.label || p.lhs != q.lhs || !equal(p.rhs, q.rhs))
            return false;
    }
    return true;
}

//===========================================================================
GrammarMetrics metrics(const Grammar & g) {
    GrammarMetrics m;
    m.production_count = g.productions.size();
    auto defs = defined_names(g);
    auto uses = used_names(g);
    std::set<std::string> defined(defs.begin(), defs.end());
    std::set<std::string> used(uses.begin(), uses.end());
    used.insert(g.roots.begin(), g.roots.end());

    std::set<std::string> all = defined;
    all.insert(used.begin(), used.end());
    m.nonterminal_count = all.size();

    for (auto & n : defined)
        if (!used.count(n))
            m.tops.insert(n);
    for (auto & n : used)
        if (!defined.count(n))
            m.bottoms.insert(n);
    m.top_count = m.tops.size();
    m.bottom_count = m.bottoms.size();
    return m;
}

} // namespace gconv
