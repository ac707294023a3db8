// Semantics-preserving operators.

#include "xbgf_support.hpp"

#include "gconv/bgf_text.hpp"
#include "gconv/massage.hpp"
#include "gconv/normalize.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gconv::detail {

//===========================================================================
Grammar op_rename(const TransformationStep & s, Grammar g) {
    auto & from = s.names[0];
    auto & to = s.names[1];
    if (!is_defined(g, from) && !is_used(g, from) && !is_root(g, from))
        violate(s, "nonterminal " + from + " does not occur");
    if (!fresh(g, to))
        violate(s, "nonterminal " + to + " is not fresh");
    for (auto & p : g.productions) {
        if (p.lhs == from)
            p.lhs = to;
        p.rhs = rename_nonterminal(p.rhs, from, to);
    }
    for (auto & r : g.roots)
        if (r == from)
            r = to;
    return g;
}

Grammar op_unlabel(const TransformationStep & s, Grammar g) {
    auto i = find_label(g, s.names[0]);
    if (!i)
        violate(s, "label [" + s.names[0] + "] does not exist");
    g.productions[*i].label.reset();
    return g;
}

Grammar op_reroot(const TransformationStep & s, Grammar g) {
    for (auto & n : s.names)
        if (!is_defined(g, n) && !is_used(g, n))
            violate(s, "nonterminal " + n + " does not occur");
    g.roots = s.names;
    return g;
}

//===========================================================================
Grammar op_unfold(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    if (!is_defined(g, n))
        violate(s, "nonterminal " + n + " is not defined");
    check_scope(s, g);
    Expression def = definition_expr(g, n);
    bool own = s.scope.kind == Scope::Kind::Nonterminal && s.scope.name == n;
    auto count = replace_in_grammar(g, nonterminal(n), def, s.scope, own ? std::string() : n);
    if (!count)
        violate(s, "no reference to " + n + " in scope " + to_text(s.scope));
    return g;
}

Grammar op_fold(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    auto idx = definition_of(g, n);
    if (idx.size() != 1)
        violate(s, "nonterminal " + n + " must have exactly one production");
    check_scope(s, g);
    Expression def = g.productions[idx.front()].rhs;
    auto count = replace_in_grammar(g, def, nonterminal(n), s.scope, n);
    if (!count)
        violate(s, "definition of " + n + " does not occur in scope " + to_text(s.scope));
    return g;
}

Grammar op_inline(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    auto idx = definition_of(g, n);
    if (idx.empty())
        violate(s, "nonterminal " + n + " is not defined");
    if (is_root(g, n))
        violate(s, "nonterminal " + n + " is a root");
    Expression def = definition_expr(g, n);
    if (references(def, n))
        violate(s, "nonterminal " + n + " is recursive");
    auto count = replace_in_grammar(g, nonterminal(n), def, Scope::global(), n);
    if (!count)
        violate(s, "nonterminal " + n + " is not referenced");
    remove_definition(g, n);
    return g;
}

Grammar op_extract(const TransformationStep & s, Grammar g) {
    auto & p = s.productions[0];
    require_no_marker(s, p);
    if (!fresh(g, p.lhs))
        violate(s, "nonterminal " + p.lhs + " is not fresh");
    check_scope(s, g);
    auto count = replace_in_grammar(g, p.rhs, nonterminal(p.lhs), s.scope);
    if (!count)
        violate(s, "expression " + to_text(p.rhs) + " does not occur in scope " + to_text(s.scope));
    g.productions.push_back(Production{p.label, p.lhs, normalize(p.rhs)});
    return g;
}

Grammar op_chain(const TransformationStep & s, Grammar g) {
    auto & p = s.productions[0];
    require_no_marker(s, p);
    Expression rhs = normalize(p.rhs);
    if (rhs.kind() != Kind::Nonterminal)
        violate(s, "right-hand side must be a single nonterminal");
    auto & b = rhs.text();
    auto idx = definition_of(g, p.lhs);
    if (idx.empty())
        violate(s, "nonterminal " + p.lhs + " is not defined");
    if (!fresh(g, b))
        violate(s, "nonterminal " + b + " is not fresh");
    std::vector<Production> moved{Production{p.label, p.lhs, rhs}};
    for (auto i : idx) {
        auto q = g.productions[i];
        q.lhs = b;
        moved.push_back(std::move(q));
    }
    replace_definition(g, p.lhs, moved);
    return g;
}

//===========================================================================
Grammar op_massage(const TransformationStep & s, Grammar g) {
    auto & x = s.exprs[0];
    auto & y = s.exprs[1];
    if (!massage_equal(x, y))
        violate(s, to_text(x) + " and " + to_text(y) + " are not massage-equal");
    check_scope(s, g);
    if (!replace_in_grammar(g, x, y, s.scope))
        violate(s, "expression " + to_text(x) + " does not occur in scope " + to_text(s.scope));
    return g;
}

Grammar op_distribute(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    auto idx = definition_of(g, n);
    if (idx.empty())
        violate(s, "nonterminal " + n + " is not defined");
    for (auto i : idx) {
        auto alts = dnf(g.productions[i].rhs);
        g.productions[i].rhs = normalize(choice(std::move(alts)));
    }
    return g;
}

Grammar op_factor(const TransformationStep & s, Grammar g) {
    auto & x = s.exprs[0];
    auto & y = s.exprs[1];
    auto dx = dnf(x);
    auto dy = dnf(y);
    std::sort(dx.begin(), dx.end());
    std::sort(dy.begin(), dy.end());
    if (dx != dy)
        violate(s, to_text(x) + " and " + to_text(y) + " are not equally factored");
    check_scope(s, g);
    if (!replace_in_grammar(g, x, y, s.scope))
        violate(s, "expression " + to_text(x) + " does not occur in scope " + to_text(s.scope));
    return g;
}

//===========================================================================
namespace {

// n: alpha | n beta  =>  alpha beta*    n: alpha | beta n  =>  beta* alpha
std::optional<Expression> deyaccified(const std::string & n, const Expression & a, const Expression & b) {
    auto attempt = [&](const Expression & base, const Expression & rec) -> std::optional<Expression> {
        if (references(base, n) || rec.kind() != Kind::Sequence)
            return std::nullopt;
        auto & parts = rec.children();
        bool left = parts.front() == nonterminal(n);
        bool right = parts.back() == nonterminal(n);
        if (left == right)
            return std::nullopt;
        std::vector<Expression> rest(parts.begin() + (left ? 1 : 0), parts.end() - (left ? 0 : 1));
        Expression beta = normalize(sequence(std::move(rest)));
        if (references(beta, n))
            return std::nullopt;
        if (beta == base)
            return plus(beta);
        if (left)
            return normalize(sequence({base, star(beta)}));
        return normalize(sequence({star(beta), base}));
    };
    auto na = normalize(a);
    auto nb = normalize(b);
    if (auto r = attempt(na, nb))
        return r;
    return attempt(nb, na);
}

std::optional<Expression> deyaccify_definition(const Grammar & g, const std::string & n) {
    auto idx = definition_of(g, n);
    if (idx.size() == 2)
        return deyaccified(n, g.productions[idx[0]].rhs, g.productions[idx[1]].rhs);
    if (idx.size() == 1) {
        auto rhs = normalize(g.productions[idx[0]].rhs);
        if (rhs.kind() == Kind::Choice && rhs.children().size() == 2)
            return deyaccified(n, rhs.children()[0], rhs.children()[1]);
    }
    return std::nullopt;
}

} // namespace

Grammar op_deyaccify(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    if (!is_defined(g, n))
        violate(s, "nonterminal " + n + " is not defined");
    auto r = deyaccify_definition(g, n);
    if (!r)
        violate(s, "definition of " + n + " is not a left- or right-recursive pair");
    replace_definition(g, n, {make_production(n, *r)});
    return g;
}

Grammar op_yaccify(const TransformationStep & s, Grammar g) {
    auto & p1 = s.productions[0];
    auto & p2 = s.productions[1];
    require_no_marker(s, p1);
    require_no_marker(s, p2);
    if (p1.lhs != p2.lhs)
        violate(s, "productions must define the same nonterminal");
    auto & n = p1.lhs;
    auto idx = definition_of(g, n);
    if (idx.size() != 1)
        violate(s, "nonterminal " + n + " must have exactly one production");
    auto r = deyaccified(n, p1.rhs, p2.rhs);
    if (!r)
        violate(s, "productions are not a left- or right-recursive pair");
    if (!(normalize(*r) == normalize(g.productions[idx.front()].rhs)))
        violate(s, "productions do not yield the current definition of " + n);
    replace_definition(g, n, {Production{p1.label, n, normalize(p1.rhs)},
                              Production{p2.label, n, normalize(p2.rhs)}});
    return g;
}

//===========================================================================
Grammar op_eliminate(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    if (!is_defined(g, n))
        violate(s, "nonterminal " + n + " is not defined");
    if (is_root(g, n))
        violate(s, "nonterminal " + n + " is a root");
    for (auto & p : g.productions)
        if (p.lhs != n && references(p.rhs, n))
            violate(s, "nonterminal " + n + " is referenced from " + p.lhs);
    remove_definition(g, n);
    return g;
}

Grammar op_introduce(const TransformationStep & s, Grammar g) {
    auto & n = s.productions.front().lhs;
    for (auto & p : s.productions) {
        require_no_marker(s, p);
        if (p.lhs != n)
            violate(s, "all productions must define " + n);
    }
    if (!fresh(g, n))
        violate(s, "nonterminal " + n + " is not fresh");
    for (auto & p : s.productions)
        g.productions.push_back(Production{p.label, p.lhs, normalize(p.rhs)});
    return g;
}

Grammar op_import(const TransformationStep & s, Grammar g) {
    std::set<std::string> added;
    for (auto & p : s.productions) {
        require_no_marker(s, p);
        added.insert(p.lhs);
    }
    for (auto & n : added)
        if (!fresh(g, n))
            violate(s, "nonterminal " + n + " is not fresh");
    for (auto & p : s.productions)
        for (auto & m : referenced_names(p.rhs))
            if (!added.count(m) && !is_defined(g, m))
                violate(s, "imported " + p.lhs + " refers to " + m
                           + ", which is neither imported nor defined");
    for (auto & p : s.productions)
        g.productions.push_back(Production{p.label, p.lhs, normalize(p.rhs)});
    return g;
}

//===========================================================================
Grammar op_vertical(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    auto idx = definition_of(g, n);
    if (idx.size() != 1)
        violate(s, "nonterminal " + n + " must have exactly one production");
    auto & p = g.productions[idx.front()];
    if (p.label)
        violate(s, "production of " + n + " is labeled");
    Expression rhs = normalize(p.rhs);
    if (rhs.kind() != Kind::Choice)
        violate(s, "definition of " + n + " is not a choice");
    std::vector<Production> ps;
    for (auto & b : rhs.children()) {
        if (b.kind() == Kind::Selectable) {
            if (find_label(g, b.text()))
                violate(s, "label [" + b.text() + "] already exists");
            ps.push_back(Production{b.text(), n, b.body()});
        } else {
            ps.push_back(Production{std::nullopt, n, b});
        }
    }
    replace_definition(g, n, ps);
    return g;
}

Grammar op_horizontal(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    auto idx = definition_of(g, n);
    if (idx.size() < 2)
        violate(s, "nonterminal " + n + " must have at least two productions");
    std::vector<Expression> branches;
    for (auto i : idx) {
        auto & p = g.productions[i];
        branches.push_back(p.label ? selectable(*p.label, p.rhs) : p.rhs);
    }
    replace_definition(g, n, {make_production(n, normalize(choice(std::move(branches))))});
    return g;
}

} // namespace gconv::detail
