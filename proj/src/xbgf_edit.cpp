// Operators that change the generated language.

#include "xbgf_support.hpp"

#include "gconv/bgf_text.hpp"
#include "gconv/massage.hpp"
#include "gconv/normalize.hpp"

#include <algorithm>

namespace gconv::detail {

namespace {

Production normalized(const Production & p) {
    return Production{p.label, p.lhs, normalize(p.rhs)};
}

// Locates `context` and replaces it by `result`; the original label stays.
Grammar swap_production(const TransformationStep & s, Grammar g, const Production & context,
                        const Production & result) {
    auto i = find_production(g, context);
    if (!i)
        violate(s, "production " + show(normalized(context)) + " not found");
    auto label = g.productions[*i].label;
    g.productions[*i] = Production{label, result.lhs, normalize(result.rhs)};
    return g;
}

Grammar marked_edit(const TransformationStep & s, Grammar g, const Expression & hole,
                    bool inserting, bool nillable_only, bool choice_branch) {
    auto & p = s.productions[0];
    require_single_marker(s, p);
    auto & part = *marked_part(p.rhs);
    if (nillable_only && !nillable(part))
        violate(s, "marked part " + to_text(part) + " is not nillable");
    if (choice_branch && !marker_is_choice_branch(p.rhs))
        violate(s, "marked part must be a branch of a choice");
    Production with{p.label, p.lhs, unmark(p.rhs)};
    Production without{p.label, p.lhs, substitute_marker(p.rhs, hole)};
    if (inserting)
        return swap_production(s, std::move(g), without, with);
    return swap_production(s, std::move(g), with, without);
}

} // namespace

//===========================================================================
Grammar op_addV(const TransformationStep & s, Grammar g) {
    auto p = s.productions[0];
    require_no_marker(s, p);
    if (!is_defined(g, p.lhs))
        violate(s, "nonterminal " + p.lhs + " is not defined");
    if (find_production(g, Production{std::nullopt, p.lhs, p.rhs}))
        violate(s, "production " + show(p) + " already exists");
    if (p.label && find_label(g, *p.label))
        violate(s, "label [" + *p.label + "] already exists");
    insert_after_definition(g, {normalized(p)});
    return g;
}

Grammar op_removeV(const TransformationStep & s, Grammar g) {
    auto & p = s.productions[0];
    require_no_marker(s, p);
    auto i = find_production(g, p);
    if (!i)
        violate(s, "production " + show(p) + " not found");
    if (definition_of(g, p.lhs).size() < 2)
        violate(s, "removing the only production of " + p.lhs);
    g.productions.erase(g.productions.begin() + static_cast<std::ptrdiff_t>(*i));
    return g;
}

Grammar op_addH(const TransformationStep & s, Grammar g) {
    return marked_edit(s, std::move(g), fail(), true, false, true);
}

Grammar op_removeH(const TransformationStep & s, Grammar g) {
    return marked_edit(s, std::move(g), fail(), false, false, true);
}

Grammar op_appear(const TransformationStep & s, Grammar g) {
    return marked_edit(s, std::move(g), epsilon(), true, true, false);
}

Grammar op_disappear(const TransformationStep & s, Grammar g) {
    return marked_edit(s, std::move(g), epsilon(), false, true, false);
}

Grammar op_inject(const TransformationStep & s, Grammar g) {
    return marked_edit(s, std::move(g), epsilon(), true, false, false);
}

Grammar op_project(const TransformationStep & s, Grammar g) {
    return marked_edit(s, std::move(g), epsilon(), false, false, false);
}

//===========================================================================
namespace {

Grammar rescale(const TransformationStep & s, Grammar g, bool widening) {
    auto & x = s.exprs[0];
    auto & y = s.exprs[1];
    auto ix = interval_of(x);
    auto iy = interval_of(y);
    bool ok = widening ? strictly_narrower(ix, iy) : strictly_narrower(iy, ix);
    if (!ok)
        violate(s, to_text(y) + (widening ? " is not more general than " : " is not more specific than ")
                   + to_text(x));
    check_scope(s, g);
    if (!replace_in_grammar(g, x, y, s.scope))
        violate(s, "expression " + to_text(x) + " does not occur in scope " + to_text(s.scope));
    return g;
}

// q must be a production of the marked nonterminal, or one branch of one.
void check_grade_source(const TransformationStep & s, const Grammar & g, const Production & p,
                        const Production & q) {
    require_single_marker(s, p);
    require_no_marker(s, q);
    auto & part = *marked_part(p.rhs);
    if (part.kind() != Kind::Nonterminal || part.text() != q.lhs)
        violate(s, "marked part must be the nonterminal " + q.lhs);
    Expression want = normalize(q.rhs);
    for (auto i : definition_of(g, q.lhs)) {
        Expression rhs = normalize(g.productions[i].rhs);
        if (rhs == want)
            return;
        if (rhs.kind() == Kind::Choice)
            for (auto & b : rhs.children())
                if (b == want || (b.kind() == Kind::Selectable && b.body() == want))
                    return;
    }
    violate(s, show(q) + " is not a definition of " + q.lhs);
}

} // namespace

Grammar op_widen(const TransformationStep & s, Grammar g) {
    return rescale(s, std::move(g), true);
}

Grammar op_narrow(const TransformationStep & s, Grammar g) {
    return rescale(s, std::move(g), false);
}

Grammar op_upgrade(const TransformationStep & s, Grammar g) {
    auto & p = s.productions[0];
    auto & q = s.productions[1];
    check_grade_source(s, g, p, q);
    Production expanded{p.label, p.lhs, substitute_marker(p.rhs, q.rhs)};
    Production folded{p.label, p.lhs, unmark(p.rhs)};
    return swap_production(s, std::move(g), expanded, folded);
}

Grammar op_downgrade(const TransformationStep & s, Grammar g) {
    auto & p = s.productions[0];
    auto & q = s.productions[1];
    check_grade_source(s, g, p, q);
    Production expanded{p.label, p.lhs, substitute_marker(p.rhs, q.rhs)};
    Production folded{p.label, p.lhs, unmark(p.rhs)};
    return swap_production(s, std::move(g), folded, expanded);
}

Grammar op_unite(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    auto & m = s.names[1];
    if (n == m)
        violate(s, "cannot unite " + n + " with itself");
    if (!is_defined(g, n))
        violate(s, "nonterminal " + n + " is not defined");
    if (!is_defined(g, m))
        violate(s, "nonterminal " + m + " is not defined");
    std::vector<Production> moved;
    for (auto i : definition_of(g, n))
        moved.push_back(Production{g.productions[i].label, m, g.productions[i].rhs});
    remove_definition(g, n);
    for (auto & p : g.productions)
        p.rhs = rename_nonterminal(p.rhs, n, m);
    for (auto & p : moved)
        p.rhs = normalize(rename_nonterminal(p.rhs, n, m));
    insert_after_definition(g, moved);
    std::vector<std::string> roots;
    for (auto r : g.roots) {
        if (r == n)
            r = m;
        if (std::find(roots.begin(), roots.end(), r) == roots.end())
            roots.push_back(r);
    }
    g.roots = std::move(roots);
    return g;
}

//===========================================================================
Grammar op_define(const TransformationStep & s, Grammar g) {
    auto & n = s.productions.front().lhs;
    for (auto & p : s.productions) {
        require_no_marker(s, p);
        if (p.lhs != n)
            violate(s, "all productions must define " + n);
    }
    if (is_defined(g, n))
        violate(s, "nonterminal " + n + " is already defined");
    if (!is_used(g, n))
        violate(s, "nonterminal " + n + " is not used");
    for (auto & p : s.productions)
        g.productions.push_back(normalized(p));
    return g;
}

Grammar op_undefine(const TransformationStep & s, Grammar g) {
    auto & n = s.names[0];
    if (!is_defined(g, n))
        violate(s, "nonterminal " + n + " is not defined");
    bool used_elsewhere = is_root(g, n) || std::any_of(g.productions.begin(), g.productions.end(),
        [&](auto & p) { return p.lhs != n && references(p.rhs, n); });
    if (!used_elsewhere)
        violate(s, "nonterminal " + n + " would vanish from the grammar");
    remove_definition(g, n);
    return g;
}

Grammar op_redefine(const TransformationStep & s, Grammar g) {
    auto & n = s.productions.front().lhs;
    std::vector<Production> ps;
    for (auto & p : s.productions) {
        require_no_marker(s, p);
        if (p.lhs != n)
            violate(s, "all productions must define " + n);
        ps.push_back(normalized(p));
    }
    if (!is_defined(g, n))
        violate(s, "nonterminal " + n + " is not defined");
    replace_definition(g, n, ps);
    return g;
}

Grammar op_replace(const TransformationStep & s, Grammar g) {
    auto & x = s.exprs[0];
    auto & y = s.exprs[1];
    check_scope(s, g);
    if (!replace_in_grammar(g, x, y, s.scope))
        violate(s, "expression " + to_text(x) + " does not occur in scope " + to_text(s.scope));
    return g;
}

} // namespace gconv::detail
