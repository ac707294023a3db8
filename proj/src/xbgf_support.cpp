#include "xbgf_support.hpp"

#include "gconv/bgf_text.hpp"
#include "gconv/normalize.hpp"

#include <algorithm>

namespace gconv::detail {

void violate(const TransformationStep & step, const std::string & what) {
    throw PreconditionViolation(step.op, what);
}

std::string show(const Production & p) {
    std::string s;
    if (p.label)
        s += "[" + *p.label + "] ";
    return s + p.lhs + ": " + to_text(p.rhs);
}

//===========================================================================
void check_scope(const TransformationStep & step, const Grammar & g) {
    switch (step.scope.kind) {
    case Scope::Kind::Global:
        return;
    case Scope::Kind::Nonterminal:
        if (!is_defined(g, step.scope.name))
            violate(step, "scope nonterminal " + step.scope.name + " is not defined");
        return;
    case Scope::Kind::Label:
        if (!find_label(g, step.scope.name))
            violate(step, "scope label [" + step.scope.name + "] does not exist");
        return;
    }
}

bool in_scope(const Production & p, const Scope & scope) {
    switch (scope.kind) {
    case Scope::Kind::Global: return true;
    case Scope::Kind::Nonterminal: return p.lhs == scope.name;
    case Scope::Kind::Label: return p.label && *p.label == scope.name;
    }
    return false;
}

//===========================================================================
namespace {

std::vector<Expression> spliced(const Expression & replacement, Kind container) {
    if (replacement.kind() == container)
        return replacement.children();
    return {replacement};
}

} // namespace

Expression replace_all(const Expression & e, const Expression & pattern,
                       const Expression & replacement, std::size_t & count) {
    if (e == pattern) {
        ++count;
        return replacement;
    }
    if (e.children().empty())
        return e;

    auto kind = e.kind();
    bool runs = (kind == Kind::Sequence || kind == Kind::Choice) && pattern.kind() == kind
        && pattern.children().size() < e.children().size();
    std::vector<Expression> kids;
    auto & ch = e.children();
    for (std::size_t i = 0; i < ch.size();) {
        if (runs && i + pattern.children().size() <= ch.size()
            && std::equal(pattern.children().begin(), pattern.children().end(), ch.begin() + static_cast<std::ptrdiff_t>(i))) {
            ++count;
            auto add = spliced(replacement, kind);
            kids.insert(kids.end(), add.begin(), add.end());
            i += pattern.children().size();
            continue;
        }
        kids.push_back(replace_all(ch[i], pattern, replacement, count));
        ++i;
    }
    return with_children(e, std::move(kids));
}

std::size_t replace_in_grammar(Grammar & g, const Expression & pattern,
                               const Expression & replacement, const Scope & scope,
                               const std::string & skip_lhs) {
    Expression pat = normalize(pattern);
    Expression rep = normalize(replacement);
    std::size_t total = 0;
    for (auto & p : g.productions) {
        if (!in_scope(p, scope) || (!skip_lhs.empty() && p.lhs == skip_lhs))
            continue;
        std::size_t n = 0;
        Expression rhs = replace_all(p.rhs, pat, rep, n);
        if (n) {
            p.rhs = normalize(rhs);
            total += n;
        }
    }
    return total;
}

//===========================================================================
Expression definition_expr(const Grammar & g, const std::string & name) {
    auto idx = definition_of(g, name);
    if (idx.size() == 1)
        return g.productions[idx.front()].rhs;
    std::vector<Expression> branches;
    for (auto i : idx)
        branches.push_back(g.productions[i].rhs);
    return normalize(choice(std::move(branches)));
}

std::optional<std::size_t> find_production(const Grammar & g, const Production & p) {
    Expression rhs = normalize(p.rhs);
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
        auto & q = g.productions[i];
        if (q.lhs == p.lhs && normalize(q.rhs) == rhs && (!p.label || p.label == q.label))
            return i;
    }
    return std::nullopt;
}

//===========================================================================
const Expression * marked_part(const Expression & e) {
    if (e.kind() == Kind::Marked)
        return &e.body();
    for (auto & c : e.children())
        if (auto m = marked_part(c))
            return m;
    return nullptr;
}

Expression substitute_marker(const Expression & e, const Expression & with) {
    if (e.kind() == Kind::Marked)
        return with;
    if (e.children().empty())
        return e;
    std::vector<Expression> kids;
    for (auto & c : e.children())
        kids.push_back(substitute_marker(c, with));
    return with_children(e, std::move(kids));
}

Expression unmark(const Expression & e) {
    return rewrite(e, [](Expression x) {
        return x.kind() == Kind::Marked ? x.body() : x;
    });
}

bool marker_is_choice_branch(const Expression & e) {
    if (e.kind() == Kind::Choice)
        for (auto & c : e.children())
            if (c.kind() == Kind::Marked)
                return true;
    return std::any_of(e.children().begin(), e.children().end(),
        [](auto & c) { return marker_is_choice_branch(c); });
}

void require_single_marker(const TransformationStep & step, const Production & p) {
    auto n = count_markers(p.rhs);
    if (n != 1)
        violate(step, "expected exactly one marked part in " + show(p) + ", found " + std::to_string(n));
}

void require_no_marker(const TransformationStep & step, const Production & p) {
    if (count_markers(p.rhs))
        violate(step, "unexpected marker in " + show(p));
}

//===========================================================================
void insert_after_definition(Grammar & g, const std::vector<Production> & ps) {
    for (auto & p : ps) {
        auto idx = definition_of(g, p.lhs);
        auto at = idx.empty() ? g.productions.size() : idx.back() + 1;
        g.productions.insert(g.productions.begin() + static_cast<std::ptrdiff_t>(at), p);
    }
}

void replace_definition(Grammar & g, const std::string & name, const std::vector<Production> & ps) {
    auto idx = definition_of(g, name);
    auto at = idx.empty() ? g.productions.size() : idx.front();
    remove_definition(g, name);
    g.productions.insert(g.productions.begin() + static_cast<std::ptrdiff_t>(at), ps.begin(), ps.end());
}

void remove_definition(Grammar & g, const std::string & name) {
    std::erase_if(g.productions, [&](auto & p) { return p.lhs == name; });
}

bool fresh(const Grammar & g, const std::string & name) {
    return !is_defined(g, name) && !is_used(g, name) && !is_root(g, name);
}

} // namespace gconv::detail
