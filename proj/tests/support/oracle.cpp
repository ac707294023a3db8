#include "oracle.hpp"

#include <map>

namespace gconv::testing {

namespace {

using Env = std::map<std::string, Language>;

Language concat(const Language & a, const Language & b, std::size_t max) {
    Language out;
    for (auto & x : a)
        for (auto & y : b) {
            if (x.size() + y.size() > max)
                continue;
            Word w = x;
            w.insert(w.end(), y.begin(), y.end());
            out.insert(std::move(w));
        }
    return out;
}

Language closure(const Language & l, std::size_t max) {
    Language out{Word{}};
    for (;;) {
        auto next = concat(out, l, max);
        next.insert(out.begin(), out.end());
        if (next.size() == out.size())
            return out;
        out = std::move(next);
    }
}

Language eval(const Expression & e, std::size_t max, const Env * env) {
    switch (e.kind()) {
    case Kind::Epsilon: return {Word{}};
    case Kind::Fail: return {};
    case Kind::Any: return max ? Language{{"ANY"}} : Language{};
    case Kind::String: return max ? Language{{"STRING"}} : Language{};
    case Kind::Int: return max ? Language{{"INT"}} : Language{};
    case Kind::Terminal: return max ? Language{{"\"" + e.text()}} : Language{};
    case Kind::Nonterminal:
        if (env && env->count(e.text()))
            return env->at(e.text());
        return max ? Language{{"%" + e.text()}} : Language{};
    case Kind::Selectable:
    case Kind::Marked:
        return eval(e.body(), max, env);
    case Kind::Sequence: {
        Language out{Word{}};
        for (auto & c : e.children())
            out = concat(out, eval(c, max, env), max);
        return out;
    }
    case Kind::Choice: {
        Language out;
        for (auto & c : e.children()) {
            auto l = eval(c, max, env);
            out.insert(l.begin(), l.end());
        }
        return out;
    }
    case Kind::Optional: {
        auto out = eval(e.body(), max, env);
        out.insert(Word{});
        return out;
    }
    case Kind::Star:
        return closure(eval(e.body(), max, env), max);
    case Kind::Plus: {
        auto l = eval(e.body(), max, env);
        return concat(l, closure(l, max), max);
    }
    }
    return {};
}

} // namespace

Language language(const Expression & e, std::size_t max) {
    return eval(e, max, nullptr);
}

Language language(const Grammar & g, const std::string & start, std::size_t max) {
    Env env;
    for (auto & n : defined_names(g))
        env[n] = {};
    for (bool changed = true; changed;) {
        changed = false;
        Env next;
        for (auto & p : g.productions) {
            auto l = eval(p.rhs, max, &env);
            next[p.lhs].insert(l.begin(), l.end());
        }
        for (auto & [n, l] : next) {
            if (l.size() != env[n].size()) {
                env[n] = std::move(l);
                changed = true;
            }
        }
    }
    if (env.count(start))
        return env.at(start);
    return max ? Language{{"%" + start}} : Language{};
}

std::string show(const Word & w) {
    std::string out;
    for (auto & t : w) {
        if (!out.empty())
            out += ' ';
        out += t;
    }
    return out.empty() ? "<empty>" : out;
}

} // namespace gconv::testing
