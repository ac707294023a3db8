#include "criteria.hpp"

#include "generators.hpp"
#include "oracle.hpp"

#include "gconv/bgf_text.hpp"
#include "gconv/comparator.hpp"
#include "gconv/convergence.hpp"
#include "gconv/extractor.hpp"
#include "gconv/massage.hpp"
#include "gconv/normalize.hpp"
#include "gconv/script.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace gconv::testing {

std::string read_data(const std::string & relative) {
    std::string path = std::string(GCONV_TEST_DATA) + "/" + relative;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

// Counts failures, keeps the first few messages.
struct Failures {
    std::size_t count = 0;
    std::vector<std::string> first;

    void add(const std::string & what) {
        if (++count <= 3)
            first.push_back(what);
    }
    std::string text() const {
        std::string out;
        for (auto & f : first)
            out += "; " + f;
        return out;
    }
};

template <class F>
CriterionResult timed(int number, std::string title, double limit, F body) {
    CriterionResult r;
    r.number = number;
    r.title = std::move(title);
    r.limit = limit;
    auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception & e) {
        r.passed = false;
        r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > limit) {
        r.passed = false;
        r.detail += "; over the time limit";
    }
    return r;
}

std::string join(const std::vector<std::size_t> & v) {
    std::string out;
    for (auto x : v)
        out += (out.empty() ? "" : " ") + std::to_string(x);
    return out;
}

} // namespace

//===========================================================================
CriterionResult walkthrough_replay() {
    return timed(1, "walkthrough replay: read2 to read3", 1.0, [](CriterionResult & r) {
        auto source = parse_grammar(read_data("fig/read2.bgf"));
        auto target = parse_grammar(read_data("fig/read3.bgf"));
        auto script = parse_script(read_data("fig/fig2.xbgf"));
        auto edge = run_edge(source, target, script, true);
        std::vector<std::size_t> totals;
        for (auto & p : edge.progress)
            totals.push_back(p.total());
        bool series = totals == std::vector<std::size_t>{4, 3, 3, 1, 0};
        // Structural equality is the comparator's: addV leaves ClassDeclaration
        // vertical where read3 writes one choice, which is not a difference.
        bool same = compare(edge.grammar, target).empty() && edge.grammar.roots == target.roots;
        r.passed = series && same;
        r.detail = "totals " + join(totals) + (same ? ", no differences to read3" : ", differs from read3");
    });
}

//===========================================================================
namespace {

struct Law {
    std::string name;
    std::function<std::pair<Expression, Expression>(const Expression &)> make;
};

std::vector<Law> laws() {
    auto eps = epsilon();
    using P = std::pair<Expression, Expression>;
    return {
        {"x? = (x;eps)", [=](auto x) { return P{optional(x), choice({x, eps})}; }},
        {"x? = (x?;eps)", [=](auto x) { return P{optional(x), choice({optional(x), eps})}; }},
        {"x* = (x+;eps)", [=](auto x) { return P{star(x), choice({plus(x), eps})}; }},
        {"x* = (x*;eps)", [=](auto x) { return P{star(x), choice({star(x), eps})}; }},
        {"x? = (x?;x)", [](auto x) { return P{optional(x), choice({optional(x), x})}; }},
        {"x+ = (x+;x)", [](auto x) { return P{plus(x), choice({plus(x), x})}; }},
        {"x* = (x*;x)", [](auto x) { return P{star(x), choice({star(x), x})}; }},
        {"x* = (x?;x+)", [](auto x) { return P{star(x), choice({optional(x), plus(x)})}; }},
        {"x* = (x?;x*)", [](auto x) { return P{star(x), choice({optional(x), star(x)})}; }},
        {"x* = (x+;x*)", [](auto x) { return P{star(x), choice({plus(x), star(x)})}; }},
        {"(x?)? = x?", [](auto x) { return P{optional(optional(x)), optional(x)}; }},
        {"(x?)+ = x*", [](auto x) { return P{plus(optional(x)), star(x)}; }},
        {"(x?)* = x*", [](auto x) { return P{star(optional(x)), star(x)}; }},
        {"(x+)? = x*", [](auto x) { return P{optional(plus(x)), star(x)}; }},
        {"(x+)+ = x+", [](auto x) { return P{plus(plus(x)), plus(x)}; }},
        {"(x+)* = x*", [](auto x) { return P{star(plus(x)), star(x)}; }},
        {"(x*)? = x*", [](auto x) { return P{optional(star(x)), star(x)}; }},
        {"(x*)+ = x*", [](auto x) { return P{plus(star(x)), star(x)}; }},
        {"(x*)* = x*", [](auto x) { return P{star(star(x)), star(x)}; }},
        {"(x,x*) = x+", [](auto x) { return P{sequence({x, star(x)}), plus(x)}; }},
        {"(x*,x) = x+", [](auto x) { return P{sequence({star(x), x}), plus(x)}; }},
        {"(x?,x*) = x*", [](auto x) { return P{sequence({optional(x), star(x)}), star(x)}; }},
        {"(x*,x?) = x*", [](auto x) { return P{sequence({star(x), optional(x)}), star(x)}; }},
        {"(x+,x*) = x+", [](auto x) { return P{sequence({plus(x), star(x)}), plus(x)}; }},
        {"(x*,x+) = x+", [](auto x) { return P{sequence({star(x), plus(x)}), plus(x)}; }},
        {"(x+,x?) = x+", [](auto x) { return P{sequence({plus(x), optional(x)}), plus(x)}; }},
        {"(x?,x+) = x+", [](auto x) { return P{sequence({optional(x), plus(x)}), plus(x)}; }},
        {"(x*,x*) = x*", [](auto x) { return P{sequence({star(x), star(x)}), star(x)}; }},
        {"x = (s1::x;s2::x)", [](auto x) {
             return P{x, choice({selectable("s1", x), selectable("s2", x)})};
         }},
    };
}

} // namespace

CriterionResult massage_laws() {
    return timed(2, "massage law suite", 5.0, [](CriterionResult & r) {
        // The paper lists 28 laws plus the selector law. Four instantiations
        // of x bring the check count past 90.
        std::vector<Expression> xs{terminal("a"), nonterminal("N"),
                                   sequence({terminal("a"), terminal("b")}),
                                   choice({terminal("a"), nonterminal("N")})};
        Failures bad;
        std::size_t checks = 0, oracle = 0;
        auto all = laws();
        for (auto & law : all) {
            for (auto & x : xs) {
                auto [lhs, rhs] = law.make(x);
                ++checks;
                if (!massage_equal(lhs, rhs) || !massage_equal(rhs, lhs))
                    bad.add(law.name + " with x = " + to_text(x));
            }
            auto [lhs, rhs] = law.make(terminal("x"));
            ++oracle;
            if (language(lhs, 4) != language(rhs, 4))
                bad.add(law.name + " changes the bounded language");
        }
        r.passed = bad.count == 0 && all.size() == 29 && checks >= 90;
        r.detail = std::to_string(all.size()) + " laws, " + std::to_string(checks)
            + " massage checks, " + std::to_string(oracle) + " oracle checks, "
            + std::to_string(bad.count) + " failures" + bad.text();
    });
}

//===========================================================================
CriterionResult normalization_properties() {
    return timed(3, "normalization idempotence and language preservation", 30.0, [](CriterionResult & r) {
        Rng rng(20090612);
        ExpressionShape shape; // 2 terminals, 2 nonterminals, depth 3
        Failures bad;
        const std::size_t count = 1000;
        for (std::size_t k = 0; k < count; ++k) {
            auto e = random_expression(rng, shape);
            auto n = normalize(e);
            if (!(normalize(n) == n) || !is_normalized(n))
                bad.add("not idempotent: " + to_text(e));
            if (language(e, 4) != language(n, 4))
                bad.add("language changed: " + to_text(e) + " => " + to_text(n));
        }
        r.passed = bad.count == 0;
        r.detail = std::to_string(count) + " expressions, " + std::to_string(bad.count) + " failures"
            + bad.text();
    });
}

//===========================================================================
namespace {

bool renames(const TransformationStep & s) {
    return s.op == "renameN" || s.op == "rename" || s.op == "unite";
}

// Root of the transformed grammar, and the source language in its names.
std::string root_after(const TransformationStep & s) {
    return renames(s) && s.names[0] == "N0" ? s.names[1] : "N0";
}

Language in_new_names(const Language & l, const TransformationStep & s) {
    if (!renames(s))
        return l;
    Language out;
    for (auto w : l) {
        for (auto & t : w)
            if (t == "%" + s.names[0])
                t = "%" + s.names[1];
        out.insert(std::move(w));
    }
    return out;
}

} // namespace

CriterionResult classification_oracle() {
    return timed(4, "semantics classification oracle", 300.0, [](CriterionResult & r) {
        const std::size_t per_class = 200;
        const std::size_t bound = 5;
        Rng rng(42);
        Failures bad;
        bool ok = true;
        std::ostringstream detail;
        for (auto cls : {SemanticsClass::Preserving, SemanticsClass::Increasing,
                         SemanticsClass::Decreasing, SemanticsClass::Revising}) {
            auto & ops = synthesized_operators(cls);
            std::map<std::string, std::size_t> per_op;
            std::size_t checked = 0, strict = 0, attempts = 0;
            while ((checked < per_class || per_op.size() < ops.size())
                   && attempts < 100 * per_class * ops.size()) {
                auto & op = ops[attempts++ % ops.size()];
                auto c = synthesize(op, rng);
                if (!c)
                    continue;
                auto after = apply(c->step, c->grammar);
                ++checked;
                ++per_op[op];
                if (cls == SemanticsClass::Revising)
                    continue;
                auto l0 = in_new_names(language(c->grammar, "N0", bound), c->step);
                auto l1 = language(after, root_after(c->step), bound);
                bool holds = cls == SemanticsClass::Preserving ? l0 == l1
                    : cls == SemanticsClass::Increasing ? std::includes(l1.begin(), l1.end(), l0.begin(), l0.end())
                    : std::includes(l0.begin(), l0.end(), l1.begin(), l1.end());
                if (!holds)
                    bad.add(std::string(class_name(cls)) + " " + to_text(c->step) + " on\n"
                            + pretty(c->grammar));
                if (l0 != l1)
                    ++strict;
            }
            bool covered = per_op.size() == ops.size();
            for (auto & op : ops)
                if (!per_op.count(op))
                    bad.add(op + " never applied");
            bool need_strict = cls == SemanticsClass::Increasing || cls == SemanticsClass::Decreasing;
            ok = ok && checked >= per_class && covered && (!need_strict || strict > 0);
            detail << class_name(cls) << ' ' << checked << " (" << per_op.size() << '/' << ops.size()
                   << " operators";
            if (cls != SemanticsClass::Revising)
                detail << ", " << strict << " strict";
            detail << "); ";
        }
        r.passed = ok && bad.count == 0;
        r.detail = detail.str() + std::to_string(bad.count) + " violations" + bad.text();
    });
}

//===========================================================================
namespace {

struct InversePair {
    std::string first;
    std::string second;
    // Extra condition for the pair to be meaningful on this case.
    std::function<bool(const Case &)> guard;
};

TransformationStep retarget(const TransformationStep & s, const std::string & op) {
    auto t = s;
    t.op = op;
    return t;
}

TransformationStep inverse_of(const InversePair & p, const Case & c) {
    auto & s = c.step;
    if (p.first == "widen" || p.first == "narrow") {
        auto t = retarget(s, p.second);
        std::swap(t.exprs[0], t.exprs[1]);
        return t;
    }
    if (p.first == "deyaccify") {
        TransformationStep t;
        t.op = "yaccify";
        for (auto i : definition_of(c.grammar, s.names[0]))
            t.productions.push_back(c.grammar.productions[i]);
        return t;
    }
    if (p.first == "yaccify") {
        TransformationStep t;
        t.op = "deyaccify";
        t.names = {s.productions[0].lhs};
        return t;
    }
    return retarget(s, p.second);
}

// Unfolding n inside its own definition changes the definition fold needs.
bool single_definition(const Case & c) {
    auto & n = c.step.names[0];
    return definition_of(c.grammar, n).size() == 1
        && !(c.step.scope.kind == Scope::Kind::Nonterminal && c.step.scope.name == n);
}

bool flat_productions(const Case & c) {
    for (auto i : definition_of(c.grammar, c.step.names[0]))
        if (c.grammar.productions[i].rhs.kind() == Kind::Choice)
            return false;
    return true;
}

bool two_productions(const Case & c) {
    return definition_of(c.grammar, c.step.names[0]).size() == 2;
}

// Downgrading a production with itself, or with one of its own branches,
// also rewrites the definition the upgrade would need.
bool distinct_productions(const Case & c) {
    auto & ps = c.step.productions;
    if (ps[0].lhs != ps[1].lhs)
        return true;
    auto plain = normalize(rewrite(ps[0].rhs, [](Expression e) {
        return e.kind() == Kind::Marked ? e.body() : e;
    }));
    auto q = normalize(ps[1].rhs);
    if (plain == q)
        return false;
    if (plain.kind() == Kind::Choice)
        for (auto & b : plain.children())
            if (b == q || (b.kind() == Kind::Selectable && b.body() == q))
                return false;
    return true;
}

bool removes_last(const Case & c) {
    auto & p = c.step.productions[0];
    auto idx = definition_of(c.grammar, p.lhs);
    for (auto i : idx)
        if (normalize(c.grammar.productions[i].rhs) == normalize(p.rhs))
            return i == idx.back() && !c.grammar.productions[i].label;
    return false;
}

std::vector<InversePair> inverse_pairs_list() {
    auto any = [](const Case &) { return true; };
    return {
        {"unfold", "fold", single_definition}, {"fold", "unfold", any},
        {"vertical", "horizontal", any}, {"horizontal", "vertical", flat_productions},
        {"deyaccify", "yaccify", two_productions}, {"yaccify", "deyaccify", any},
        {"appear", "disappear", any}, {"disappear", "appear", any},
        {"inject", "project", any}, {"project", "inject", any},
        {"addV", "removeV", any}, {"removeV", "addV", removes_last},
        {"widen", "narrow", any}, {"narrow", "widen", any},
        {"downgrade", "upgrade", distinct_productions}, {"upgrade", "downgrade", any},
    };
}

} // namespace

CriterionResult inverse_pairs() {
    return timed(5, "inverse-pair identities", 60.0, [](CriterionResult & r) {
        const std::size_t each = 50;
        Rng rng(7);
        Failures bad;
        bool ok = true;
        std::ostringstream detail;
        for (auto & pair : inverse_pairs_list()) {
            std::size_t held = 0, attempts = 0;
            while (held < each && attempts++ < 400 * each) {
                auto c = synthesize(pair.first, rng);
                if (!c || !pair.guard(*c))
                    continue;
                auto back = inverse_of(pair, *c);
                // The inverse must not already apply to the original grammar,
                // or it would also undo what was there before.
                try {
                    apply(back, c->grammar);
                    continue;
                } catch (const PreconditionViolation &) {
                }
                auto there = apply(c->step, c->grammar);
                try {
                    auto again = apply(back, there);
                    if (!equal(again, c->grammar)) {
                        bad.add(to_text(c->step) + " then " + to_text(back) + " differs on\n"
                                + pretty(c->grammar));
                        continue;
                    }
                } catch (const PreconditionViolation & e) {
                    bad.add(to_text(c->step) + " then " + to_text(back) + ": " + e.what());
                    continue;
                }
                ++held;
            }
            ok = ok && held >= each;
            detail << pair.first << '/' << pair.second << ' ' << held << "; ";
        }
        r.passed = ok && bad.count == 0;
        r.detail = detail.str() + std::to_string(bad.count) + " failures" + bad.text();
    });
}

//===========================================================================
namespace {

struct Golden {
    std::string file;
    std::size_t arbitrary = 0;
    std::size_t wellformedness = 0;
    std::size_t indentation = 0;
    std::array<std::size_t, ExtractionStats::RuleCount> rules{};
    std::size_t duplicates = 0;
};

// Hand counts, rules in the order: parentheses, metasymbol to terminal,
// merge, split, nonterminal to terminal, terminal to nonterminal, opt.
std::vector<Golden> goldens() {
    return {
        {"one_of", 0, 0, 0, {0, 0, 0, 0, 0, 0, 0}, 0},
        {"capitalized_opt", 1, 0, 1, {0, 0, 0, 0, 0, 1, 0}, 0},
        {"match_parens", 0, 0, 0, {2, 0, 0, 0, 0, 0, 0}, 0},
        {"dangling_bracket", 0, 0, 0, {1, 0, 0, 0, 0, 0, 0}, 0},
        {"bar_terminal", 0, 0, 0, {0, 1, 0, 0, 0, 0, 0}, 0},
        {"empty_brackets", 0, 0, 0, {0, 1, 0, 0, 0, 0, 0}, 0},
        {"catch_parens", 0, 0, 0, {0, 1, 0, 0, 0, 0, 0}, 0},
        {"continue", 0, 0, 0, {0, 0, 1, 0, 0, 0, 0}, 0},
        {"sibling_nonterminal", 1, 0, 0, {0, 0, 1, 0, 0, 0, 0}, 0},
        {"primary_new", 0, 0, 0, {0, 1, 0, 1, 0, 1, 2}, 0},
        {"default_jls2", 1, 0, 0, {0, 0, 0, 0, 1, 0, 0}, 0},
        {"default_jls3", 2, 0, 0, {0, 0, 0, 0, 1, 0, 0}, 0},
        {"import_terminals", 2, 0, 0, {0, 0, 0, 0, 0, 2, 0}, 0},
        {"doubles", 2, 0, 0, {0, 1, 0, 0, 0, 0, 0}, 2},
        {"all_rules", 2, 1, 1, {1, 1, 1, 1, 1, 1, 1}, 1},
    };
}

std::string stats_line(const ExtractionStats & s) {
    std::ostringstream os;
    os << "arbitrary " << s.arbitrary_decisions << ", wf " << s.wellformedness << ", indent "
       << s.indentation << ", rules";
    for (auto n : s.rules)
        os << ' ' << n;
    os << ", doubles " << s.duplicates;
    return os.str();
}

} // namespace

CriterionResult extractor_corpus() {
    return timed(6, "extractor golden corpus", 1.0, [](CriterionResult & r) {
        Failures bad;
        auto all = goldens();
        for (auto & g : all) {
            auto x = extract(read_data("extract/" + g.file + ".html"));
            auto want = parse_grammar(read_data("extract/" + g.file + ".bgf"));
            if (pretty(x.grammar) != pretty(want))
                bad.add(g.file + " grammar:\n" + pretty(x.grammar));
            ExtractionStats expected;
            expected.arbitrary_decisions = g.arbitrary;
            expected.wellformedness = g.wellformedness;
            expected.indentation = g.indentation;
            expected.rules = g.rules;
            expected.duplicates = g.duplicates;
            expected.decisions = x.stats.decisions;
            if (!(x.stats == expected))
                bad.add(g.file + " counters: " + stats_line(x.stats) + ", expected " + stats_line(expected));
        }
        r.passed = bad.count == 0;
        r.detail = std::to_string(all.size()) + " examples, " + std::to_string(bad.count) + " mismatches"
            + bad.text();
    });
}

//===========================================================================
namespace {

enum class Expect { Pretty, NoDifferences };

struct Worked {
    std::string name;
    Expect expect;
};

std::vector<Worked> worked() {
    return {
        {"block", Expect::Pretty},         {"expr", Expect::Pretty},
        {"basictype", Expect::NoDifferences}, {"static", Expect::Pretty},
        {"classbody", Expect::Pretty},     {"widen", Expect::Pretty},
        {"constant", Expect::NoDifferences}, {"modifier", Expect::NoDifferences},
        {"constructor", Expect::Pretty},   {"annotation", Expect::Pretty},
        {"break", Expect::Pretty},         {"instanceof", Expect::Pretty},
    };
}

// The productions of `g` for the nonterminals `after` defines.
Grammar restricted(const Grammar & g, const Grammar & after) {
    Grammar out;
    for (auto & p : g.productions)
        if (is_defined(after, p.lhs))
            out.productions.push_back(p);
    return out;
}

} // namespace

CriterionResult worked_transformations() {
    return timed(7, "worked transformation listings", 1.0, [](CriterionResult & r) {
        Failures bad;
        auto all = worked();
        for (auto & w : all) {
            auto before = parse_grammar(read_data("worked/" + w.name + ".before.bgf"));
            auto after = parse_grammar(read_data("worked/" + w.name + ".after.bgf"));
            auto script = parse_script(read_data("worked/" + w.name + ".xbgf"));
            auto result = apply_script(script, before);
            auto got = restricted(result, after);
            bool ok = w.expect == Expect::Pretty ? pretty(got) == pretty(after)
                                                 : compare(got, after).empty();
            if (!ok)
                bad.add(w.name + ":\n" + pretty(got));
        }
        r.passed = bad.count == 0;
        r.detail = std::to_string(all.size()) + " listings, " + std::to_string(bad.count) + " mismatches"
            + bad.text();
    });
}

//===========================================================================
CriterionResult miniature_study() {
    return timed(8, "miniature convergence study", 10.0, [](CriterionResult & r) {
        auto plan = load_plan(std::string(GCONV_TEST_DATA) + "/mini/plan.txt");
        auto report = run_plan(plan);
        Failures bad;

        if (report.order != std::vector<std::string>{"v1", "v2", "v12"})
            bad.add("unexpected target order");

        std::array<std::size_t, 4> classes{};
        std::size_t steps = 0;
        for (auto & e : report.edges) {
            auto & p = e.progress;
            for (std::size_t k = 1; k < p.size(); ++k)
                if (p[k].total() > p[k - 1].total())
                    bad.add(e.edge.name() + " rises at step " + std::to_string(k));
            if (e.edge.converging && p.back().total() != 0)
                bad.add(e.edge.name() + " does not converge");
            auto & f = e.effort;
            auto sum = [](auto & a) { return std::accumulate(a.begin(), a.end(), std::size_t{0}); };
            std::size_t ops = 0;
            for (auto & [op, n] : f.operators)
                ops += n;
            if (sum(f.by_class) != f.steps || sum(f.by_phase) != f.steps || ops != f.steps
                || sum(f.by_intent) != f.steps
                || f.steps - f.by_intent[static_cast<int>(Intent::None)]
                       != f.by_phase[static_cast<int>(Phase::Resolution)])
                bad.add(e.edge.name() + " effort counts do not add up");
            for (int c = 0; c < 4; ++c)
                classes[c] += f.by_class[c];
            steps += f.steps;
        }

        // Every incoming edge of a target yields the same grammar.
        std::map<std::string, std::vector<Grammar>> results;
        for (auto & e : plan.edges) {
            auto script = parse_script(read_data("mini/" + e.script.filename().string()));
            results[e.to].push_back(apply_strict(script, report.grammars.at(e.from)));
        }
        for (auto & [target, gs] : results)
            for (auto & g : gs)
                if (!equal(g, gs.front()) || !equal(g, report.grammars.at(target)))
                    bad.add("edges into " + target + " disagree");

        // Hand count over the six scripts.
        if (steps != 24 || classes != std::array<std::size_t, 4>{21, 1, 0, 2})
            bad.add("class totals " + join({classes[0], classes[1], classes[2], classes[3]}));

        auto table = effort_table(report.edges);
        if (table.find("Number of transformations") == std::string::npos
            || table.find(" 24\n") == std::string::npos)
            bad.add("effort table total is not 24");

        r.passed = bad.count == 0;
        r.detail = std::to_string(report.edges.size()) + " edges, " + std::to_string(steps) + " steps (classes "
            + join({classes[0], classes[1], classes[2], classes[3]}) + "), "
            + std::to_string(bad.count) + " failures" + bad.text();
    });
}

//===========================================================================
std::vector<CriterionResult> all_criteria() {
    return {walkthrough_replay(),     massage_laws(),    normalization_properties(),
            classification_oracle(),  inverse_pairs(),   extractor_corpus(),
            worked_transformations(), miniature_study()};
}

} // namespace gconv::testing
