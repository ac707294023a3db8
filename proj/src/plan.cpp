#include "gconv/bgf_text.hpp"
#include "gconv/convergence.hpp"
#include "gconv/extractor.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace gconv {

namespace {

std::string read_file(const std::filesystem::path & p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

//===========================================================================
ConvergencePlan parse_plan(std::string_view text, const std::filesystem::path & base) {
    static const std::regex source_re(R"(source\s+(\S+)\s*=\s*(grammar|markup)\s+(\S+))");
    static const std::regex target_re(R"(target\s+(\S+))");
    static const std::regex edge_re(R"(edge\s+(\S+)\s*->\s*(\S+)\s+via\s+(\S+)(\s+converging)?)");

    ConvergencePlan plan;
    std::set<std::string> names;
    auto declare = [&](const std::string & n, std::size_t line) {
        if (!names.insert(n).second)
            throw SyntaxError("node " + n + " declared twice", line, 1);
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    for (std::size_t lineno = 1; std::getline(in, raw); ++lineno) {
        std::string line = raw;
        for (auto mark : {"//", "#"})
            if (auto c = line.find(mark); c != std::string::npos)
                line.erase(c);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        std::smatch m;
        if (std::regex_match(line, m, source_re)) {
            declare(m[1], lineno);
            plan.sources.push_back({m[1], m[2] == "markup", base / m[3].str()});
        } else if (std::regex_match(line, m, target_re)) {
            declare(m[1], lineno);
            plan.targets.push_back(m[1]);
        } else if (std::regex_match(line, m, edge_re)) {
            plan.edges.push_back({m[1], m[2], base / m[3].str(), m[4].matched, lineno});
        } else {
            throw SyntaxError("unrecognized plan line", lineno, first + 1);
        }
    }

    std::set<std::string> targets(plan.targets.begin(), plan.targets.end());
    for (auto & e : plan.edges) {
        if (!names.count(e.from))
            throw SyntaxError("unknown node " + e.from, e.line, 1);
        if (!targets.count(e.to))
            throw SyntaxError(e.to + " is not a target", e.line, 1);
    }
    for (auto & t : plan.targets)
        if (std::none_of(plan.edges.begin(), plan.edges.end(), [&](auto & e) { return e.to == t; }))
            throw Error("target " + t + " has no incoming edge");

    // Acyclic: every target must become evaluable.
    std::set<std::string> ready;
    for (auto & s : plan.sources)
        ready.insert(s.name);
    for (bool progress = true; progress;) {
        progress = false;
        for (auto & t : plan.targets) {
            if (ready.count(t))
                continue;
            if (std::all_of(plan.edges.begin(), plan.edges.end(),
                    [&](auto & e) { return e.to != t || ready.count(e.from); })) {
                ready.insert(t);
                progress = true;
            }
        }
    }
    for (auto & t : plan.targets)
        if (!ready.count(t))
            throw Error("plan has a cycle through " + t);
    return plan;
}

ConvergencePlan load_plan(const std::filesystem::path & file) {
    return parse_plan(read_file(file), file.parent_path());
}

//===========================================================================
PlanReport run_plan(const ConvergencePlan & plan) {
    PlanReport report;
    for (auto & s : plan.sources) {
        auto text = read_file(s.path);
        Grammar g;
        try {
            g = s.markup ? extract(text).grammar : parse_grammar(text);
        } catch (const SyntaxError & e) {
            throw SyntaxError(s.path.string() + ": " + e.what(), e.line(), e.column());
        }
        report.metrics.emplace_back(s.name, metrics(g));
        report.grammars.emplace(s.name, std::move(g));
    }

    std::vector<std::string> pending = plan.targets;
    while (!pending.empty()) {
        auto it = std::find_if(pending.begin(), pending.end(), [&](auto & t) {
            return std::all_of(plan.edges.begin(), plan.edges.end(),
                [&](auto & e) { return e.to != t || report.grammars.count(e.from); });
        });
        std::string target = *it;
        pending.erase(it);

        std::vector<const PlanEdge *> incoming;
        for (auto & e : plan.edges)
            if (e.to == target)
                incoming.push_back(&e);

        std::vector<std::pair<const PlanEdge *, Script>> scripts;
        for (auto * e : incoming) {
            try {
                scripts.emplace_back(e, parse_script(read_file(e->script)));
            } catch (const SyntaxError & x) {
                throw SyntaxError(e->script.string() + ": " + x.what(), x.line(), x.column());
            }
        }

        std::optional<Grammar> result;
        for (auto & [e, script] : scripts) {
            auto & source = report.grammars.at(e->from);
            try {
                if (!result)
                    result = apply_strict(script, source);
                auto r = run_edge(source, *result, script, e->converging);
                if (!equal(r.grammar, *result))
                    throw ConvergenceError("diverges from the first incoming edge at target " + target);
                report.edges.push_back({*e, r.effort, r.progress});
            } catch (const SyntaxError &) {
                throw;
            } catch (const Error & x) {
                throw ConvergenceError("edge " + e->name() + ": " + x.what());
            }
        }
        report.order.push_back(target);
        report.metrics.emplace_back(target, metrics(*result));
        report.grammars.emplace(target, std::move(*result));
    }
    return report;
}

//===========================================================================
std::string render(const PlanReport & r) {
    std::ostringstream os;
    os << "order:";
    for (auto & t : r.order)
        os << ' ' << t;
    os << "\n\nmetrics:\n" << metrics_table(r.metrics);
    os << "\neffort:\n" << effort_table(r.edges);
    os << "\nusage:\n" << usage_table(r.edges);
    for (auto & e : r.edges) {
        os << "\nprogress " << e.edge.name() << ":\n" << progress_csv(e.progress);
    }
    return os.str();
}

} // namespace gconv
