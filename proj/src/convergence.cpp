#include "gconv/convergence.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

namespace gconv {

namespace {

int order(Phase p) { return static_cast<int>(p); }

bool matching(Phase p) { return p == Phase::Nominal || p == Phase::Structural; }

ProgressPoint measure(std::size_t step, const Grammar & g, const Grammar & target) {
    auto r = compare(g, target);
    return {step, r.nominal_count, r.structural_count};
}

// Shared evaluator for run_edge and apply_strict.
struct Evaluator {
    const Grammar * target = nullptr;
    std::vector<ProgressPoint> progress;

    Grammar run(const Script & script, Grammar g) {
        Phase phase = Phase::Preparation;
        Intent intent = Intent::None;
        bool in_txn = false;
        std::size_t txn_base = 0;
        std::size_t txn_line = 0;
        std::size_t index = 0;
        std::size_t current = 0;

        if (target) {
            progress.push_back(measure(0, g, *target));
            current = progress.back().total();
        }

        auto at = [](const ScriptItem & it, const std::string & what) {
            return ConvergenceError("line " + std::to_string(it.line) + ": " + what);
        };

        for (auto & it : script.items) {
            switch (it.kind) {
            case ScriptItem::Kind::Phase:
                if (in_txn)
                    throw at(it, "phase change inside a transaction");
                if (order(it.phase) < order(phase))
                    throw at(it, "phase " + std::string(phase_name(it.phase)) + " after "
                                 + std::string(phase_name(phase)));
                phase = it.phase;
                intent = Intent::None;
                break;
            case ScriptItem::Kind::Intent:
                if (phase != Phase::Resolution)
                    throw at(it, "%intent outside the resolution phase");
                intent = it.intent;
                break;
            case ScriptItem::Kind::BeginTransaction:
                if (in_txn)
                    throw at(it, "nested transaction");
                if (!matching(phase))
                    throw at(it, "transaction outside a matching phase");
                in_txn = true;
                txn_base = current;
                txn_line = it.line;
                break;
            case ScriptItem::Kind::EndTransaction:
                if (!in_txn)
                    throw at(it, "%end-transaction without %begin-transaction");
                if (target && current >= txn_base)
                    throw at(it, "transaction from line " + std::to_string(txn_line)
                                 + " did not reduce differences (" + std::to_string(txn_base)
                                 + " to " + std::to_string(current) + ")");
                in_txn = false;
                break;
            case ScriptItem::Kind::Step: {
                ++index;
                auto & step = it.step;
                if (matching(phase) && classify(step) != SemanticsClass::Preserving)
                    throw StepFailure(index, step, std::string(class_name(classify(step)))
                                      + " step in the " + std::string(phase_name(phase)) + " phase");
                if (phase == Phase::Resolution && intent == Intent::None)
                    throw StepFailure(index, step, "resolution step without %intent");
                try {
                    g = apply(step, g);
                } catch (const PreconditionViolation & e) {
                    throw StepFailure(index, step, e.what());
                }
                if (target) {
                    progress.push_back(measure(index, g, *target));
                    auto next = progress.back().total();
                    if (matching(phase) && !in_txn && next > current)
                        throw StepFailure(index, step, "differences rose from "
                                          + std::to_string(current) + " to " + std::to_string(next));
                    current = next;
                }
                break;
            }
            }
        }
        if (in_txn)
            throw ConvergenceError("line " + std::to_string(txn_line) + ": unterminated transaction");
        return g;
    }
};

} // namespace

//===========================================================================
EffortReport effort(const Script & script) {
    EffortReport r;
    r.lines = script.lines;
    Phase phase = Phase::Preparation;
    Intent intent = Intent::None;
    for (auto & it : script.items) {
        if (it.kind == ScriptItem::Kind::Phase) {
            phase = it.phase;
            intent = Intent::None;
        } else if (it.kind == ScriptItem::Kind::Intent) {
            intent = it.intent;
        } else if (it.kind == ScriptItem::Kind::Step) {
            ++r.steps;
            ++r.by_class[static_cast<std::size_t>(classify(it.step))];
            ++r.by_phase[static_cast<std::size_t>(phase)];
            ++r.by_intent[static_cast<std::size_t>(intent)];
            ++r.operators[it.step.op];
        }
    }
    return r;
}

//===========================================================================
EdgeResult run_edge(const Grammar & source, const Grammar & target, const Script & script,
                    bool converging) {
    Evaluator ev;
    ev.target = &target;
    EdgeResult out;
    out.grammar = ev.run(script, source);
    out.progress = std::move(ev.progress);
    out.effort = effort(script);
    if (converging && out.progress.back().total() != 0)
        throw ConvergenceError("not converged: " + std::to_string(out.progress.back().total())
                               + " differences remain");
    return out;
}

Grammar apply_strict(const Script & script, Grammar g) {
    return Evaluator{}.run(script, std::move(g));
}

std::vector<ProgressPoint> progress_series(const Grammar & source, const Grammar & target,
                                           const Script & script, bool converging) {
    return run_edge(source, target, script, converging).progress;
}

std::string progress_csv(const std::vector<ProgressPoint> & series) {
    std::ostringstream os;
    os << "step,nominal,structural,total\n";
    for (auto & p : series)
        os << p.step << ',' << p.nominal << ',' << p.structural << ',' << p.total() << '\n';
    return os.str();
}

//===========================================================================
namespace {

using Row = std::pair<std::string, std::vector<std::size_t>>;

std::string table(const std::vector<std::string> & header, const std::vector<Row> & rows) {
    std::size_t first = 0;
    for (auto & r : rows)
        first = std::max(first, r.first.size());
    std::vector<std::size_t> width;
    for (auto & h : header)
        width.push_back(std::max<std::size_t>(h.size(), 5));

    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(first)) << "";
    for (std::size_t c = 0; c < header.size(); ++c)
        os << "  " << std::right << std::setw(static_cast<int>(width[c])) << header[c];
    os << '\n';
    for (auto & [label, values] : rows) {
        os << std::left << std::setw(static_cast<int>(first)) << label;
        for (std::size_t c = 0; c < values.size(); ++c)
            os << "  " << std::right << std::setw(static_cast<int>(width[c])) << values[c];
        os << '\n';
    }
    return os.str();
}

std::vector<std::string> edge_header(const std::vector<EdgeReport> & edges) {
    std::vector<std::string> h;
    for (auto & e : edges)
        h.push_back(e.edge.from);
    h.push_back("Total");
    return h;
}

Row edge_row(std::string label, const std::vector<EdgeReport> & edges,
             const std::function<std::size_t(const EffortReport &)> & get) {
    Row r{std::move(label), {}};
    std::size_t sum = 0;
    for (auto & e : edges) {
        r.second.push_back(get(e.effort));
        sum += r.second.back();
    }
    r.second.push_back(sum);
    return r;
}

} // namespace

std::string metrics_table(const std::vector<std::pair<std::string, GrammarMetrics>> & rows) {
    std::vector<Row> out;
    for (auto & [name, m] : rows)
        out.push_back({name, {m.production_count, m.nonterminal_count, m.top_count, m.bottom_count}});
    return table({"Productions", "Nonterminals", "Tops", "Bottoms"}, out);
}

std::string effort_table(const std::vector<EdgeReport> & edges) {
    auto cls = [](SemanticsClass c) {
        return [c](const EffortReport & r) { return r.by_class[static_cast<std::size_t>(c)]; };
    };
    auto phase = [](Phase p) {
        return [p](const EffortReport & r) { return r.by_phase[static_cast<std::size_t>(p)]; };
    };
    auto intent = [](Intent i) {
        return [i](const EffortReport & r) { return r.by_intent[static_cast<std::size_t>(i)]; };
    };
    std::vector<Row> rows{
        edge_row("Number of lines", edges, [](auto & r) { return r.lines; }),
        edge_row("Number of transformations", edges, [](auto & r) { return r.steps; }),
        edge_row("  semantics-preserving", edges, cls(SemanticsClass::Preserving)),
        edge_row("  semantics-increasing", edges, cls(SemanticsClass::Increasing)),
        edge_row("  semantics-decreasing", edges, cls(SemanticsClass::Decreasing)),
        edge_row("  semantics-revising", edges, cls(SemanticsClass::Revising)),
        edge_row("Preparation phase", edges, phase(Phase::Preparation)),
        edge_row("Nominal matching", edges, phase(Phase::Nominal)),
        edge_row("Structural matching", edges, phase(Phase::Structural)),
        edge_row("Resolution phase", edges, phase(Phase::Resolution)),
        edge_row("  extension", edges, intent(Intent::Extension)),
        edge_row("  relaxation", edges, intent(Intent::Relaxation)),
        edge_row("  correction", edges, intent(Intent::Correction)),
    };
    return table(edge_header(edges), rows);
}

std::string usage_table(const std::vector<EdgeReport> & edges) {
    std::vector<Row> rows;
    for (auto & op : operator_names()) {
        auto row = edge_row(op, edges, [&](const EffortReport & r) {
            auto it = r.operators.find(op);
            return it == r.operators.end() ? std::size_t{0} : it->second;
        });
        if (row.second.back() > 0)
            rows.push_back(std::move(row));
    }
    return table(edge_header(edges), rows);
}

} // namespace gconv
