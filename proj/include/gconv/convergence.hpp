#pragma once

#include "gconv/comparator.hpp"
#include "gconv/script.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace gconv {

// Phase discipline, transaction or convergence failure.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

struct ProgressPoint {
    std::size_t step = 0;
    std::size_t nominal = 0;
    std::size_t structural = 0;

    std::size_t total() const { return nominal + structural; }
    friend bool operator==(const ProgressPoint &, const ProgressPoint &) = default;
};

struct EffortReport {
    std::size_t lines = 0;
    std::size_t steps = 0;
    std::array<std::size_t, 4> by_class{};  // indexed by SemanticsClass
    std::array<std::size_t, 4> by_phase{};  // indexed by Phase
    std::array<std::size_t, 4> by_intent{}; // indexed by Intent
    std::map<std::string, std::size_t> operators;

    friend bool operator==(const EffortReport &, const EffortReport &) = default;
};

// Static counts over the script's steps.
EffortReport effort(const Script & script);

struct EdgeResult {
    Grammar grammar;
    EffortReport effort;
    std::vector<ProgressPoint> progress; // entry 0 is the state before any step
};

// Checked evaluation. Steps before the first %phase are preparation.
// Phases only advance; matching phases (nominal, structural) admit only
// preserving steps, and outside a transaction a step there may not raise
// the difference count against `target`. A transaction lies within one
// matching phase, does not nest, and must end below its starting count.
// Resolution steps need an %intent. A converging edge ends with no
// differences.
EdgeResult run_edge(const Grammar & source, const Grammar & target, const Script & script,
                    bool converging = true);

// Phase discipline without a target (no difference checks).
Grammar apply_strict(const Script & script, Grammar g);

std::vector<ProgressPoint> progress_series(const Grammar & source, const Grammar & target,
                                           const Script & script, bool converging = false);

// step,nominal,structural,total
std::string progress_csv(const std::vector<ProgressPoint> & series);

//===========================================================================
// Plan file:
//
//   source read = grammar read.bgf
//   source impl = markup impl.html
//   target common
//   edge read -> common via read.xbgf converging
//   edge impl -> common via impl.xbgf converging
//
// Paths are relative to the plan file. `//` and `#` start comments.
struct PlanSource {
    std::string name;
    bool markup = false;
    std::filesystem::path path;
};

struct PlanEdge {
    std::string from;
    std::string to;
    std::filesystem::path script;
    bool converging = false;
    std::size_t line = 0;

    std::string name() const { return from + " -> " + to; }
};

struct ConvergencePlan {
    std::vector<PlanSource> sources;
    std::vector<std::string> targets;
    std::vector<PlanEdge> edges;
};

// Parses and checks the graph shape (known nodes, acyclic, every target
// reached). Paths are resolved against `base`.
ConvergencePlan parse_plan(std::string_view text, const std::filesystem::path & base = {});
ConvergencePlan load_plan(const std::filesystem::path & file);

struct EdgeReport {
    PlanEdge edge;
    EffortReport effort;
    std::vector<ProgressPoint> progress;
};

struct PlanReport {
    std::vector<std::string> order;                  // targets, as evaluated
    std::map<std::string, Grammar> grammars;         // every node
    std::vector<std::pair<std::string, GrammarMetrics>> metrics; // sources, then targets
    std::vector<EdgeReport> edges;                   // in evaluation order
};

// Evaluates targets in topological order. A target's grammar is the result
// of its first incoming edge; every incoming edge is run against it and
// must produce an equal grammar. Failures name the edge or target.
PlanReport run_plan(const ConvergencePlan & plan);

// Report tables.
std::string metrics_table(const std::vector<std::pair<std::string, GrammarMetrics>> & rows);
std::string effort_table(const std::vector<EdgeReport> & edges);
std::string usage_table(const std::vector<EdgeReport> & edges);
std::string render(const PlanReport & r);

} // namespace gconv
