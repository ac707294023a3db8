// gconv: grammar extraction, comparison, transformation and convergence.
//
// Exit status: 0 success, 1 domain error (failed precondition, phase or
// convergence violation, divergence), 2 usage, syntax or I/O error.

#include "gconv/bgf_text.hpp"
#include "gconv/comparator.hpp"
#include "gconv/convergence.hpp"
#include "gconv/extractor.hpp"
#include "gconv/script.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gconv;

namespace {

std::string read_file(const std::string & path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Syntax error with the file name in front of its position.
class SourceError : public Error {
public:
    using Error::Error;
};

template <class F>
auto parse_file(const std::string & path, F parse) {
    auto text = read_file(path);
    try {
        return parse(text);
    } catch (const SyntaxError & e) {
        throw SourceError(path + ":" + e.what());
    }
}

Grammar load_grammar(const std::string & path) {
    return parse_file(path, [](const std::string & t) { return parse_grammar(t); });
}

Script load_script(const std::string & path) {
    return parse_file(path, [](const std::string & t) { return parse_script(t); });
}

void emit(const std::string & text, const std::string & output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out || !(out << text))
        throw IoError("cannot write " + output);
}

std::string show(const Grammar & g, const std::string & format) {
    return format == "dump" ? dump(g) : pretty(g);
}

std::string stem(const std::string & path) {
    return std::filesystem::path(path).stem().string();
}

} // namespace

int main(int argc, char ** argv) {
    CLI::App app{"Grammar convergence toolkit"};
    app.require_subcommand(1);

    std::string output;
    std::string format = "text";
    bool stats = false;
    bool strict = false;
    bool converging = false;
    std::vector<std::string> inputs;

    auto add_output = [&](CLI::App * c) {
        c->add_option("--output,-o", output, "Write to this file instead of standard output");
    };
    auto add_format = [&](CLI::App * c) {
        c->add_option("--format", format, "Grammar output form")
            ->check(CLI::IsMember({"text", "dump"}));
    };

    auto * extract_cmd = app.add_subcommand("extract", "Extract a grammar from markup");
    extract_cmd->add_option("markup", inputs, "Markup file")->required()->expected(1);
    extract_cmd->add_flag("--stats", stats, "Print irregularity counters to standard error");
    add_output(extract_cmd);
    add_format(extract_cmd);

    auto * normalize_cmd = app.add_subcommand("normalize", "Parse, normalize and print a grammar");
    normalize_cmd->add_option("grammar", inputs, "Grammar file")->required()->expected(1);
    add_output(normalize_cmd);
    add_format(normalize_cmd);

    auto * metrics_cmd = app.add_subcommand("metrics", "Productions, nonterminals, tops, bottoms");
    metrics_cmd->add_option("grammars", inputs, "Grammar files")->required();
    add_output(metrics_cmd);

    auto * compare_cmd = app.add_subcommand("compare", "Nominal and structural differences");
    compare_cmd->add_option("grammars", inputs, "Left and right grammar")->required()->expected(2);
    add_output(compare_cmd);

    auto * transform_cmd = app.add_subcommand("transform", "Apply a script to a grammar");
    transform_cmd->add_option("files", inputs, "Grammar and script")->required()->expected(2);
    transform_cmd->add_flag("--strict-phases", strict, "Enforce phase discipline");
    add_output(transform_cmd);
    add_format(transform_cmd);

    auto * converge_cmd = app.add_subcommand("converge", "Run a convergence plan");
    converge_cmd->add_option("plan", inputs, "Plan file")->required()->expected(1);
    add_output(converge_cmd);

    auto * progress_cmd = app.add_subcommand("progress", "Difference series as CSV");
    progress_cmd->add_option("files", inputs, "Source, target and script")->required()->expected(3);
    progress_cmd->add_flag("--converging", converging, "Require zero differences at the end");
    add_output(progress_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*extract_cmd) {
            auto x = parse_file(inputs[0], [](const std::string & t) { return extract(t); });
            emit(show(x.grammar, format), output);
            if (stats)
                std::cerr << stats_table(x.stats);
        } else if (*normalize_cmd) {
            emit(show(load_grammar(inputs[0]), format), output);
        } else if (*metrics_cmd) {
            std::vector<std::pair<std::string, GrammarMetrics>> rows;
            for (auto & path : inputs)
                rows.emplace_back(stem(path), metrics(load_grammar(path)));
            emit(metrics_table(rows), output);
        } else if (*compare_cmd) {
            auto left = load_grammar(inputs[0]);
            auto right = load_grammar(inputs[1]);
            emit(render(compare(left, right), stem(inputs[0]), stem(inputs[1])), output);
        } else if (*transform_cmd) {
            auto g = load_grammar(inputs[0]);
            auto script = load_script(inputs[1]);
            g = strict ? apply_strict(script, g) : apply_script(script, g);
            emit(show(g, format), output);
        } else if (*converge_cmd) {
            auto plan = load_plan(inputs[0]);
            emit(render(run_plan(plan)), output);
        } else if (*progress_cmd) {
            auto source = load_grammar(inputs[0]);
            auto target = load_grammar(inputs[1]);
            auto script = load_script(inputs[2]);
            emit(progress_csv(progress_series(source, target, script, converging)), output);
        }
    } catch (const SourceError & e) {
        std::cerr << "gconv: syntax error: " << e.what() << '\n';
        return 2;
    } catch (const SyntaxError & e) {
        std::cerr << "gconv: syntax error: " << e.what() << '\n';
        return 2;
    } catch (const IoError & e) {
        std::cerr << "gconv: " << e.what() << '\n';
        return 2;
    } catch (const Error & e) {
        std::cerr << "gconv: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
