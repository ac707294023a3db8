#include "gconv/extractor.hpp"

#include "gconv/bgf_text.hpp"
#include "gconv/error.hpp"

#include <iomanip>
#include <numeric>
#include <sstream>

namespace gconv {

namespace {

using K = RawToken::Kind;

class AlternativeParser {
public:
    explicit AlternativeParser(const RawAlternative & a) : m_toks(a) {}

    Expression parse() {
        auto e = alternatives();
        if (m_pos < m_toks.size())
            fail("unexpected " + m_toks[m_pos].text);
        return e;
    }

private:
    Expression alternatives() {
        std::vector<Expression> branches{sequence()};
        while (at("|")) {
            ++m_pos;
            branches.push_back(sequence());
        }
        return branches.size() == 1 ? branches.front() : choice(std::move(branches));
    }

    Expression sequence() {
        std::vector<Expression> items;
        while (m_pos < m_toks.size()) {
            auto & t = m_toks[m_pos];
            if (t.kind == K::Terminal) {
                items.push_back(terminal(t.text));
                ++m_pos;
            } else if (t.kind == K::Nonterminal) {
                items.push_back(nonterminal(t.text));
                ++m_pos;
            } else if (t.text == "opt-subscript") {
                if (items.empty())
                    fail("opt without a symbol");
                items.back() = optional(items.back());
                ++m_pos;
            } else if (t.text == "(" || t.text == "[" || t.text == "{") {
                std::string open = t.text;
                ++m_pos;
                auto inner = alternatives();
                std::string close = open == "(" ? ")" : open == "[" ? "]" : "}";
                if (!at(close))
                    fail("expected " + close);
                ++m_pos;
                if (open == "[")
                    inner = optional(inner);
                else if (open == "{")
                    inner = star(inner);
                items.push_back(inner);
            } else {
                break;
            }
        }
        return items.size() == 1 ? items.front() : gconv::sequence(std::move(items));
    }

    bool at(std::string_view text) const {
        return m_pos < m_toks.size() && m_toks[m_pos].kind == K::Metasymbol && m_toks[m_pos].text == text;
    }

    [[noreturn]] void fail(const std::string & what) const {
        auto & t = m_pos < m_toks.size() ? m_toks[m_pos] : m_toks.back();
        throw SyntaxError(what, t.line, t.column);
    }

    const RawAlternative & m_toks;
    std::size_t m_pos = 0;
};

} // namespace

//===========================================================================
std::string_view rule_name(ExtractionStats::Rule r) {
    switch (r) {
    case ExtractionStats::MatchParentheses: return "Match parentheses";
    case ExtractionStats::MetasymbolToTerminal: return "Metasymbol to terminal";
    case ExtractionStats::MergeAdjacent: return "Merge adjacent symbols";
    case ExtractionStats::SplitCompound: return "Split compound symbol";
    case ExtractionStats::NonterminalToTerminal: return "Nonterminal to terminal";
    case ExtractionStats::TerminalToNonterminal: return "Terminal to nonterminal";
    case ExtractionStats::RecoverOptionality: return "Recover optionality";
    case ExtractionStats::RuleCount: break;
    }
    return "?";
}

std::size_t ExtractionStats::recovery_total() const {
    return std::accumulate(rules.begin(), rules.end(), std::size_t{0});
}

std::size_t ExtractionStats::total() const {
    return arbitrary_decisions + wellformedness + indentation + recovery_total() + duplicates;
}

//===========================================================================
Grammar parse_precise(const RawGrammar & raw) {
    Grammar g;
    for (auto & e : raw.entries) {
        if (e.alternatives.empty())
            continue;
        std::vector<Expression> branches;
        for (auto & a : e.alternatives)
            branches.push_back(AlternativeParser(a).parse());
        g.productions.push_back(make_production(e.lhs, choice(std::move(branches))));
    }
    return finalize(std::move(g));
}

Extraction extract(std::string_view markup) {
    Extraction out;
    auto raw = preprocess(markup, out.stats);
    raw = recover(std::move(raw), out.stats);
    raw = remove_doubles(std::move(raw), out.stats);
    out.grammar = parse_precise(raw);
    return out;
}

//===========================================================================
std::string to_text(const RawGrammar & raw) {
    std::ostringstream os;
    for (auto & e : raw.entries) {
        os << e.lhs << ":\n";
        for (auto & a : e.alternatives) {
            os << "       ";
            for (auto & t : a) {
                os << ' ';
                if (t.kind == K::Terminal)
                    os << quote_terminal(t.text);
                else if (t.text == "opt-subscript")
                    os << "opt";
                else
                    os << t.text;
            }
            os << '\n';
        }
    }
    return os.str();
}

std::string stats_table(const ExtractionStats & s) {
    std::ostringstream os;
    auto row = [&](std::string_view name, std::size_t n) {
        os << std::left << std::setw(34) << name << std::right << std::setw(6) << n << '\n';
    };
    row("Arbitrary lexical decisions", s.arbitrary_decisions);
    row("Well-formedness violations", s.wellformedness);
    row("Indentation violations", s.indentation);
    row("Recovery rules", s.recovery_total());
    for (int r = 0; r < ExtractionStats::RuleCount; ++r) {
        auto rule = static_cast<ExtractionStats::Rule>(r);
        row("  " + std::string(rule_name(rule)), s.rules[rule]);
    }
    row("Purge duplicate definitions", s.duplicates);
    row("Total", s.total());
    return os.str();
}

} // namespace gconv
