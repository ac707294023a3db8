#pragma once

#include "gconv/grammar.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace gconv {

struct RawToken {
    enum class Kind { Terminal, Nonterminal, Metasymbol };

    Kind kind = Kind::Terminal;
    std::string text;           // metasymbols: ( ) [ ] { } | opt-subscript
    std::size_t line = 0;       // origin in the markup
    std::size_t column = 0;
    bool joined = false;        // no whitespace before it, only tags

    // Kind and text only.
    bool same(const RawToken & o) const { return kind == o.kind && text == o.text; }
};

using RawAlternative = std::vector<RawToken>;

struct RawEntry {
    std::string lhs;
    std::vector<RawAlternative> alternatives;
    bool one_of = false;
};

// Left-hand sides in order of first appearance; a name defined in several
// places accumulates all its alternatives in one entry.
struct RawGrammar {
    std::vector<RawEntry> entries;

    bool defines(std::string_view name) const;
    RawEntry & entry(const std::string & lhs); // created on demand
};

// Scanner decision table cells.
enum class ScanState { Italic, Fixed, Default };
enum class TokenClass { Alphanumeric, Bar, Bracket, Other };

struct ExtractionStats {
    enum Rule {
        MatchParentheses,
        MetasymbolToTerminal,
        MergeAdjacent,
        SplitCompound,
        NonterminalToTerminal,
        TerminalToNonterminal,
        RecoverOptionality,
        RuleCount
    };

    std::size_t arbitrary_decisions = 0; // the "?" cells of the decision table
    std::size_t wellformedness = 0;
    std::size_t indentation = 0;
    std::array<std::size_t, RuleCount> rules{};
    std::size_t duplicates = 0;

    // decisions[class][state]
    std::array<std::array<std::size_t, 3>, 4> decisions{};

    std::size_t recovery_total() const;
    std::size_t total() const;

    friend bool operator==(const ExtractionStats &, const ExtractionStats &) = default;
};

std::string_view rule_name(ExtractionStats::Rule r);

// Phase 1: scan the <pre> blocks into a dictionary of token alternatives.
// Throws Error when there is no block, SyntaxError for an unterminated one.
RawGrammar preprocess(std::string_view markup, ExtractionStats & stats);

// Phase 2: recovery rules 1-7 until none applies.
RawGrammar recover(RawGrammar raw, ExtractionStats & stats);

// Phase 3: token-identical alternatives of one entry, first kept.
RawGrammar remove_doubles(RawGrammar raw, ExtractionStats & stats);

// Phase 4. One horizontal production per entry. Throws SyntaxError at the
// offending token.
Grammar parse_precise(const RawGrammar & raw);

struct Extraction {
    Grammar grammar;
    ExtractionStats stats;
};

Extraction extract(std::string_view markup);

// Alternatives one per line: nonterminals bare, terminals quoted,
// metasymbols bare, opt-subscript as `opt`.
std::string to_text(const RawGrammar & raw);

// Two-column table, one row per irregularity kind.
std::string stats_table(const ExtractionStats & s);

} // namespace gconv
