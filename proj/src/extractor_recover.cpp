#include "gconv/extractor.hpp"

#include "gconv/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace gconv {

namespace {

using K = RawToken::Kind;
using Keys = std::set<std::string>;

bool meta(const RawToken & t, std::string_view text) {
    return t.kind == K::Metasymbol && t.text == text;
}

bool terminal(const RawToken & t, std::string_view text) {
    return t.kind == K::Terminal && t.text == text;
}

bool alnum(const std::string & s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

char closer_of(char open) {
    switch (open) {
    case '(': return ')';
    case '[': return ']';
    case '{': return '}';
    }
    return 0;
}

char opener_of(char close) {
    switch (close) {
    case ')': return '(';
    case ']': return '[';
    case '}': return '{';
    }
    return 0;
}

bool meta_open(const RawToken & t) {
    return t.kind == K::Metasymbol && t.text.size() == 1 && closer_of(t.text[0]);
}

bool meta_close(const RawToken & t) {
    return t.kind == K::Metasymbol && t.text.size() == 1 && opener_of(t.text[0]);
}

struct Matching {
    std::vector<std::size_t> pair;            // partner index, or npos
    std::vector<std::size_t> open_unmatched;  // in order
    std::vector<std::size_t> close_unmatched;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Matching match(const RawAlternative & a) {
    Matching m;
    m.pair.assign(a.size(), npos);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (meta_open(a[i])) {
            stack.push_back(i);
        } else if (meta_close(a[i])) {
            char want = opener_of(a[i].text[0]);
            auto it = std::find_if(stack.rbegin(), stack.rend(),
                [&](std::size_t k) { return a[k].text[0] == want; });
            if (it == stack.rend()) {
                m.close_unmatched.push_back(i);
                continue;
            }
            std::size_t k = *it;
            while (stack.back() != k) {
                m.open_unmatched.push_back(stack.back());
                stack.pop_back();
            }
            stack.pop_back();
            m.pair[k] = i;
            m.pair[i] = k;
        }
    }
    m.open_unmatched.insert(m.open_unmatched.end(), stack.begin(), stack.end());
    std::sort(m.open_unmatched.begin(), m.open_unmatched.end());
    return m;
}

//===========================================================================
bool match_parentheses(RawAlternative & a) {
    auto m = match(a);
    if (!m.open_unmatched.empty()) {
        std::size_t i = m.open_unmatched.back();
        std::string want(1, closer_of(a[i].text[0]));
        for (std::size_t k = i + 1; k < a.size(); ++k) {
            if (terminal(a[k], want)) {
                a[k].kind = K::Metasymbol;
                return true;
            }
        }
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
    }
    if (!m.close_unmatched.empty()) {
        std::size_t i = m.close_unmatched.front();
        std::string want(1, opener_of(a[i].text[0]));
        for (std::size_t k = i; k-- > 0;) {
            if (terminal(a[k], want)) {
                a[k].kind = K::Metasymbol;
                return true;
            }
        }
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
    }
    return false;
}

bool metasymbol_to_terminal(RawAlternative & a) {
    auto m = match(a);
    // (a) bar outside any group
    int depth = 0;
    for (auto & t : a) {
        if (meta_open(t))
            ++depth;
        else if (meta_close(t))
            --depth;
        else if (meta(t, "|") && depth <= 0) {
            t.kind = K::Terminal;
            return true;
        }
    }
    // (b), (c) empty brackets or braces
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if ((meta(a[i], "[") && meta(a[i + 1], "]")) || (meta(a[i], "{") && meta(a[i + 1], "}"))) {
            a[i].kind = K::Terminal;
            a[i + 1].kind = K::Terminal;
            return true;
        }
    }
    // (d) parentheses without a bar at their own level
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!meta(a[i], "(") || m.pair[i] == npos)
            continue;
        std::size_t end = m.pair[i];
        bool bar = false;
        for (std::size_t k = i + 1; k < end; ++k) {
            if (meta_open(a[k]) && m.pair[k] != npos)
                k = m.pair[k];
            else if (meta(a[k], "|"))
                bar = true;
        }
        if (!bar) {
            a[i].kind = K::Terminal;
            a[end].kind = K::Terminal;
            return true;
        }
    }
    return false;
}

bool merge_adjacent(RawAlternative & a) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        auto & x = a[i];
        auto & y = a[i + 1];
        if (x.kind == K::Metasymbol || y.kind == K::Metasymbol || !y.joined)
            continue;
        if (!alnum(x.text) || !alnum(y.text) || (x.text.size() != 1 && y.text.size() != 1))
            continue;
        if (y.text.size() > x.text.size())
            x.kind = y.kind;
        x.text += y.text;
        a.erase(a.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        return true;
    }
    return false;
}

bool split_compound(RawAlternative & a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto & t = a[i];
        if (t.kind != K::Terminal)
            continue;
        auto dot = t.text.find('.');
        if (dot == 0 || dot == std::string::npos || !alnum(t.text.substr(0, dot)))
            continue;
        RawToken prefix = t;
        prefix.text = t.text.substr(0, dot);
        RawToken sep = t;
        sep.text = ".";
        sep.joined = true;
        sep.column += dot;
        std::vector<RawToken> parts{prefix, sep};
        if (dot + 1 < t.text.size()) {
            RawToken rest = sep;
            rest.text = t.text.substr(dot + 1);
            rest.column += 1;
            parts.push_back(rest);
        }
        auto at = a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
        a.insert(at, parts.begin(), parts.end());
        return true;
    }
    return false;
}

bool nonterminal_to_terminal(RawAlternative & a, const Keys & keys) {
    for (auto & t : a) {
        if (t.kind == K::Nonterminal && alnum(t.text)
            && std::islower(static_cast<unsigned char>(t.text[0])) && !keys.count(t.text)) {
            t.kind = K::Terminal;
            return true;
        }
    }
    return false;
}

bool terminal_to_nonterminal(RawAlternative & a, const Keys & keys) {
    for (auto & t : a) {
        if (t.kind == K::Terminal && alnum(t.text)
            && std::isupper(static_cast<unsigned char>(t.text[0])) && keys.count(t.text)) {
            t.kind = K::Nonterminal;
            return true;
        }
    }
    return false;
}

bool recover_optionality(RawAlternative & a, const Keys & keys) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto & t = a[i];
        if (t.kind != K::Nonterminal || t.text.size() <= 3)
            continue;
        auto n = t.text.size() - 3;
        if (t.text.compare(n, 3, "opt") != 0 || !keys.count(t.text.substr(0, n)))
            continue;
        t.text.resize(n);
        RawToken opt = t;
        opt.kind = K::Metasymbol;
        opt.text = "opt-subscript";
        opt.joined = true;
        opt.column += n;
        a.insert(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, opt);
        return true;
    }
    return false;
}

bool apply_rule(ExtractionStats::Rule r, RawAlternative & a, const Keys & keys) {
    switch (r) {
    case ExtractionStats::MatchParentheses: return match_parentheses(a);
    case ExtractionStats::MetasymbolToTerminal: return metasymbol_to_terminal(a);
    case ExtractionStats::MergeAdjacent: return merge_adjacent(a);
    case ExtractionStats::SplitCompound: return split_compound(a);
    case ExtractionStats::NonterminalToTerminal: return nonterminal_to_terminal(a, keys);
    case ExtractionStats::TerminalToNonterminal: return terminal_to_nonterminal(a, keys);
    case ExtractionStats::RecoverOptionality: return recover_optionality(a, keys);
    case ExtractionStats::RuleCount: break;
    }
    return false;
}

} // namespace

//===========================================================================
RawGrammar recover(RawGrammar raw, ExtractionStats & stats) {
    Keys keys;
    for (auto & e : raw.entries)
        keys.insert(e.lhs);

    // Each application removes a token, fixes a bracket or changes a kind
    // for good; the bound only guards against a logic error.
    std::size_t budget = 1000;
    for (auto & e : raw.entries)
        for (auto & a : e.alternatives)
            budget += 16 * a.size();

    for (bool changed = true; changed;) {
        changed = false;
        for (int r = 0; r < ExtractionStats::RuleCount && !changed; ++r) {
            auto rule = static_cast<ExtractionStats::Rule>(r);
            for (auto & e : raw.entries) {
                for (auto & a : e.alternatives) {
                    if (apply_rule(rule, a, keys)) {
                        ++stats.rules[rule];
                        changed = true;
                        break;
                    }
                }
                if (changed)
                    break;
            }
        }
        if (changed && --budget == 0)
            throw Error("recovery did not reach a fixpoint");
    }

    for (auto & e : raw.entries)
        std::erase_if(e.alternatives, [](auto & a) { return a.empty(); });
    return raw;
}

//===========================================================================
RawGrammar remove_doubles(RawGrammar raw, ExtractionStats & stats) {
    auto same = [](const RawAlternative & x, const RawAlternative & y) {
        return std::equal(x.begin(), x.end(), y.begin(), y.end(),
            [](auto & a, auto & b) { return a.same(b); });
    };
    for (auto & e : raw.entries) {
        std::vector<RawAlternative> kept;
        for (auto & a : e.alternatives) {
            if (std::any_of(kept.begin(), kept.end(), [&](auto & k) { return same(k, a); }))
                ++stats.duplicates;
            else
                kept.push_back(std::move(a));
        }
        e.alternatives = std::move(kept);
    }
    return raw;
}

} // namespace gconv
