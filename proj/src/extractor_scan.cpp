#include "gconv/extractor.hpp"

#include "gconv/error.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>

namespace gconv {

namespace {

struct Scanned {
    std::string text;
    ScanState state = ScanState::Default;
    std::size_t line = 0;
    std::size_t column = 0;
    bool joined = false;
    bool opt = false;
};

struct ScanLine {
    std::size_t indent = 0;
    std::vector<Scanned> tokens;
};

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto & c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_bracket(char c) {
    return c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}';
}

TokenClass token_class(const std::string & t) {
    if (t == "|")
        return TokenClass::Bar;
    if (t.size() == 1 && is_bracket(t[0]))
        return TokenClass::Bracket;
    bool alnum = std::all_of(t.begin(), t.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
    return alnum ? TokenClass::Alphanumeric : TokenClass::Other;
}

RawToken::Kind decide(TokenClass cls, ScanState state) {
    using K = RawToken::Kind;
    switch (state) {
    case ScanState::Italic:
        switch (cls) {
        case TokenClass::Alphanumeric: return K::Nonterminal;
        case TokenClass::Bar:
        case TokenClass::Bracket: return K::Metasymbol;
        case TokenClass::Other: return K::Terminal;
        }
        break;
    case ScanState::Fixed:
        return K::Terminal;
    case ScanState::Default:
        return cls == TokenClass::Bar ? K::Metasymbol : K::Terminal;
    }
    return K::Terminal;
}

//===========================================================================
// Position lookup over the whole document.
class Positions {
public:
    explicit Positions(std::string_view text) {
        m_starts.push_back(0);
        for (std::size_t i = 0; i < text.size(); ++i)
            if (text[i] == '\n')
                m_starts.push_back(i + 1);
    }

    std::pair<std::size_t, std::size_t> at(std::size_t offset) const {
        auto it = std::upper_bound(m_starts.begin(), m_starts.end(), offset);
        std::size_t line = static_cast<std::size_t>(it - m_starts.begin());
        return {line, offset - m_starts[line - 1] + 1};
    }

private:
    std::vector<std::size_t> m_starts;
};

//===========================================================================
// Tag-driven scanner over one <pre> block.
class BlockScanner {
public:
    BlockScanner(std::string_view doc, const Positions & pos, ExtractionStats & stats)
        : m_doc(doc), m_pos(pos), m_stats(stats) {}

    std::vector<ScanLine> scan(std::size_t begin, std::size_t end) {
        m_lines.assign(1, ScanLine{});
        for (std::size_t i = begin; i < end;) {
            char c = m_doc[i];
            if (c == '<') {
                if (auto next = tag(i, end)) {
                    i = *next;
                    continue;
                }
            } else if (c == '&') {
                if (auto next = entity(i, end)) {
                    i = *next;
                    continue;
                }
            }
            put(c, i);
            ++i;
        }
        flush();
        if (m_in_sub)
            ++m_stats.wellformedness;
        if (m_state != ScanState::Default)
            ++m_stats.wellformedness;
        return std::move(m_lines);
    }

private:
    std::optional<std::size_t> tag(std::size_t i, std::size_t end) {
        if (m_doc.substr(i, 4) == "<!--") {
            auto close = m_doc.find("-->", i + 4);
            if (close == std::string_view::npos || close >= end)
                return std::nullopt;
            return close + 3;
        }
        auto close = m_doc.find('>', i);
        if (close == std::string_view::npos || close >= end)
            return std::nullopt;
        auto body = m_doc.substr(i + 1, close - i - 1);
        bool closing = !body.empty() && body.front() == '/';
        if (closing)
            body.remove_prefix(1);
        std::size_t n = 0;
        while (n < body.size() && std::isalpha(static_cast<unsigned char>(body[n])))
            ++n;
        if (n == 0)
            return std::nullopt;
        auto name = lower(body.substr(0, n));

        flush();
        if (name == "i" || name == "em")
            switch_state(ScanState::Italic, closing);
        else if (name == "code")
            switch_state(ScanState::Fixed, closing);
        else if (name == "sub")
            sub(closing, i);
        return close + 1;
    }

    void switch_state(ScanState s, bool closing) {
        if (closing) {
            if (m_state != s)
                ++m_stats.wellformedness;
            m_state = ScanState::Default;
        } else {
            if (m_state != ScanState::Default)
                ++m_stats.wellformedness;
            m_state = s;
        }
    }

    void sub(bool closing, std::size_t at) {
        if (!closing) {
            if (m_in_sub)
                ++m_stats.wellformedness;
            m_in_sub = true;
            m_sub_text.clear();
            m_sub_at = at;
            return;
        }
        if (!m_in_sub) {
            ++m_stats.wellformedness;
            return;
        }
        m_in_sub = false;
        std::string t = m_sub_text;
        auto first = t.find_first_not_of(" \t");
        auto last = t.find_last_not_of(" \t");
        t = first == std::string::npos ? "" : t.substr(first, last - first + 1);
        if (lower(t) == "opt") {
            Scanned s;
            s.text = "opt";
            s.opt = true;
            s.joined = !m_gap;
            std::tie(s.line, s.column) = m_pos.at(m_sub_at);
            m_lines.back().tokens.push_back(s);
            m_at_line_start = false;
            return;
        }
        for (std::size_t k = 0; k < m_sub_text.size(); ++k)
            put(m_sub_text[k], m_sub_at);
    }

    std::optional<std::size_t> entity(std::size_t i, std::size_t end) {
        auto semi = m_doc.find(';', i);
        if (semi == std::string_view::npos || semi >= end || semi - i > 10)
            return std::nullopt;
        auto name = m_doc.substr(i + 1, semi - i - 1);
        char c = 0;
        if (name == "lt") c = '<';
        else if (name == "gt") c = '>';
        else if (name == "amp") c = '&';
        else if (name == "quot") c = '"';
        else if (name == "apos") c = '\'';
        else if (name == "nbsp") c = ' ';
        else if (name.size() > 1 && name[0] == '#') {
            try {
                long v = name[1] == 'x' || name[1] == 'X'
                    ? std::stol(std::string(name.substr(2)), nullptr, 16)
                    : std::stol(std::string(name.substr(1)));
                if (v <= 0 || v > 127)
                    return std::nullopt;
                c = static_cast<char>(v);
            } catch (const std::exception &) {
                return std::nullopt;
            }
        } else {
            return std::nullopt;
        }
        put(c, i);
        return semi + 1;
    }

    void put(char c, std::size_t at) {
        if (m_in_sub) {
            m_sub_text += c;
            return;
        }
        if (c == '\n') {
            flush();
            m_lines.emplace_back();
            m_at_line_start = true;
            m_gap = true;
            return;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            flush();
            if (m_at_line_start && c != '\r') {
                auto & ind = m_lines.back().indent;
                ind = c == '\t' ? ind + 8 - ind % 8 : ind + 1;
            }
            m_gap = true;
            return;
        }
        m_at_line_start = false;
        if (c == '|' || is_bracket(c)) {
            flush();
            start(at);
            m_buf.text = c;
            flush();
            return;
        }
        if (m_has_buf && m_buf.state == m_state) {
            m_buf.text += c;
            return;
        }
        flush();
        start(at);
        m_buf.text = c;
    }

    void start(std::size_t at) {
        m_buf = Scanned{};
        m_buf.state = m_state;
        m_buf.joined = !m_gap;
        std::tie(m_buf.line, m_buf.column) = m_pos.at(at);
        m_has_buf = true;
    }

    void flush() {
        if (!m_has_buf)
            return;
        m_lines.back().tokens.push_back(std::move(m_buf));
        m_has_buf = false;
        m_gap = false;
    }

    std::string_view m_doc;
    const Positions & m_pos;
    ExtractionStats & m_stats;
    std::vector<ScanLine> m_lines;
    ScanState m_state = ScanState::Default;
    Scanned m_buf;
    bool m_has_buf = false;
    bool m_gap = true;
    bool m_at_line_start = true;
    bool m_in_sub = false;
    std::string m_sub_text;
    std::size_t m_sub_at = 0;
};

std::string line_text(const ScanLine & l) {
    std::string out;
    for (auto & t : l.tokens) {
        if (!out.empty() && !t.joined)
            out += ' ';
        out += t.text;
    }
    return out;
}

RawToken classify(const Scanned & s, ExtractionStats & stats) {
    RawToken t;
    t.line = s.line;
    t.column = s.column;
    t.joined = s.joined;
    if (s.opt) {
        t.kind = RawToken::Kind::Metasymbol;
        t.text = "opt-subscript";
        return t;
    }
    auto cls = token_class(s.text);
    ++stats.decisions[static_cast<int>(cls)][static_cast<int>(s.state)];
    if (s.state == ScanState::Default && cls != TokenClass::Other)
        ++stats.arbitrary_decisions;
    t.kind = decide(cls, s.state);
    t.text = s.text;
    return t;
}

bool continues(const RawAlternative & line) {
    auto & f = line.front();
    return f.kind == RawToken::Kind::Metasymbol
        && (f.text == "|" || f.text == ")" || f.text == "]" || f.text == "}");
}

} // namespace

//===========================================================================
bool RawGrammar::defines(std::string_view name) const {
    return std::any_of(entries.begin(), entries.end(), [&](auto & e) { return e.lhs == name; });
}

RawEntry & RawGrammar::entry(const std::string & lhs) {
    for (auto & e : entries)
        if (e.lhs == lhs)
            return e;
    entries.push_back(RawEntry{lhs, {}, false});
    return entries.back();
}

//===========================================================================
RawGrammar preprocess(std::string_view markup, ExtractionStats & stats) {
    static const std::regex header(R"(^([A-Za-z_][A-Za-z0-9_]*):(\s*one\s+of)?$)");

    Positions pos(markup);
    auto doc = lower(markup);
    RawGrammar raw;
    bool any_block = false;

    for (std::size_t at = doc.find("<pre"); at != std::string::npos; at = doc.find("<pre", at)) {
        auto open_end = doc.find('>', at);
        auto [line, col] = pos.at(at);
        if (open_end == std::string::npos)
            throw SyntaxError("unterminated <pre> tag", line, col);
        auto close = doc.find("</pre>", open_end);
        if (close == std::string::npos)
            throw SyntaxError("unterminated <pre> block", line, col);
        any_block = true;

        BlockScanner scanner(markup, pos, stats);
        auto lines = scanner.scan(open_end + 1, close);
        at = close + 6;

        std::optional<std::size_t> current;
        std::size_t alt_indent = 0;
        std::size_t alts_here = 0;
        bool one_of = false;
        for (auto & l : lines) {
            if (l.tokens.empty())
                continue;
            std::smatch m;
            auto text = line_text(l);
            if (l.indent == 0 && std::regex_match(text, m, header)) {
                raw.entry(m[1].str());
                for (std::size_t k = 0; k < raw.entries.size(); ++k)
                    if (raw.entries[k].lhs == m[1].str())
                        current = k;
                one_of = m[2].matched;
                if (one_of)
                    raw.entries[*current].one_of = true;
                alts_here = 0;
                continue;
            }
            if (!current)
                continue;

            auto & entry = raw.entries[*current];
            RawAlternative toks;
            for (auto & s : l.tokens)
                toks.push_back(classify(s, stats));

            if (one_of) {
                for (auto & t : toks)
                    if (t.text != "opt-subscript")
                        entry.alternatives.push_back({t});
                continue;
            }
            if (alts_here > 0) {
                bool deeper = l.indent > alt_indent;
                if (deeper || continues(toks)) {
                    if (!deeper)
                        ++stats.indentation;
                    auto & last = entry.alternatives.back();
                    last.insert(last.end(), toks.begin(), toks.end());
                    continue;
                }
            }
            if (l.indent == 0)
                ++stats.indentation;
            if (alts_here == 0)
                alt_indent = l.indent;
            entry.alternatives.push_back(std::move(toks));
            ++alts_here;
        }
    }
    if (!any_block)
        throw Error("no <pre> block found");
    return raw;
}

} // namespace gconv
