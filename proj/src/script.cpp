#include "gconv/script.hpp"

#include "gconv/normalize.hpp"
#include "lexer.hpp"

#include <sstream>

namespace gconv {

using detail::Tok;
using detail::TokenCursor;

namespace {

struct Arg {
    enum class Kind { Expr, Productions, Scope } kind = Kind::Expr;
    Expression expr;
    std::vector<Production> productions;
    Scope scope;
    detail::Token at;
};

bool at_scope(const TokenCursor & cur) {
    if (cur.peek().kind != Tok::Name || cur.peek().text != "in")
        return false;
    if (cur.peek(1).kind == Tok::Name)
        return cur.peek(2).is(",") || cur.peek(2).is(")");
    return cur.peek(1).is("[") && cur.peek(2).kind == Tok::Name && cur.peek(3).is("]");
}

Arg parse_arg(TokenCursor & cur) {
    Arg a;
    a.at = cur.peek();
    if (at_scope(cur)) {
        cur.next();
        a.kind = Arg::Kind::Scope;
        if (cur.accept("[")) {
            a.scope = Scope::labeled(cur.expect_name().text);
            cur.expect("]");
        } else {
            a.scope = Scope::in(cur.expect_name().text);
        }
        return a;
    }
    if (cur.at_production_start()) {
        a.kind = Arg::Kind::Productions;
        while (cur.at_production_start()) {
            std::optional<std::string> label;
            if (cur.accept("[")) {
                label = cur.expect_name().text;
                cur.expect("]");
            }
            std::string lhs = cur.expect_name().text;
            cur.expect(":");
            Expression rhs = detail::parse_expr(cur, true, true);
            a.productions.push_back(Production{label, lhs, rhs});
        }
        return a;
    }
    a.expr = detail::parse_expr(cur, true, true);
    return a;
}

TransformationStep parse_step_at(TokenCursor & cur) {
    auto & head = cur.expect_name();
    TransformationStep s;
    s.op = head.text;
    s.line = head.line;
    if (!is_operator(s.op))
        cur.fail("unknown operator " + s.op, head);
    bool names = takes_names(s.op);

    cur.expect("(");
    std::vector<Arg> args;
    if (!cur.peek().is(")")) {
        args.push_back(parse_arg(cur));
        while (cur.accept(","))
            args.push_back(parse_arg(cur));
    }
    cur.expect(")");

    for (std::size_t i = 0; i < args.size(); ++i) {
        auto & a = args[i];
        switch (a.kind) {
        case Arg::Kind::Scope:
            if (i + 1 != args.size())
                cur.fail("scope must be the last argument", a.at);
            s.scope = a.scope;
            break;
        case Arg::Kind::Productions:
            s.productions.insert(s.productions.end(), a.productions.begin(), a.productions.end());
            break;
        case Arg::Kind::Expr:
            if (names) {
                if (a.expr.kind() != Kind::Nonterminal)
                    cur.fail(s.op + " expects a name", a.at);
                s.names.push_back(a.expr.text());
            } else {
                s.exprs.push_back(a.expr);
            }
            break;
        }
    }
    try {
        check_arguments(s);
    } catch (const PreconditionViolation & e) {
        cur.fail(e.what(), head);
    }
    return s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

//===========================================================================
std::string_view phase_name(Phase p) {
    switch (p) {
    case Phase::Preparation: return "preparation";
    case Phase::Nominal: return "nominal";
    case Phase::Structural: return "structural";
    case Phase::Resolution: return "resolution";
    }
    return "?";
}

std::string_view intent_name(Intent i) {
    switch (i) {
    case Intent::None: return "none";
    case Intent::Extension: return "extension";
    case Intent::Relaxation: return "relaxation";
    case Intent::Correction: return "correction";
    }
    return "?";
}

std::vector<TransformationStep> Script::steps() const {
    std::vector<TransformationStep> out;
    for (auto & it : items)
        if (it.kind == ScriptItem::Kind::Step)
            out.push_back(it.step);
    return out;
}

//===========================================================================
Script parse_script(std::string_view text) {
    Script script;
    std::vector<ScriptItem> directives;
    std::string body;
    std::size_t lineno = 0;
    for (std::size_t start = 0; start <= text.size();) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        auto t = trim(line);
        if (!t.empty() && t.substr(0, 2) != "//")
            ++script.lines;
        if (t.empty() || t.front() != '%') {
            body += line;
            body += '\n';
            continue;
        }
        body += '\n';

        std::istringstream words{std::string(t.substr(1))};
        std::string word, value, extra;
        words >> word >> value >> extra;
        ScriptItem d;
        d.line = lineno;
        auto col = static_cast<std::size_t>(t.data() - line.data()) + 1;
        if (!extra.empty() && extra.substr(0, 2) != "//")
            throw SyntaxError("trailing text after directive", lineno, col);
        if (word == "phase") {
            d.kind = ScriptItem::Kind::Phase;
            if (value == "preparation") d.phase = Phase::Preparation;
            else if (value == "nominal") d.phase = Phase::Nominal;
            else if (value == "structural") d.phase = Phase::Structural;
            else if (value == "resolution") d.phase = Phase::Resolution;
            else throw SyntaxError("unknown phase '" + value + "'", lineno, col);
        } else if (word == "intent") {
            d.kind = ScriptItem::Kind::Intent;
            if (value == "extension") d.intent = Intent::Extension;
            else if (value == "relaxation") d.intent = Intent::Relaxation;
            else if (value == "correction") d.intent = Intent::Correction;
            else throw SyntaxError("unknown intent '" + value + "'", lineno, col);
        } else if (word == "begin-transaction" && value.empty()) {
            d.kind = ScriptItem::Kind::BeginTransaction;
        } else if (word == "end-transaction" && value.empty()) {
            d.kind = ScriptItem::Kind::EndTransaction;
        } else {
            throw SyntaxError("unknown directive '%" + word + "'", lineno, col);
        }
        directives.push_back(d);
    }

    TokenCursor cur(detail::tokenize(body));
    std::size_t next_directive = 0;
    auto flush_directives = [&](std::size_t before_line) {
        while (next_directive < directives.size() && directives[next_directive].line < before_line)
            script.items.push_back(directives[next_directive++]);
    };
    while (!cur.at_end()) {
        std::size_t start_line = cur.peek().line;
        flush_directives(start_line);
        ScriptItem item;
        item.kind = ScriptItem::Kind::Step;
        item.step = parse_step_at(cur);
        item.line = start_line;
        auto & semi = cur.expect(";");
        if (next_directive < directives.size() && directives[next_directive].line < semi.line)
            throw SyntaxError("directive inside a step", directives[next_directive].line, 1);
        script.items.push_back(std::move(item));
    }
    flush_directives(static_cast<std::size_t>(-1));
    return script;
}

TransformationStep parse_step(std::string_view text) {
    TokenCursor cur(detail::tokenize(text));
    auto s = parse_step_at(cur);
    cur.accept(";");
    if (!cur.at_end())
        cur.fail("unexpected token after step");
    return s;
}

//===========================================================================
namespace {

std::string step_message(std::size_t index, const TransformationStep & step, const std::string & what) {
    std::ostringstream os;
    os << "step " << index << " (" << step.op;
    if (step.line)
        os << ", line " << step.line;
    if (step.scope.kind != Scope::Kind::Global)
        os << ", " << to_text(step.scope);
    os << "): " << what;
    return os.str();
}

} // namespace

StepFailure::StepFailure(std::size_t index, const TransformationStep & step, const std::string & what)
    : Error(step_message(index, step, what)), m_index(index), m_op(step.op) {}

Grammar apply_script(const Script & script, Grammar g) {
    std::size_t index = 0;
    for (auto & it : script.items) {
        if (it.kind != ScriptItem::Kind::Step)
            continue;
        ++index;
        try {
            g = apply(it.step, g);
        } catch (const PreconditionViolation & e) {
            throw StepFailure(index, it.step, e.what());
        }
    }
    return g;
}

} // namespace gconv
