#include "gconv/xbgf.hpp"

#include "gconv/bgf_text.hpp"
#include "gconv/normalize.hpp"
#include "xbgf_support.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace gconv {

namespace {

using Impl = Grammar (*)(const TransformationStep &, Grammar);

struct Signature {
    std::size_t names = 0;
    bool any_names = false;   // reroot takes a list
    std::size_t exprs = 0;
    std::size_t productions = 0;
    bool many_productions = false;
    bool scoped = false;
    SemanticsClass cls = SemanticsClass::Preserving;
    Impl impl = nullptr;
};

const std::map<std::string, Signature, std::less<>> & table() {
    using namespace detail;
    using C = SemanticsClass;
    static const std::map<std::string, Signature, std::less<>> t = {
        {"rename", {2, false, 0, 0, false, false, C::Preserving, op_rename}},
        {"renameN", {2, false, 0, 0, false, false, C::Preserving, op_rename}},
        {"unlabel", {1, false, 0, 0, false, false, C::Preserving, op_unlabel}},
        {"reroot", {0, true, 0, 0, false, false, C::Preserving, op_reroot}},
        {"unfold", {1, false, 0, 0, false, true, C::Preserving, op_unfold}},
        {"fold", {1, false, 0, 0, false, true, C::Preserving, op_fold}},
        {"inline", {1, false, 0, 0, false, false, C::Preserving, op_inline}},
        {"extract", {0, false, 0, 1, false, true, C::Preserving, op_extract}},
        {"chain", {0, false, 0, 1, false, false, C::Preserving, op_chain}},
        {"massage", {0, false, 2, 0, false, true, C::Preserving, op_massage}},
        {"distribute", {1, false, 0, 0, false, false, C::Preserving, op_distribute}},
        {"factor", {0, false, 2, 0, false, true, C::Preserving, op_factor}},
        {"deyaccify", {1, false, 0, 0, false, false, C::Preserving, op_deyaccify}},
        {"yaccify", {0, false, 0, 2, false, false, C::Preserving, op_yaccify}},
        {"eliminate", {1, false, 0, 0, false, false, C::Preserving, op_eliminate}},
        {"introduce", {0, false, 0, 1, true, false, C::Preserving, op_introduce}},
        {"import", {0, false, 0, 1, true, false, C::Preserving, op_import}},
        {"vertical", {1, false, 0, 0, false, false, C::Preserving, op_vertical}},
        {"horizontal", {1, false, 0, 0, false, false, C::Preserving, op_horizontal}},
        {"addV", {0, false, 0, 1, false, false, C::Increasing, op_addV}},
        {"addH", {0, false, 0, 1, false, false, C::Increasing, op_addH}},
        {"appear", {0, false, 0, 1, false, false, C::Increasing, op_appear}},
        {"widen", {0, false, 2, 0, false, true, C::Increasing, op_widen}},
        {"upgrade", {0, false, 0, 2, false, false, C::Increasing, op_upgrade}},
        {"unite", {2, false, 0, 0, false, false, C::Increasing, op_unite}},
        {"removeV", {0, false, 0, 1, false, false, C::Decreasing, op_removeV}},
        {"removeH", {0, false, 0, 1, false, false, C::Decreasing, op_removeH}},
        {"disappear", {0, false, 0, 1, false, false, C::Decreasing, op_disappear}},
        {"narrow", {0, false, 2, 0, false, true, C::Decreasing, op_narrow}},
        {"downgrade", {0, false, 0, 2, false, false, C::Decreasing, op_downgrade}},
        {"define", {0, false, 0, 1, true, false, C::Revising, op_define}},
        {"undefine", {1, false, 0, 0, false, false, C::Revising, op_undefine}},
        {"redefine", {0, false, 0, 1, true, false, C::Revising, op_redefine}},
        {"inject", {0, false, 0, 1, false, false, C::Revising, op_inject}},
        {"project", {0, false, 0, 1, false, false, C::Revising, op_project}},
        {"replace", {0, false, 2, 0, false, true, C::Revising, op_replace}},
    };
    return t;
}

const Signature & signature(std::string_view op) {
    auto it = table().find(op);
    if (it == table().end())
        throw std::invalid_argument("unknown operator " + std::string(op));
    return it->second;
}

void check_arguments(const TransformationStep & s, const Signature & sig) {
    auto bad = [&](const std::string & what) { throw PreconditionViolation(s.op, what); };
    if (!sig.any_names && s.names.size() != sig.names)
        bad("expects " + std::to_string(sig.names) + " name argument(s)");
    if (s.exprs.size() != sig.exprs)
        bad("expects " + std::to_string(sig.exprs) + " expression argument(s)");
    if (sig.many_productions ? s.productions.empty() : s.productions.size() != sig.productions)
        bad("expects " + std::string(sig.many_productions ? "at least " : "")
            + std::to_string(sig.productions) + " production argument(s)");
    if (!sig.scoped && s.scope.kind != Scope::Kind::Global)
        bad("does not take a scope");
    for (auto & e : s.exprs)
        if (count_markers(e))
            bad("markers are only allowed in production arguments");
}

} // namespace

void check_arguments(const TransformationStep & step) {
    check_arguments(step, signature(step.op));
}

namespace {

void product(const std::vector<std::vector<Expression>> & factors, std::size_t k,
             std::vector<Expression> & prefix, std::vector<Expression> & out) {
    if (k == factors.size()) {
        out.push_back(normalize(sequence(prefix)));
        return;
    }
    for (auto & f : factors[k]) {
        prefix.push_back(f);
        product(factors, k + 1, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

//===========================================================================
std::string_view class_name(SemanticsClass c) {
    switch (c) {
    case SemanticsClass::Preserving: return "preserving";
    case SemanticsClass::Increasing: return "increasing";
    case SemanticsClass::Decreasing: return "decreasing";
    case SemanticsClass::Revising: return "revising";
    }
    return "?";
}

std::string to_text(const Scope & s) {
    switch (s.kind) {
    case Scope::Kind::Global: return "global";
    case Scope::Kind::Nonterminal: return "in " + s.name;
    case Scope::Kind::Label: return "in [" + s.name + "]";
    }
    return "?";
}

const std::vector<std::string> & operator_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (auto & [k, sig] : table())
            v.push_back(k);
        return v;
    }();
    return names;
}

bool is_operator(std::string_view op) {
    return table().count(op) > 0;
}

bool takes_names(std::string_view op) {
    auto & sig = signature(op);
    return sig.names > 0 || sig.any_names;
}

SemanticsClass classify(std::string_view op) {
    return signature(op).cls;
}

SemanticsClass classify(const TransformationStep & step) {
    return classify(step.op);
}

//===========================================================================
Grammar apply(const TransformationStep & step, const Grammar & g) {
    if (!is_operator(step.op))
        throw PreconditionViolation(step.op, "unknown operator");
    auto & sig = signature(step.op);
    check_arguments(step, sig);
    Grammar out = sig.impl(step, g);
    try {
        return finalize(std::move(out));
    } catch (const InvariantError & e) {
        throw PreconditionViolation(step.op, e.what());
    }
}

//===========================================================================
std::string to_text(const TransformationStep & step) {
    std::ostringstream os;
    os << step.op << '(';
    bool first = true;
    auto sep = [&]() {
        if (!first)
            os << ", ";
        first = false;
    };
    for (auto & n : step.names) {
        sep();
        os << n;
    }
    for (auto & e : step.exprs) {
        sep();
        os << to_text(e);
    }
    if (!step.productions.empty()) {
        sep();
        bool firstp = true;
        for (auto & p : step.productions) {
            if (!firstp)
                os << ' ';
            firstp = false;
            if (p.label)
                os << '[' << *p.label << "] ";
            os << p.lhs << ": " << to_text(p.rhs);
        }
    }
    if (step.scope.kind != Scope::Kind::Global) {
        sep();
        os << to_text(step.scope);
    }
    os << ')';
    return os.str();
}

//===========================================================================
std::vector<Expression> dnf(const Expression & e) {
    Expression n = normalize(e);
    switch (n.kind()) {
    case Kind::Choice: {
        std::vector<Expression> out;
        for (auto & b : n.children()) {
            auto sub = dnf(b);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    case Kind::Sequence: {
        std::vector<std::vector<Expression>> factors;
        for (auto & c : n.children())
            factors.push_back(dnf(c));
        std::vector<Expression> out, prefix;
        product(factors, 0, prefix, out);
        return out;
    }
    default:
        return {n};
    }
}

} // namespace gconv
