#pragma once

#include "gconv/error.hpp"
#include "gconv/grammar.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gconv {

enum class SemanticsClass { Preserving, Increasing, Decreasing, Revising };

std::string_view class_name(SemanticsClass c);

struct Scope {
    enum class Kind { Global, Nonterminal, Label };

    Kind kind = Kind::Global;
    std::string name;

    static Scope global() { return {}; }
    static Scope in(std::string nonterminal) { return {Kind::Nonterminal, std::move(nonterminal)}; }
    static Scope labeled(std::string label) { return {Kind::Label, std::move(label)}; }

    friend bool operator==(const Scope &, const Scope &) = default;
};

std::string to_text(const Scope & s);

// One operator application. Which argument lists are filled depends on the
// operator:
//   names        renameN unlabel reroot unfold fold inline distribute
//                deyaccify eliminate vertical horizontal undefine unite
//   exprs        massage factor widen narrow replace (x then y)
//   productions  extract chain yaccify introduce import addV removeV addH
//                removeH appear disappear inject project upgrade downgrade
//                define redefine
struct TransformationStep {
    std::string op;
    std::vector<std::string> names;
    std::vector<Expression> exprs;
    std::vector<Production> productions;
    Scope scope;
    std::size_t line = 0;
};

// Failed operator precondition; the input grammar is left untouched.
class PreconditionViolation : public Error {
public:
    PreconditionViolation(std::string op, std::string diagnostic)
        : Error(op + ": " + diagnostic), m_op(std::move(op)), m_diagnostic(std::move(diagnostic)) {}

    const std::string & op() const { return m_op; }
    const std::string & diagnostic() const { return m_diagnostic; }

private:
    std::string m_op;
    std::string m_diagnostic;
};

// All operator names accepted by apply, including the `rename` alias.
const std::vector<std::string> & operator_names();
bool is_operator(std::string_view op);

// True when the operator's plain arguments are nonterminal names or labels
// rather than expressions.
bool takes_names(std::string_view op);

// Throws std::invalid_argument for an unknown operator.
SemanticsClass classify(std::string_view op);
SemanticsClass classify(const TransformationStep & step);

// Argument counts, scope and marker placement against the operator's
// signature. Throws PreconditionViolation.
void check_arguments(const TransformationStep & step);

Grammar apply(const TransformationStep & step, const Grammar & g);

// Step text as it would appear in a script, without the trailing ';'.
std::string to_text(const TransformationStep & step);

// Disjunctive normal form: choices inside sequences are pulled outwards.
// Choices under repetitions and selectors stay where they are. Each
// alternative is normalized.
std::vector<Expression> dnf(const Expression & e);

} // namespace gconv
