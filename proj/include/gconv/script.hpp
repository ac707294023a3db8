#pragma once

#include "gconv/xbgf.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gconv {

enum class Phase { Preparation, Nominal, Structural, Resolution };
enum class Intent { None, Extension, Relaxation, Correction };

std::string_view phase_name(Phase p);
std::string_view intent_name(Intent i);

struct ScriptItem {
    enum class Kind { Step, Phase, BeginTransaction, EndTransaction, Intent };

    Kind kind = Kind::Step;
    TransformationStep step;
    Phase phase = Phase::Preparation;
    Intent intent = Intent::None;
    std::size_t line = 0;
};

// Script file:
//
//   // comment
//   %phase nominal
//   chain(ClassDeclaration: NormalClassDeclaration);
//   %begin-transaction
//   ...
//   %end-transaction
//   %phase resolution
//   %intent extension
//   addV(ClassDeclaration: EnumDeclaration);
//
// Directives occupy a whole line. Steps are `op(arg, ...);` and may span
// lines. Productions are written `[label]? Name: rhs`; several productions
// in one argument need no separator. A scope is a trailing `in Name` or
// `in [label]` argument.
struct Script {
    std::vector<ScriptItem> items;
    std::size_t lines = 0; // non-blank, non-comment lines

    std::vector<TransformationStep> steps() const;
};

Script parse_script(std::string_view text);

// A single step, trailing ';' optional.
TransformationStep parse_step(std::string_view text);

// A step failed inside a script; carries its position.
class StepFailure : public Error {
public:
    StepFailure(std::size_t index, const TransformationStep & step, const std::string & what);

    std::size_t index() const { return m_index; }
    const std::string & op() const { return m_op; }

private:
    std::size_t m_index;
    std::string m_op;
};

// Applies every step in order, ignoring directives.
Grammar apply_script(const Script & script, Grammar g);

} // namespace gconv
