#pragma once

// Helpers shared by the operator implementations.

#include "gconv/xbgf.hpp"

namespace gconv::detail {

[[noreturn]] void violate(const TransformationStep & step, const std::string & what);

std::string show(const Production & p);

// Scope must name an existing nonterminal or label.
void check_scope(const TransformationStep & step, const Grammar & g);
bool in_scope(const Production & p, const Scope & scope);

// Top-down replacement of every occurrence of `pattern` in `e`. A sequence
// (choice) pattern also matches a contiguous run of items (branches) in a
// longer sequence (choice). Replaced parts are not searched again.
Expression replace_all(const Expression & e, const Expression & pattern,
                       const Expression & replacement, std::size_t & count);

// Replaces in every production in scope, except those of `skip_lhs`; each
// touched rhs is renormalized. Returns the number of replacements.
std::size_t replace_in_grammar(Grammar & g, const Expression & pattern,
                               const Expression & replacement, const Scope & scope,
                               const std::string & skip_lhs = {});

// The rhs of `name`, or a choice over its productions when vertical.
Expression definition_expr(const Grammar & g, const std::string & name);

// Production with the same lhs and normalized rhs (and label, when given).
std::optional<std::size_t> find_production(const Grammar & g, const Production & p);

// Marker handling for marked production arguments.
const Expression * marked_part(const Expression & e);
Expression substitute_marker(const Expression & e, const Expression & with);
Expression unmark(const Expression & e);
bool marker_is_choice_branch(const Expression & e);

void require_single_marker(const TransformationStep & step, const Production & p);
void require_no_marker(const TransformationStep & step, const Production & p);

// Inserts productions right after the last production of their lhs, or at
// the end when the lhs is new.
void insert_after_definition(Grammar & g, const std::vector<Production> & ps);

// Replaces the productions of `name` with `ps`, at the position of the
// first old production.
void replace_definition(Grammar & g, const std::string & name, const std::vector<Production> & ps);

void remove_definition(Grammar & g, const std::string & name);

bool fresh(const Grammar & g, const std::string & name);

// Operator implementations.
Grammar op_rename(const TransformationStep &, Grammar);
Grammar op_unlabel(const TransformationStep &, Grammar);
Grammar op_reroot(const TransformationStep &, Grammar);
Grammar op_unfold(const TransformationStep &, Grammar);
Grammar op_fold(const TransformationStep &, Grammar);
Grammar op_inline(const TransformationStep &, Grammar);
Grammar op_extract(const TransformationStep &, Grammar);
Grammar op_chain(const TransformationStep &, Grammar);
Grammar op_massage(const TransformationStep &, Grammar);
Grammar op_distribute(const TransformationStep &, Grammar);
Grammar op_factor(const TransformationStep &, Grammar);
Grammar op_deyaccify(const TransformationStep &, Grammar);
Grammar op_yaccify(const TransformationStep &, Grammar);
Grammar op_eliminate(const TransformationStep &, Grammar);
Grammar op_introduce(const TransformationStep &, Grammar);
Grammar op_import(const TransformationStep &, Grammar);
Grammar op_vertical(const TransformationStep &, Grammar);
Grammar op_horizontal(const TransformationStep &, Grammar);

Grammar op_addV(const TransformationStep &, Grammar);
Grammar op_removeV(const TransformationStep &, Grammar);
Grammar op_addH(const TransformationStep &, Grammar);
Grammar op_removeH(const TransformationStep &, Grammar);
Grammar op_appear(const TransformationStep &, Grammar);
Grammar op_disappear(const TransformationStep &, Grammar);
Grammar op_inject(const TransformationStep &, Grammar);
Grammar op_project(const TransformationStep &, Grammar);
Grammar op_widen(const TransformationStep &, Grammar);
Grammar op_narrow(const TransformationStep &, Grammar);
Grammar op_upgrade(const TransformationStep &, Grammar);
Grammar op_downgrade(const TransformationStep &, Grammar);
Grammar op_unite(const TransformationStep &, Grammar);
Grammar op_define(const TransformationStep &, Grammar);
Grammar op_undefine(const TransformationStep &, Grammar);
Grammar op_redefine(const TransformationStep &, Grammar);
Grammar op_replace(const TransformationStep &, Grammar);

} // namespace gconv::detail
