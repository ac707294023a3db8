#include "doctest.h"

#include "gconv/bgf_text.hpp"
#include "gconv/error.hpp"
#include "gconv/script.hpp"

using namespace gconv;

TEST_CASE("script items: directives and multi-line steps") {
    auto s = parse_script(R"(// comment
chain(
 S: T );
%phase nominal
%begin-transaction
renameN(A, B);
%end-transaction
%phase resolution
%intent correction
inject(S: A <";">);
)");
    REQUIRE(s.items.size() == 8);
    CHECK(s.items[0].kind == ScriptItem::Kind::Step);
    CHECK(s.items[0].step.op == "chain");
    CHECK(s.items[0].step.productions[0].lhs == "S");
    CHECK(s.items[1].kind == ScriptItem::Kind::Phase);
    CHECK(s.items[1].phase == Phase::Nominal);
    CHECK(s.items[2].kind == ScriptItem::Kind::BeginTransaction);
    CHECK(s.items[4].kind == ScriptItem::Kind::EndTransaction);
    CHECK(s.items[6].kind == ScriptItem::Kind::Intent);
    CHECK(s.items[6].intent == Intent::Correction);
    CHECK(s.steps().size() == 3);
    CHECK(s.lines == 9);
}

TEST_CASE("step arguments by operator") {
    auto names = parse_step("renameN(A, B)");
    CHECK(names.names == std::vector<std::string>{"A", "B"});
    auto exprs = parse_step("widen(A, A*, in S);");
    CHECK(exprs.exprs == std::vector<Expression>{nonterminal("A"), star(nonterminal("A"))});
    CHECK(exprs.scope == Scope::in("S"));
    auto label = parse_step("replace(A, B, in [l]);");
    CHECK(label.scope == Scope::labeled("l"));
    auto prods = parse_step("yaccify(L: A L: L \",\" A);");
    REQUIRE(prods.productions.size() == 2);
    CHECK(prods.productions[1].rhs == parse_expression("L \",\" A"));
    auto labeled = parse_step("addV([new] S: A | B);");
    CHECK(labeled.productions[0].label == std::optional<std::string>("new"));
    CHECK(labeled.productions[0].rhs == parse_expression("A | B"));
}

TEST_CASE("steps print back as script text") {
    for (auto text : {"renameN(A, B)", "widen(A, A*, in S)", "addV(S: A | B)", "replace(A, B, in [l])"}) {
        auto s = parse_step(text);
        CHECK(parse_step(to_text(s)).op == s.op);
        CHECK(to_text(parse_step(to_text(s))) == to_text(s));
    }
}

TEST_CASE("malformed scripts") {
    CHECK_THROWS_AS(parse_script("frobnicate(A);"), SyntaxError);
    CHECK_THROWS_AS(parse_script("renameN(A);"), SyntaxError);
    CHECK_THROWS_AS(parse_script("inline(A, in S);"), SyntaxError);
    CHECK_THROWS_AS(parse_script("widen(<A>, A*);"), SyntaxError);
    CHECK_THROWS_AS(parse_script("renameN(A, B)"), SyntaxError);
    CHECK_THROWS_AS(parse_script("%phase sideways"), SyntaxError);
    CHECK_THROWS_AS(parse_script("%intent bogus"), SyntaxError);
}

TEST_CASE("apply_script runs steps in order and names the failing one") {
    auto g = parse_grammar("S:\n        A\nA:\n        \"a\"\n");
    auto out = apply_script(parse_script("renameN(A, B);\nrenameN(B, C);\n"), g);
    CHECK(out == parse_grammar("S:\n        C\nC:\n        \"a\"\n"));
    try {
        apply_script(parse_script("renameN(A, B);\ninline(A);\n"), g);
        FAIL("no error");
    } catch (const StepFailure & e) {
        CHECK(e.index() == 2); // counted from 1
        CHECK(e.op() == "inline");
    }
}
