#include <doctest.h>

#include "arsg/error.hpp"
#include "arsg/annotation.hpp"
#include "support.hpp"

using namespace arsg;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

ReduceRequest first_reduce() { return testing::trade_script()[0].reduce; }

}  // namespace

TEST_SUITE("annotation") {
  TEST_CASE("session lifecycle") {
    auto s = testing::trade_session();
    CHECK(s.leaves().size() == 8);
    auto a = s.legal_actions();
    CHECK(a.shift);
    CHECK(a.reduce);
    CHECK_FALSE(a.undo);
    CHECK_FALSE(a.finalize);
    CHECK(code_of([&] { s.undo(); }) == ErrorCode::NothingToUndo);
    CHECK(code_of([&] { s.finalize(); }) == ErrorCode::NotReducedToRoot);

    const auto before = s.machine().state();
    s.reduce(first_reduce());
    CHECK(s.events().size() == 1);
    CHECK(s.machine().stack().front()->dre == "good development");
    s.undo();
    CHECK(s.events().empty());
    CHECK(s.machine().state() == before);

    testing::run_script(s, testing::trade_script());
    CHECK(s.legal_actions().finalize);
    CHECK_FALSE(s.legal_actions().shift);
    auto log = s.finalize();
    CHECK(s.status() == SessionStatus::Finalized);
    CHECK(log.root->dre == "development outlook");
    CHECK(code_of([&] { s.shift(); }) == ErrorCode::SessionClosed);
    CHECK(code_of([&] { s.finalize(); }) == ErrorCode::SessionClosed);
  }

  TEST_CASE("decision counts") {
    auto s = testing::trade_session();
    testing::run_script(s, testing::trade_script());
    std::size_t shifts = 0, reduces = 0;
    for (const auto& e : s.events()) (e.kind == Direction::Shift ? shifts : reduces)++;
    const std::size_t n = s.leaves().size();
    CHECK(reduces == n - 1);
    CHECK(2 + shifts + s.machine().state().auto_shifts == n);
  }

  TEST_CASE("incomplete reductions") {
    auto s = testing::trade_session();
    auto r = first_reduce();
    auto no_roles = r;
    no_roles.left_role.reset();
    CHECK(code_of([&] { s.reduce(no_roles); }) == ErrorCode::IncompleteReduce);
    auto ss = r;
    ss.left_role = Role::Satellite;
    ss.right_role = Role::Satellite;
    CHECK(code_of([&] { s.reduce(ss); }) == ErrorCode::IncompleteReduce);
    auto no_rre = r;
    no_rre.rre.reset();
    CHECK(code_of([&] { s.reduce(no_rre); }) == ErrorCode::IncompleteReduce);
    auto head = r;
    head.head = "no such relation";
    CHECK(code_of([&] { s.reduce(head); }) == ErrorCode::IncompleteReduce);
    auto happy = r;
    happy.happy = 3;
    CHECK(code_of([&] { s.reduce(happy); }) == ErrorCode::IncompleteReduce);
    CHECK(s.events().empty());
  }

  TEST_CASE("illegal shift and abandon") {
    auto s = testing::trade_session();
    for (int i = 0; i < 6; ++i) s.shift();
    CHECK(code_of([&] { s.shift(); }) == ErrorCode::IllegalShift);
    s.abandon();
    CHECK(s.status() == SessionStatus::Abandoned);
    CHECK(code_of([&] { s.undo(); }) == ErrorCode::SessionClosed);
  }

  TEST_CASE("no lexical cores") {
    const auto& e = testing::trade_text();
    auto edus = segment("nothing known here.", {});
    CHECK(code_of([&] { AnnotationSession::create("x", "x", edus, e.dkb, e.cues); }) == ErrorCode::NoLexicalCores);
  }

  TEST_CASE("reduce equations") {
    ReduceRequest r;
    r.head = "H";
    r.rre = "Joint";
    r.happy = -1;
    auto eqs = ReduceRequest{r}.equations;
    CHECK(eqs.empty());
    auto out = AnnotationSession::reduce_equations(r);
    auto count = [&](const std::string& t) {
      return std::ranges::count_if(out, [&](const AttributeEquation& e) { return e.target == t; });
    };
    CHECK(count("cue") == 1);
    CHECK(count("punctuation") == 1);
    CHECK(count("rre") == 1);
    CHECK(count("happy") == 1);
    r.equations = {{"punctuation", ConstRhs{std::string("none")}}};
    out = AnnotationSession::reduce_equations(r);
    auto it = std::ranges::find_if(out, [](const AttributeEquation& e) { return e.target == "punctuation"; });
    CHECK(it->rhs == EquationRhs{ConstRhs{std::string("none")}});
    CHECK(count("punctuation") == 1);
  }

  TEST_CASE("hints from a grammar") {
    auto first = testing::trade_session();
    testing::run_script(first, testing::trade_script());
    auto g = std::make_shared<const Grammar>(learn(std::vector{first.finalize()}));

    const auto& e = testing::trade_text();
    SessionOptions o;
    o.grammar = g;
    auto s = AnnotationSession::create("t2", "trade", e.edus, e.dkb, e.cues, e.overrides, o);
    for (const auto& step : testing::trade_script()) {
      REQUIRE(s.hint());
      CHECK(*s.hint() == (step.shift ? Direction::Shift : Direction::Reduce));
      testing::run_script(s, {step});
    }
    CHECK(s.events().back().hint == Direction::Reduce);
  }
}
