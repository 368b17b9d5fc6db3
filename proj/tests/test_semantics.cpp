#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sessterm/congruence.hpp"
#include "sessterm/semantics.hpp"
#include "sessterm/source.hpp"

using namespace sessterm;

namespace {
SProcPtr sp(const std::string& proc_text) {
  return parse("calculus s\nprocess " + proc_text + "\n").sproc;
}
WProcPtr wp(const std::string& proc_text) {
  return parse("calculus w\nprocess " + proc_text + "\n").wproc;
}
DProcPtr dp(const std::string& proc_text) {
  return parse("calculus dill\nprocess " + proc_text + "\n").dproc;
}
}  // namespace

TEST_CASE("nil has no successors") {
  CHECK(reduce_s(sp("0")).empty());
  CHECK(lts_w(wp("0")).empty());
  CHECK(reduce_dill(dp("0")).empty());
}

TEST_CASE("divergent server: one successor congruent to itself") {
  auto p = sp("new x y.( y!w.0 | un x(z). y!w.0 )");
  auto succs = reduce_s(p);
  REQUIRE(succs.size() == 1);
  CHECK(congruent_s(succs[0], p));
}

TEST_CASE("unrestricted communication keeps the server") {
  auto p = sp("new x y.( un x(z).0 | y!w.0 )");
  auto succs = reduce_s_tagged(p);
  REQUIRE(succs.size() == 1);
  CHECK(succs[0].first == "R-UnCom");
  CHECK(congruent_s(succs[0].second, sp("new x y. un x(z).0")));
}

TEST_CASE("linear communication consumes the input") {
  auto p = sp("new x y.( x!v. 0 | lin y(z). z!u.0 )");
  auto succs = reduce_s_tagged(p);
  REQUIRE(succs.size() == 1);
  CHECK(succs[0].first == "R-LinCom");
  CHECK(congruent_s(succs[0].second, sp("v!u.0")));
}

TEST_CASE("no communication without a shared restriction") {
  // free-subject prefixes never synchronize in this calculus
  auto p = sp("x!v.0 | lin x(z).0");
  CHECK(reduce_s(p).empty());
}

TEST_CASE("communication under extra restrictions (via congruence)") {
  auto p = sp("new x y.( new a b. x!a. 0 | lin y(z). 0 )");
  auto succs = reduce_s(p);
  REQUIRE(succs.size() == 1);
  CHECK(congruent_s(succs[0], sp("0")));
}

TEST_CASE("w server input transition with caller-supplied values") {
  auto p = wp("!x(y,z).0");
  auto succs = lts_w_input(p, Name("x"), Name("v"), Name("u"));
  REQUIRE(succs.size() == 1);
  CHECK(alpha_eq(succs[0], wp("!x(y,z).0 | 0")));
}

TEST_CASE("w tau through a restriction with a server") {
  auto p = wp("new c.( c!(w,u).0 | !c(y,z).0 )");
  auto succs = tau_w(p);
  REQUIRE(succs.size() == 1);
  CHECK(congruent_w(succs[0], wp("new c.( 0 | !c(y,z).0 | 0 )")));
}

TEST_CASE("w bound output label extrudes the restriction") {
  auto p = wp("new b.( x!(b,u).0 )");
  auto trans = lts_w(p);
  REQUIRE(trans.size() == 1);
  CHECK(trans[0].first.kind == WLabel::Kind::BoundOut);
  CHECK(trans[0].first.extruded == NameSet{Name("b")});
  CHECK(trans[0].first.subject == Name("x"));
}

TEST_CASE("w output subject under restriction yields no visible label") {
  auto p = wp("new x.( x!(a,b).0 )");
  CHECK(lts_w(p).empty());
}

TEST_CASE("dill forwarder elimination") {
  auto p = dp("new x.( fwd x y | x(z).0 )");
  auto succs = reduce_dill_tagged(p);
  REQUIRE(succs.size() == 1);
  CHECK(succs[0].first == "Rfwd");
  CHECK(congruent_d(succs[0].second, dp("y(z).0")));
}

TEST_CASE("dill output does not meet case") {
  auto p = dp("x!(y).0 | x.case(0,0)");
  CHECK(reduce_dill(p).empty());
}

TEST_CASE("dill replicated input") {
  auto p = dp("new x.( x!(v).(0|0) | !x(z).0 )");
  auto succs = reduce_dill_tagged(p);
  REQUIRE(succs.size() == 1);
  CHECK(succs[0].first == "R!");
  CHECK(congruent_d(succs[0].second, dp("new x.( 0|0 | 0 | !x(z).0 )")));
}

TEST_CASE("dill selection left and right") {
  auto l = dp("x.inl;0 | x.case(y!(k).fwd k a, 0)");
  auto ls = reduce_dill_tagged(l);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0].first == "RL");
  CHECK(congruent_d(ls[0].second, dp("y!(k).fwd k a")));

  auto r = dp("x.inr;0 | x.case(y!(k).fwd k a, 0)");
  auto rs = reduce_dill_tagged(r);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].first == "RR");
  CHECK(congruent_d(rs[0].second, dp("0")));
}

TEST_CASE("dill communication keeps cut annotations decomposable") {
  auto p = dp("new x : !1 * 1. ( x!(v).( !v(q).0 | 0 ) | x(z). fwd z w )");
  auto succs = reduce_dill(p);
  REQUIRE(succs.size() == 1);
  // after the step the fresh cut carries !1 and x carries 1
  std::string shown = show(succs[0]);
  CHECK(shown.find("!1") != std::string::npos);
}

TEST_CASE("run_bounded is deterministic and counts steps") {
  auto diverging = sp("new x y.( y!w.0 | un x(z). y!w.0 )");
  Trace t = run_bounded(diverging, 100);
  CHECK(t.verdict == Verdict::BudgetExhausted);
  CHECK(t.steps.size() == 100);

  Trace t0 = run_bounded(sp("0"), 5);
  CHECK(t0.verdict == Verdict::NormalForm);
  CHECK(t0.steps.empty());

  Trace t1 = run_bounded(diverging, 100);
  REQUIRE(t1.steps.size() == t.steps.size());
  for (size_t i = 0; i < t.steps.size(); ++i) CHECK(t.steps[i].term == t1.steps[i].term);
}

TEST_CASE("congruence is preserved along reduction of congruent terms") {
  auto p = sp("new x y.( un x(z).0 | y!w.0 ) | 0");
  auto q = sp("new a b.( b!w.0 | un a(z).0 )");
  REQUIRE(congruent_s(p, q));
  auto sp_ = reduce_s(p);
  auto sq_ = reduce_s(q);
  REQUIRE(sp_.size() == sq_.size());
  for (size_t i = 0; i < sp_.size(); ++i) {
    bool any = false;
    for (size_t j = 0; j < sq_.size(); ++j)
      if (congruent_s(sp_[i], sq_[j])) any = true;
    CHECK(any);
  }
}
