#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "sessterm/s2w.hpp"
#include "sessterm/semantics.hpp"

using namespace sessterm;
using namespace sessterm::testing;

namespace {

const char* kServerClient =
    "calculus s\n"
    "process new x y.( un x(z).0 | y!w.0 )\n"
    "types w:end, x:srv end, y:cli end\n";

const char* kDivergent =
    "calculus s\n"
    "process new x y.( y!w.0 | un x(z). y!w.0 )\n"
    "types w:end, x:srv end, y:cli end\n";

const char* kTwoStep =
    "calculus s\n"
    "process new x y.( lin x(z). un z(w).0 | new s t. y!s.( new u v. t!u.0 | 0 ) "
    ")\n"
    "types x : lin ?(srv end).end, s : srv end, u : end\n";

SDerivPtr derive(const SourceFile& f) { return check_s(s_ctx(f), f.sproc); }

}  // namespace

TEST_CASE("type translation") {
  LevelAssignment l{{Name("x"), 3}, {Name("y"), 1}};
  CHECK(translate_type_s2w(st_end(), l, Name("x")) == wt_unit());
  CHECK(translate_type_s2w(st_server(st_end()), l, Name("y")) ==
        wt_srv(1, wt_unit()));
  CHECK(translate_type_s2w(st_recv(st_end(), st_end()), l, Name("x")) ==
        wt_in(3, wt_unit(), wt_unit()));
  // continuation keeps the carrier's level
  CHECK(translate_type_s2w(st_recv(st_end(), st_send(st_end(), st_end())), l,
                           Name("x")) ==
        wt_in(3, wt_unit(), wt_out(3, wt_unit(), wt_unit())));
}

TEST_CASE("nil translates to nil with no constraints") {
  SourceFile f = parse("calculus s\nprocess 0\n");
  auto t = translate_judgment_s2w(derive(f));
  CHECK(std::holds_alternative<WNil>(t.proc->node));
  CHECK(t.constraints.empty());
}

TEST_CASE("server-client translation shape") {
  SourceFile f = parse(kServerClient);
  auto t = translate_judgment_s2w(derive(f));
  // new c.( !c(z,u).0 | c!(w,u').0 )
  const auto& res = std::get<WRes>(t.proc->node);
  const auto& par = std::get<WPar>(res.body->node);
  const auto& srv = std::get<WServer>(par.left->node);
  const auto& out = std::get<WOutput>(par.right->node);
  CHECK(srv.subject == res.name);
  CHECK(out.subject == res.name);
  CHECK(out.payload1 == Name("w"));
  // the fresh unit payload is recorded in the translated context
  bool unit_in_ctx = false;
  for (const auto& [n, e] : t.context.entries)
    if (n == out.payload2 && is_unit(e.type)) unit_in_ctx = true;
  CHECK(unit_in_ctx);
}

TEST_CASE("divergent process translation shape") {
  SourceFile f = parse(kDivergent);
  auto t = translate_judgment_s2w(derive(f));
  // new c.( c!(w,u).0 | !c(z,u'). c!(w,u'').0 )
  const auto& res = std::get<WRes>(t.proc->node);
  const auto& par = std::get<WPar>(res.body->node);
  CHECK(std::holds_alternative<WOutput>(par.left->node));
  const auto& srv = std::get<WServer>(par.right->node);
  const auto& inner = std::get<WOutput>(srv.body->node);
  CHECK(inner.subject == res.name);
}

TEST_CASE("class W membership") {
  SUBCASE("server-client accepted with level 1") {
    InWVerdict v = in_W(parse(kServerClient));
    REQUIRE(v.accepted);
    // the merged restriction name gets level 1
    bool found = false;
    for (const auto& [n, lvl] : v.levels)
      if (n.base.rfind("%c", 0) == 0) {
        found = true;
        CHECK(lvl == 1);
      }
    CHECK(found);
  }
  SUBCASE("divergent process rejected with a cycle through the restriction") {
    SourceFile f = parse(kDivergent);
    auto t = translate_judgment_s2w(derive(f));
    try {
      solve_levels(t.constraints);
      FAIL("expected Unsatisfiable");
    } catch (const UnsatisfiableError& e) {
      REQUIRE(!e.cycle.empty());
      bool through_restriction = false;
      for (const Name& n : e.cycle)
        if (n.base.rfind("%c", 0) == 0) through_restriction = true;
      CHECK(through_restriction);
    }
    InWVerdict v = in_W(f);
    CHECK(!v.accepted);
    CHECK(v.code == "NotInW");
  }
  SUBCASE("untypable source is NotInS") {
    InWVerdict v = in_W(parse("calculus s\nprocess x!v.0\ntypes x : srv end, "
                              "v : end\n"));
    CHECK(!v.accepted);
    CHECK(v.code == "NotInS");
  }
  SUBCASE("the two-step terminating witness is accepted") {
    InWVerdict v = in_W(parse(kTwoStep));
    REQUIRE_MESSAGE(v.accepted, v.reason);
    CHECK_NOTHROW(check_w(v.context, v.proc, v.levels));
  }
}

TEST_CASE("one-step operational correspondence on the server-client example") {
  SourceFile f = parse(kServerClient);
  InWVerdict v = in_W(f);
  REQUIRE(v.accepted);

  auto source_steps = reduce_s(f.sproc);
  auto target_steps = tau_w(v.proc);
  REQUIRE(source_steps.size() == 1);
  REQUIRE(target_steps.size() == 1);

  // completeness: the reduct's translation matches the tau successor
  SourceFile g = f;
  g.sproc = source_steps[0];
  InWVerdict vq = in_W(g);
  REQUIRE(vq.accepted);
  CHECK(congruent_w_mod_generated(target_steps[0], vq.proc));
}

TEST_CASE("weight strictly decreases along tau steps here") {
  SourceFile f = parse(kTwoStep);
  InWVerdict v = in_W(f);
  REQUIRE(v.accepted);
  WProcPtr cur = v.proc;
  WeightVector w = weight(cur, v.levels);
  int steps = 0;
  for (;;) {
    auto succs = tau_w(cur);
    if (succs.empty()) break;
    // every successor weighs strictly less
    for (const auto& s : succs) {
      LevelAssignment l2 = v.levels;
      for (auto& [n, lv] : derive_levels(WCtx{}, s)) l2.emplace(n, lv);
      CHECK(weight_less(weight(s, l2), w));
    }
    cur = succs.front();
    LevelAssignment l2 = v.levels;
    for (auto& [n, lv] : derive_levels(WCtx{}, cur)) l2.emplace(n, lv);
    w = weight(cur, l2);
    ++steps;
    REQUIRE(steps < 50);
  }
  CHECK(steps >= 1);
}
