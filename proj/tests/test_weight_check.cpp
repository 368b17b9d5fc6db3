#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sessterm/source.hpp"
#include "sessterm/typing_w.hpp"

using namespace sessterm;

namespace {
WProcPtr wp(const std::string& text) {
  return parse("calculus w\nprocess " + text + "\n").wproc;
}
std::pair<WCtx, WProcPtr> load(const std::string& text) {
  SourceFile f = parse(text);
  WCtx g;
  for (const auto& [x, mt] : f.w_types) g.add(x, WEntry{mt.first, mt.second});
  return {g, f.wproc};
}
}  // namespace

TEST_CASE("active outputs") {
  CHECK(active_outputs(wp("x!(a,b). y!(c,d). 0")) == NameSet{Name("x"), Name("y")});
  CHECK(active_outputs(wp("!x(a,b). y!(c,d). 0")).empty());
  CHECK(active_outputs(wp("0")).empty());
  CHECK(active_outputs(wp("z(a,b). y!(c,d). 0")) == NameSet{Name("y")});
}

TEST_CASE("weights") {
  LevelAssignment l{{Name("x"), 2}, {Name("u"), 1}};
  CHECK(weight(wp("0"), l).counts.empty());
  CHECK(weight(wp("!x(y,z). u!(a,b). 0"), l).counts.empty());
  WeightVector two_at_2 = weight(wp("x!(a,b).0 | x!(c,d).0"), l);
  CHECK(two_at_2.counts == std::map<int, long>{{2, 2}});
  CHECK_THROWS_WITH_AS(weight(wp("q!(a,b).0"), l), doctest::Contains("MissingLevel"),
                       CheckError);
}

TEST_CASE("weight order") {
  WeightVector zero;
  WeightVector one1{{{1, 1}}};
  WeightVector five1{{{1, 5}}};
  WeightVector one2{{{2, 1}}};
  CHECK(weight_less(zero, one1));
  CHECK(weight_less(five1, one2));  // higher index dominates
  CHECK(!weight_less(one2, one2));  // irreflexive
  CHECK(!weight_less(one2, five1));
}

TEST_CASE("level solving") {
  // irreflexivity
  try {
    solve_levels({lc_lt(Name("c"), Name("c"))});
    FAIL("expected Unsatisfiable");
  } catch (const UnsatisfiableError& e) {
    REQUIRE(e.cycle.size() == 1);
    CHECK(e.cycle[0] == Name("c"));
  }

  CHECK(solve_levels({}).empty());

  auto l = solve_levels({lc_eq(Name("x"), Name("z")), lc_lt(Name("y"), Name("x"))});
  CHECK(l.at(Name("y")) == 1);
  CHECK(l.at(Name("x")) == 2);
  CHECK(l.at(Name("z")) == 2);

  // cycle through an Eq-merged class
  CHECK_THROWS_AS(
      solve_levels({lc_eq(Name("a"), Name("b")), lc_lt(Name("b"), Name("c")),
                    lc_lt(Name("c"), Name("a"))}),
      UnsatisfiableError);
}

TEST_CASE("translated server-client checks with level 1") {
  auto [g, p] = load(
      "calculus w\n"
      "process new c.( !c(z,u).0 | c!(w,v).0 )\n"
      "types w : unit, v : unit, c :: srv[1](unit)\n");
  LevelAssignment l = derive_levels(g, p);
  CHECK(l.at(Name("c")) == 1);
  WDerivPtr d = check_w(g, p, l);
  std::string tree = show(*d);
  CHECK(tree.find("Un-In2") != std::string::npos);
  CHECK(tree.find("Un-Out2") != std::string::npos);
}

TEST_CASE("self-invoking server violates the level condition") {
  auto [g, p] = load(
      "calculus w\n"
      "process new c.( c!(w,v).0 | !c(z,u). c!(w,q).0 )\n"
      "types w : unit, v : unit, q : unit, c :: srv[1](unit)\n");
  LevelAssignment l = derive_levels(g, p);
  CHECK_THROWS_WITH_AS(check_w(g, p, l), doctest::Contains("LevelViolation"),
                       CheckError);
}

TEST_CASE("nil under empty context") {
  CHECK_NOTHROW(check_w(WCtx{}, wp("0"), LevelAssignment{}));
}

TEST_CASE("linear communication pair over a restriction") {
  auto [g, p] = load(
      "calculus w\n"
      "process new c.( c!(w,d).0 | c(y,z).0 )\n"
      "types w : unit, d :: unit, c :: in[2](unit,unit)\n");
  LevelAssignment l = derive_levels(g, p);
  l[Name("c")] = 2;
  CHECK_NOTHROW(check_w(g, p, l));
}

TEST_CASE("the split may route the complementary half into the body") {
  // the dual-join split puts c's out-half into the input's body premise
  auto [g, p] = load(
      "calculus w\n"
      "process new c. c(y,z). c!(a,b). 0\n"
      "types a : unit, b : unit, c :: in[1](unit,unit)\n");
  LevelAssignment l = derive_levels(g, p);
  CHECK_NOTHROW(check_w(g, p, l));
}

TEST_CASE("a consumed half cannot be used twice") {
  auto [g, p] = load(
      "calculus w\n"
      "process new c.( c(y,z).0 | c(u,v).0 )\n"
      "types c :: in[1](unit,unit)\n");
  LevelAssignment l = derive_levels(g, p);
  CHECK_THROWS_AS(check_w(g, p, l), CheckError);
}

TEST_CASE("unused linear half is leftover") {
  auto [g, p] = load(
      "calculus w\n"
      "process new c. c(y,z). 0\n"
      "types c :: in[1](unit,unit)\n");
  LevelAssignment l = derive_levels(g, p);
  CHECK_THROWS_WITH_AS(check_w(g, p, l), doctest::Contains("LeftoverLinear"),
                       CheckError);
}

TEST_CASE("server body may not capture linear context") {
  auto [g, p] = load(
      "calculus w\n"
      "process !s(y,z). q!(a,b).0 | new d. 0\n"
      "types s : srv[2](unit), q : out[1](unit,unit), a : unit, b :: unit\n");
  LevelAssignment l = derive_levels(g, p);
  CHECK_THROWS_AS(check_w(g, p, l), CheckError);
}

TEST_CASE("constraint generation") {
  // x(y,z). w!(a,b). 0 with linear x: exactly the Lin-In side condition
  {
    WCtx g;
    g.add(Name("x"), WEntry{CtxMode::Plain,
                            wt_in(Name("x"), wt_unit(), wt_unit())});
    g.add(Name("w"), WEntry{CtxMode::Plain, wt_cli(Name("w"), wt_unit())});
    g.add(Name("a"), WEntry{CtxMode::Plain, wt_unit()});
    g.add(Name("b"), WEntry{CtxMode::Plain, wt_unit()});
    auto cs = gen_constraints(g, wp("x(y,z). w!(a,b). 0"));
    REQUIRE(cs.size() == 1);
    CHECK(cs[0] == lc_eq(Name("x"), Name("z")));
  }
  // a server with no outputs in the body yields nothing
  {
    WCtx g;
    g.add(Name("x"), WEntry{CtxMode::Plain, wt_srv(Name("x"), wt_unit())});
    auto cs = gen_constraints(g, wp("!x(y,z).0"));
    CHECK(cs.empty());
  }
  // a server invoking itself: Lt(c,c) after Eq-closure
  {
    WCtx g;
    g.add(Name("w"), WEntry{CtxMode::Plain, wt_unit()});
    g.add(Name("v"), WEntry{CtxMode::Plain, wt_unit()});
    g.add(Name("q"), WEntry{CtxMode::Plain, wt_unit()});
    WProcPtr p = wp("new c.( c!(w,v).0 | !c(z,u). c!(w,q).0 )");
    // annotate the restriction
    const auto& res = std::get<WRes>(p->node);
    p = w_res(res.name, res.body, wt_srv(Name("c"), wt_unit()));
    auto cs = gen_constraints(g, p);
    bool has_cc = false;
    for (const auto& c : cs)
      if (c == lc_lt(Name("c"), Name("c"))) has_cc = true;
    CHECK(has_cc);
    CHECK_THROWS_AS(solve_levels(cs), UnsatisfiableError);
  }
}

TEST_CASE("dual involution") {
  WType t = wt_out(3, wt_srv(1, wt_unit()), wt_in(2, wt_unit(), wt_unit()));
  CHECK(dual_w(dual_w(t)) == t);
}
