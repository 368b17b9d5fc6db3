#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sessterm/source.hpp"
#include "sessterm/typing_s.hpp"

using namespace sessterm;

namespace {

SCtx ctx_of(const SourceFile& f) {
  SCtx g;
  for (const auto& [x, t] : f.s_types) g.add(x, t);
  return g;
}

std::pair<SCtx, SProcPtr> load(const std::string& text) {
  SourceFile f = parse(text);
  return {ctx_of(f), f.sproc};
}

}  // namespace

TEST_CASE("context split enumeration") {
  SCtx un_only;
  un_only.add(Name("w"), st_end());
  auto s1 = split_s(un_only);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].first.entries == un_only.entries);
  CHECK(s1[0].second.entries == un_only.entries);

  SCtx one_lin;
  one_lin.add(Name("x"), st_recv(st_end(), st_end()));
  CHECK(split_s(one_lin).size() == 2);

  CHECK(split_s(SCtx{}).size() == 1);
}

TEST_CASE("the divergent server-client process typechecks") {
  auto [g, p] = load(
      "calculus s\n"
      "process new x y.( y!w.0 | un x(z). y!w.0 )\n"
      "types w:end, x:srv end, y:cli end\n");
  SDerivPtr d = check_s(g, p);
  // derivation shape: Res over Par over Un-Out / Un-In
  CHECK(d->rule == SRule::Res);
  REQUIRE(d->premises.size() == 1);
  const auto& par = *d->premises[0];
  CHECK(par.rule == SRule::Par);
  REQUIRE(par.premises.size() == 2);
  CHECK(par.premises[0]->rule == SRule::UnOut);
  CHECK(par.premises[1]->rule == SRule::UnIn);
  // the replicated body again contains the client output
  const auto& unin = *par.premises[1];
  bool found_unout = false;
  for (const auto& prem : unin.premises)
    if (prem->rule == SRule::UnOut) found_unout = true;
  CHECK(found_unout);
}

TEST_CASE("simple server-client communication typechecks") {
  auto [g, p] = load(
      "calculus s\n"
      "process new x y.( un x(z).0 | y!w.0 )\n"
      "types w:end, x:srv end, y:cli end\n");
  CHECK_NOTHROW(check_s(g, p));
}

TEST_CASE("leftover linear assumption is rejected at Nil") {
  SCtx g;
  g.add(Name("x"), st_recv(st_end(), st_end()));
  CHECK_THROWS_WITH_AS(check_s(g, s_nil()), doctest::Contains("LeftoverLinear"),
                       CheckError);
}

TEST_CASE("linear endpoint delegation") {
  // send a linear endpoint over a linear channel, receive and use it
  auto [g, p] = load(
      "calculus s\n"
      "process new a b.( new c d.( a!c. lin d(u).0 ) | lin b(e). e!v.0 )\n"
      "types v:end, a : lin !(lin !end.end).end, c : lin !end.end\n");
  CHECK_NOTHROW(check_s(g, p));
}

TEST_CASE("linear input consumes the subject exactly once") {
  auto [g, p] = load(
      "calculus s\n"
      "process lin x(y).0 | lin x(z).0\n"
      "types x : lin ?end.end\n");
  CHECK_THROWS_AS(check_s(g, p), CheckError);
}

TEST_CASE("un input requires a server-typed subject") {
  auto [g, p] = load(
      "calculus s\n"
      "process un x(y).0\n"
      "types x : lin ?end.end\n");
  CHECK_THROWS_WITH_AS(check_s(g, p), doctest::Contains("QualifierMismatch"),
                       CheckError);
}

TEST_CASE("un input body cannot consume an outer linear resource") {
  auto [g, p] = load(
      "calculus s\n"
      "process un x(y). z!w.0\n"
      "types x : srv end, z : lin !end.end, w : end\n");
  CHECK_THROWS_AS(check_s(g, p), CheckError);
}

TEST_CASE("payload type must match") {
  auto [g, p] = load(
      "calculus s\n"
      "process x!v.0\n"
      "types x : cli end, v : srv end\n");
  CHECK_THROWS_WITH_AS(check_s(g, p), doctest::Contains("PayloadMismatch"),
                       CheckError);
}

TEST_CASE("restriction endpoints must be dual") {
  CHECK_THROWS_WITH_AS(
      parse("calculus s\n"
            "process new x y.( un x(z).0 | y!w.0 )\n"
            "types w:end, x:srv end, y:srv end\n"),
      doctest::Contains("DualityViolation"), CheckError);
}

TEST_CASE("unknown free name") {
  SCtx g;
  CHECK_THROWS_WITH_AS(check_s(g, s_out(Name("x"), Name("v"), s_nil())),
                       doctest::Contains("UnknownName"), CheckError);
}

TEST_CASE("missing restriction annotation") {
  auto p = s_res(Name("x"), Name("y"), s_nil());
  CHECK_THROWS_WITH_AS(check_s(SCtx{}, p), doctest::Contains("MissingAnnotation"),
                       CheckError);
}

TEST_CASE("derivation printing mentions the rules") {
  auto [g, p] = load(
      "calculus s\n"
      "process new x y.( un x(z).0 | y!w.0 )\n"
      "types w:end, x:srv end, y:cli end\n");
  std::string tree = show(*check_s(g, p));
  CHECK(tree.find("[Res]") != std::string::npos);
  CHECK(tree.find("[Un-In]") != std::string::npos);
  CHECK(tree.find("[Un-Out]") != std::string::npos);
}
