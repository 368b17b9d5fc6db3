#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "sessterm/typing_dill.hpp"

using namespace sessterm;

namespace {
DProcPtr dp(const std::string& text) {
  return parse("calculus dill\nprocess " + text + "\n").dproc;
}
DJudgment j(std::vector<std::pair<Name, DType>> gamma,
            std::vector<std::pair<Name, DType>> delta, Name u, DType a) {
  DJudgment out;
  out.gamma = std::move(gamma);
  out.delta = std::move(delta);
  out.subject = std::move(u);
  out.offered = std::move(a);
  return out;
}
}  // namespace

TEST_CASE("inaction offers 1") {
  CHECK_NOTHROW(check_dill(j({{Name("q"), dt_one()}}, {}, Name("x"), dt_one()),
                           dp("0")));
  CHECK_THROWS_WITH_AS(
      check_dill(j({}, {}, Name("x"), dt_bang(dt_one())), dp("0")),
      doctest::Contains("RuleMismatch"), CheckError);
}

TEST_CASE("forwarder") {
  DType a = dt_lolli(dt_one(), dt_one());
  CHECK_NOTHROW(check_dill(j({}, {{Name("x"), a}}, Name("y"), a), dp("fwd x y")));
  // type mismatch between the two ends
  CHECK_THROWS_AS(
      check_dill(j({}, {{Name("x"), dt_one()}}, Name("y"), a), dp("fwd x y")),
      CheckError);
  // unrestricted source is a zone violation
  CHECK_THROWS_WITH_AS(
      check_dill(j({{Name("x"), a}}, {}, Name("y"), a), dp("fwd x y")),
      doctest::Contains("ZoneViolation"), CheckError);
}

TEST_CASE("a server may not capture linear assumptions") {
  CHECK_NOTHROW(check_dill(j({}, {}, Name("x"), dt_bang(dt_one())),
                           dp("!x(y).0")));
  // the !R premise isolates the linear zone: z is out of scope in the body
  CHECK_THROWS_WITH_AS(
      check_dill(j({}, {{Name("z"), dt_one()}}, Name("x"), dt_bang(dt_one())),
                 dp("!x(y). fwd z y")),
      doctest::Contains("UnknownName"), CheckError);
  // an unused non-dischargeable assumption next to a server is a leftover
  CHECK_THROWS_WITH_AS(
      check_dill(j({}, {{Name("z"), dt_lolli(dt_one(), dt_one())}}, Name("x"),
                   dt_bang(dt_one())),
                 dp("!x(y).0")),
      doctest::Contains("LinearLeftover"), CheckError);
}

TEST_CASE("tensor right splits the linear zone") {
  DType a = dt_tensor(dt_one(), dt_one());
  CHECK_NOTHROW(check_dill(
      j({}, {{Name("v"), dt_one()}}, Name("x"), a), dp("x!(y).( fwd v y | 0 )")));
  // both components cannot consume the same resource
  CHECK_THROWS_AS(
      check_dill(j({}, {{Name("v"), dt_tensor(dt_one(), dt_one())}}, Name("x"),
                   dt_tensor(dt_tensor(dt_one(), dt_one()),
                             dt_tensor(dt_one(), dt_one()))),
                 dp("x!(y).( fwd v y | fwd v x )")),
      CheckError);
}

TEST_CASE("lolli right and tensor left") {
  // x offers 1 -o 1: receive y:1 then stop
  CHECK_NOTHROW(check_dill(j({}, {}, Name("x"), dt_lolli(dt_one(), dt_one())),
                           dp("x(y).0")));
  // using a tensor assumption: z:1*1 |- z(y).0 :: u:1
  CHECK_NOTHROW(check_dill(
      j({}, {{Name("z"), dt_tensor(dt_one(), dt_one())}}, Name("u"), dt_one()),
      dp("z(y).0")));
}

TEST_CASE("cut composes provider and user") {
  // new z:1*1.( z!(y).(0|0) | z(w).0 ) :: u:1
  CHECK_NOTHROW(check_dill(
      j({}, {}, Name("u"), dt_one()),
      dp("new z : 1 * 1. ( z!(y).( 0 | 0 ) | z(w).0 )")));
  // missing annotation
  CHECK_THROWS_WITH_AS(
      check_dill(j({}, {}, Name("u"), dt_one()), dp("new z. ( 0 | 0 )")),
      doctest::Contains("MissingCutAnnotation"), CheckError);
  // bare parallel composition is not typable
  CHECK_THROWS_WITH_AS(check_dill(j({}, {}, Name("u"), dt_one()), dp("0 | 0")),
                       doctest::Contains("RuleMismatch"), CheckError);
}

TEST_CASE("cut! and copy") {
  // new u:!1.( !u(y).0 | u!(k). fwd k x ) :: x:1
  CHECK_NOTHROW(check_dill(j({}, {}, Name("x"), dt_one()),
                           dp("new u : !1. ( !u(y).0 | u!(k). fwd k x )")));
}

TEST_CASE("selection offers and uses") {
  // offered (+): x.inl; 0 :: x : 1 (+) (1 -o 1)
  CHECK_NOTHROW(check_dill(
      j({}, {}, Name("x"), dt_plus(dt_one(), dt_lolli(dt_one(), dt_one()))),
      dp("x.inl;0")));
  // used &: z:1&1 |- z.inr;0 :: u:1
  CHECK_NOTHROW(check_dill(
      j({}, {{Name("z"), dt_with(dt_one(), dt_one())}}, Name("u"), dt_one()),
      dp("z.inr;0")));
}

TEST_CASE("case branches must consume the same resources") {
  DType a = dt_with(dt_one(), dt_one());
  CHECK_NOTHROW(check_dill(j({}, {{Name("v"), dt_one()}}, Name("x"), a),
                           dp("x.case(0,0)")));
  CHECK_THROWS_WITH_AS(
      check_dill(j({}, {{Name("v"), dt_lolli(dt_one(), dt_one())},
                        {Name("w"), dt_lolli(dt_one(), dt_one())}},
                   Name("x"), dt_with(dt_lolli(dt_one(), dt_one()), dt_one())),
                 dp("x.case(fwd v x, 0)")),
      doctest::Contains("SplitFailure"), CheckError);
}

TEST_CASE("unused linear assumptions are leftovers unless dischargeable") {
  CHECK_THROWS_WITH_AS(
      check_dill(
          j({}, {{Name("v"), dt_lolli(dt_one(), dt_one())}}, Name("x"), dt_one()),
          dp("0")),
      doctest::Contains("LinearLeftover"), CheckError);
  // 1-typed and !-typed leftovers discharge silently (1L / !L + weakening)
  CHECK_NOTHROW(check_dill(
      j({}, {{Name("v"), dt_one()}, {Name("w"), dt_bang(dt_one())}}, Name("x"),
        dt_one()),
      dp("0")));
}

TEST_CASE("a bang assumption can feed copy through implicit !L") {
  // v:!(1 -o 1) used as a client: v!(y).( 0 | 0 )? needs the payload side
  CHECK_NOTHROW(check_dill(
      j({}, {{Name("v"), dt_bang(dt_one())}}, Name("u"), dt_one()),
      dp("v!(y).0")));
}

TEST_CASE("the paper's server-client derivation shape") {
  // new x : !((!1 -o 1) & 1). ( !x(v).case( v(z).0, 0 )
  //                           | x!(k). k.inl; k!(w'). ( !w'(q). w!(h). fwd h q | 0 ) )
  // under w:1 in the unrestricted zone, offered u:1
  DProcPtr p = dp(
      "new x : !((!1 -o 1) & 1). ( !x(v). v.case( v(z).0, 0 ) | "
      "x!(k). k.inl; k!(y). ( !y(q). w!(h). fwd h q | 0 ) )");
  DJudgment jj = j({{Name("w"), dt_one()}}, {}, Name("u"), dt_one());
  DDerivPtr d = check_dill(jj, p);
  REQUIRE(d->rule == DRule::CutBang);
  REQUIRE(d->premises.size() == 2);
  CHECK(d->premises[0]->rule == DRule::BangR);
  CHECK(d->premises[0]->premises[0]->rule == DRule::WithR);
  const DDerivation* client = d->premises[1].get();
  CHECK(client->rule == DRule::Copy);
  CHECK(client->premises[0]->rule == DRule::WithL1);
  CHECK(client->premises[0]->premises[0]->rule == DRule::LolliL);
}
