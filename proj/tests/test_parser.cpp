#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sessterm/source.hpp"

using namespace sessterm;

TEST_CASE("parse the running server-client example") {
  SourceFile f = parse(
      "calculus s\n"
      "process new x y.( y!w.0 | un x(z). y!w.0 )\n"
      "types w:end, x:srv end, y:cli end\n");
  CHECK(f.calculus == Calculus::S);
  const auto& res = std::get<SRes>(f.sproc->node);
  CHECK(res.endpoint_a == Name("x"));
  CHECK(res.type_a.has_value());
  CHECK(*res.type_a == st_server(st_end()));
  // w stays as a free annotation
  REQUIRE(f.s_types.size() == 1);
  CHECK(f.s_types[0].first == Name("w"));
  CHECK(f.s_types[0].second == st_end());
}

TEST_CASE("parse nil") {
  SourceFile f = parse("calculus s\nprocess 0\n");
  CHECK(std::holds_alternative<SNil>(f.sproc->node));
  CHECK(f.s_types.empty());
}

TEST_CASE("parse dill forwarder") {
  SourceFile f = parse("calculus dill\nprocess fwd x y\ntypes x:1\n");
  const auto& fw = std::get<DForward>(f.dproc->node);
  CHECK(fw.from == Name("x"));
  CHECK(fw.to == Name("y"));
  REQUIRE(f.d_types.size() == 1);
  CHECK(f.d_types[0].second == dt_one());
}

TEST_CASE("parse w process and types") {
  SourceFile f = parse(
      "calculus w\n"
      "process new c.( c!(w,u).0 | !c(y,z).0 )\n"
      "types w : unit, u : unit, c :: in[1](unit,unit)\n");
  const auto& res = std::get<WRes>(f.wproc->node);
  CHECK(res.name == Name("c"));
  REQUIRE(res.ann.has_value());
  CHECK(*res.ann == wt_in(1, wt_unit(), wt_unit()));
  CHECK(f.w_types.size() == 2);
}

TEST_CASE("dill types parse with precedence") {
  CHECK(parse_dtype("!1") == dt_bang(dt_one()));
  CHECK(parse_dtype("1 -o 1 -o 1") ==
        dt_lolli(dt_one(), dt_lolli(dt_one(), dt_one())));
  CHECK(parse_dtype("!(( !1 * 1 ) (+) !1)") ==
        dt_bang(dt_plus(dt_tensor(dt_bang(dt_one()), dt_one()), dt_bang(dt_one()))));
  CHECK(parse_dtype("!((!1 -o 1) & !1)") ==
        dt_bang(dt_with(dt_lolli(dt_bang(dt_one()), dt_one()), dt_bang(dt_one()))));
}

TEST_CASE("session types parse") {
  CHECK(parse_stype("end") == st_end());
  CHECK(parse_stype("srv end") == st_server(st_end()));
  CHECK(parse_stype("lin ?end.end") == st_recv(st_end(), st_end()));
  CHECK(parse_stype("lin !(lin ?end.end).srv end") ==
        st_send(st_recv(st_end(), st_end()), st_server(st_end())));
}

TEST_CASE("syntax errors carry position") {
  try {
    parse("calculus s\nprocess new x. 0\n");
    FAIL("expected syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.expected.find("name") != std::string::npos);
  }
  try {
    parse("calculus w\nprocess new c ( 0 )\n");
    FAIL("expected syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.expected.find("'.'") != std::string::npos);
  }
}

TEST_CASE("duplicate annotation rejected") {
  CHECK_THROWS_WITH_AS(
      parse("calculus s\nprocess x!v.0\ntypes x:end, x:end\n"),
      doctest::Contains("DuplicateAnnotation"), CheckError);
}

TEST_CASE("dangling annotation rejected") {
  CHECK_THROWS_WITH_AS(parse("calculus s\nprocess 0\ntypes q:end\n"),
                       doctest::Contains("DanglingAnnotation"), CheckError);
}

TEST_CASE("round trip on assorted files") {
  const char* files[] = {
      "calculus s\nprocess new x y.( y!w.0 | un x(z). y!w.0 )\ntypes w:end, "
      "x:srv end, y:cli end\n",
      "calculus s\nprocess 0\n",
      "calculus s\nprocess lin x(y). y!v.0 | z!u.0\ntypes x : lin ?(lin "
      "!end.end).end, z : cli end, u : end, v:end\n",
      "calculus w\nprocess new c.( c!(w,u).0 | !c(y,z).0 )\ntypes w : unit, u : "
      "unit, c :: in[1](unit,unit)\n",
      "calculus dill\nprocess new x : !1. ( !x(y).0 | x!(z).fwd z w )\ntypes w : "
      "1\nroot u : 1\n",
      "calculus dill\nprocess x.case(x(y).0, 0)\ntypes x : (1 -o 1) (+) 1\n",
  };
  for (const char* text : files) {
    CAPTURE(text);
    SourceFile f1 = parse(text);
    std::string printed = print(f1);
    CAPTURE(printed);
    SourceFile f2 = parse(printed);
    CHECK(f1.calculus == f2.calculus);
    switch (f1.calculus) {
      case Calculus::S: CHECK(alpha_eq(f1.sproc, f2.sproc)); break;
      case Calculus::W: CHECK(alpha_eq(f1.wproc, f2.wproc)); break;
      case Calculus::Dill: CHECK(alpha_eq(f1.dproc, f2.dproc)); break;
    }
    CHECK(print(f2) == printed);
  }
}
