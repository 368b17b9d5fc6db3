#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "sessterm/s2dill.hpp"

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

TEST_CASE("server and client behavior predicates reproduce the worked table") {
  // rows instantiated at S = R = T0 = end
  SType t0 = st_server(st_end());
  SType row2 = st_send(st_client(st_end()), st_recv(st_server(st_end()), t0));
  SType row1 = st_client(row2);
  SType row4 = st_send(st_client(st_end()), st_recv(st_server(st_end()), st_end()));
  SType row3 = st_client(row4);
  CHECK(srv_pred(row1));
  CHECK(cli_pred(row1));
  CHECK(srv_pred(row2));
  CHECK(!cli_pred(row2));
  CHECK(!srv_pred(row3));
  CHECK(cli_pred(row3));
  CHECK(!srv_pred(row4));
  CHECK(!cli_pred(row4));
}

TEST_CASE("type translation follows the figure") {
  CHECK(translate_type_s2dill(st_end()) == dt_bang(dt_one()));
  // srv end: neither srv nor cli payload: !((!1 * 1) (+) !1)
  CHECK(translate_type_s2dill(st_server(st_end())) ==
        dt_bang(dt_plus(dt_tensor(dt_bang(dt_one()), dt_one()), dt_bang(dt_one()))));
  // cli end: !((!1 -o 1) & !1)
  CHECK(translate_type_s2dill(st_client(st_end())) ==
        dt_bang(dt_with(dt_lolli(dt_bang(dt_one()), dt_one()), dt_bang(dt_one()))));
  // linear send maps to -o, receive to *
  CHECK(translate_type_s2dill(st_send(st_end(), st_end())) ==
        dt_lolli(dt_bang(dt_one()), dt_bang(dt_one())));
  CHECK(translate_type_s2dill(st_recv(st_end(), st_end())) ==
        dt_tensor(dt_bang(dt_one()), dt_bang(dt_one())));
}

TEST_CASE("offered form differs from the context form exactly at end tails") {
  CHECK(offered_type_s2dill(st_end()) == dt_one());
  // a server owner offers !((!1 -o 1) & 1): the & right component is what the
  // translated continuation can actually provide
  CHECK(offered_type_s2dill(st_server(st_end())) ==
        dt_bang(dt_with(dt_lolli(dt_bang(dt_one()), dt_one()), dt_one())));
  CHECK(offered_type_s2dill(st_recv(st_end(), st_end())) ==
        dt_lolli(dt_bang(dt_one()), dt_one()));
}

TEST_CASE("mixed server-client payloads are rejected") {
  SType mixed = st_client(st_send(st_client(st_end()),
                                  st_recv(st_server(st_end()), st_server(st_end()))));
  CHECK_THROWS_WITH_AS(translate_type_s2dill(st_server(mixed)),
                       doctest::Contains("MixedServerClient"), CheckError);
}

TEST_CASE("process translation of the displayed example") {
  SourceFile f = parse(kServerClient);
  DProcPtr p = translate_proc_s2dill(f.sproc, derive(f));
  // new x. ( !x(v).case( v(z).0, 0 ) | x!(z'). z'.inl; z'!(v').( !fwd | 0 ) )
  const auto& res = std::get<DRes>(p->node);
  const auto& par = std::get<DPar>(res.body->node);
  const auto& srv = std::get<DServer>(par.left->node);
  CHECK(srv.subject == res.name);
  const auto& cse = std::get<DCase>(srv.body->node);
  CHECK(std::holds_alternative<DInput>(cse.left->node));
  CHECK(std::holds_alternative<DNil>(cse.right->node));
  const auto& bout = std::get<DBoundOut>(par.right->node);
  CHECK(bout.subject == res.name);
  const auto& sel = std::get<DSelL>(bout.cont->node);
  const auto& inner = std::get<DBoundOut>(sel.cont->node);
  const auto& innerpar = std::get<DPar>(inner.cont->node);
  CHECK(std::holds_alternative<DServer>(innerpar.left->node));  // !fwd
}

TEST_CASE("class L membership of the three witnesses") {
  SUBCASE("server-client accepted with a fresh root at type 1") {
    InLVerdict v = in_L(parse(kServerClient));
    REQUIRE_MESSAGE(v.accepted, v.reason);
    CHECK(v.offered == dt_one());
    CHECK(v.root.base.rfind("%u", 0) == 0);
    // judgment is (w:1); . |- ... :: u:1
    REQUIRE(v.judgment.gamma.size() == 1);
    CHECK(v.judgment.gamma[0].first == Name("w"));
    CHECK(v.judgment.gamma[0].second == dt_one());
    CHECK(v.judgment.delta.empty());
    // derivation: cut! of (!R over &R) against (copy over &L1 over -oL)
    REQUIRE(v.derivation->rule == DRule::CutBang);
    CHECK(v.derivation->premises[0]->rule == DRule::BangR);
    CHECK(v.derivation->premises[0]->premises[0]->rule == DRule::WithR);
    const DDerivation* cli = v.derivation->premises[1].get();
    CHECK(cli->rule == DRule::Copy);
    CHECK(cli->premises[0]->rule == DRule::WithL1);
    CHECK(cli->premises[0]->premises[0]->rule == DRule::LolliL);
  }
  SUBCASE("the divergent process is rejected") {
    InLVerdict v = in_L(parse(kDivergent));
    CHECK(!v.accepted);
    CHECK(v.code == "NotInL");
    CHECK(v.root_failures.size() >= 2);  // every candidate root failed
  }
  SUBCASE("the terminating two-step witness is rejected for every root") {
    InLVerdict v = in_L(parse(kTwoStep));
    CHECK(!v.accepted);
    CHECK(v.code == "NotInL");
  }
  SUBCASE("an untypable process is NotInS") {
    InLVerdict v = in_L(parse("calculus s\nprocess x!v.0\ntypes x : srv end, "
                              "v : end\n"));
    CHECK(!v.accepted);
    CHECK(v.code == "NotInS");
  }
}

TEST_CASE("translation type preservation on accepted judgments") {
  // whenever the judgment translation succeeds, check_dill accepts its output
  const char* files[] = {
      kServerClient,
      "calculus s\nprocess 0\n",
      "calculus s\nprocess new x y.( lin x(z).0 | y!w.0 )\ntypes w : end, "
      "x : lin ?end.end\n",
  };
  for (const char* text : files) {
    CAPTURE(text);
    SourceFile f = parse(text);
    SDerivPtr d = derive(f);
    std::vector<std::optional<Name>> roots;
    for (const auto& [x, t] : d->ctx.entries) roots.emplace_back(x);
    roots.emplace_back(std::nullopt);
    for (const auto& r : roots) {
      try {
        S2DillResult res = translate_judgment_s2dill(d, r);
        CHECK_NOTHROW(check_dill(res.judgment, res.proc));
      } catch (const CheckError&) {
        // a failing row condition is a legitimate outcome; the invariant
        // concerns successful translations only
      }
    }
  }
}

TEST_CASE("remark: client-behaved payloads of unrestricted bound outputs") {
  // new x y.( new w v. x!v. un w(a).0 | un y(c). c!b.0 ), b:end
  SourceFile f = parse(
      "calculus s\n"
      "process new x y.( new w v. x!v. un w(a).0 | un y(c). c!b.0 )\n"
      "types b:end, x : cli (cli end), w : srv end\n");
  CHECK_NOTHROW(derive(f));  // it is in S
  InLVerdict v = in_L(f);
  CHECK(!v.accepted);  // but the sent endpoint has client behavior
  bool mentions_condition = false;
  for (const auto& [root, why] : v.root_failures)
    if (why.find("client behavior") != std::string::npos ||
        why.find("SideConditionViolation") != std::string::npos ||
        why.find("RowConditionViolation") != std::string::npos)
      mentions_condition = true;
  CHECK(mentions_condition);
}
