#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "sessterm/classify.hpp"

using namespace sessterm;
using namespace sessterm::testing;

TEST_CASE("the divergent witness: S yes, W no, L no, budget exhausted") {
  ClassReport r = classify(load_fixture("ex2_8.pis"), 100);
  CHECK(r.in_s);
  CHECK(!r.w.accepted);
  CHECK(!r.l.accepted);
  CHECK(r.execution.verdict == Verdict::BudgetExhausted);
  CHECK(!r.consistency_error);
}

TEST_CASE("the two-step witness: S yes, W yes, L no, two steps to normal form") {
  ClassReport r = classify(load_fixture("thm6_11_witness.pis"), 10);
  CHECK(r.in_s);
  CHECK(r.w.accepted);
  CHECK(!r.l.accepted);
  CHECK(r.execution.verdict == Verdict::NormalForm);
  CHECK(r.execution.steps.size() == 2);
}

TEST_CASE("the logical witness: everything yes, one step") {
  ClassReport r = classify(load_fixture("ex6_4_serverclient.pis"), 10);
  CHECK(r.in_s);
  CHECK(r.w.accepted);
  CHECK(r.l.accepted);
  CHECK(r.execution.verdict == Verdict::NormalForm);
  CHECK(r.execution.steps.size() == 1);
}

TEST_CASE("classification is deterministic and idempotent") {
  SourceFile f = load_fixture("two_servers.pis");
  ClassReport a = classify(f, 100);
  ClassReport b = classify(f, 100);
  CHECK(a.in_s == b.in_s);
  CHECK(a.w.accepted == b.w.accepted);
  CHECK(a.l.accepted == b.l.accepted);
  CHECK(a.w.levels == b.w.levels);
  CHECK(a.execution.steps.size() == b.execution.steps.size());
  CHECK(render_json(a) == render_json(b));
}

TEST_CASE("verdict implications hold on the whole corpus") {
  int s_count = 0, w_count = 0, l_count = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(FIXTURES_DIR)) {
    if (entry.path().extension() != ".pis") continue;
    CAPTURE(entry.path().filename().string());
    ClassReport r = classify(parse(read_file(entry.path().string())), 2000);
    CHECK(!r.consistency_error);
    if (r.w.accepted) CHECK(r.in_s);
    if (r.l.accepted) CHECK(r.w.accepted);
    s_count += r.in_s;
    w_count += r.w.accepted;
    l_count += r.l.accepted;
  }
  // both strictness witnesses are present in the corpus
  CHECK(s_count > w_count);
  CHECK(w_count > l_count);
  CHECK(l_count >= 1);
}

TEST_CASE("text and json reports carry the verdicts") {
  ClassReport r = classify(load_fixture("ex6_4_serverclient.pis"), 10);
  std::string text = render_text(r);
  CHECK(text.find("S: yes") != std::string::npos);
  CHECK(text.find("W: yes") != std::string::npos);
  CHECK(text.find("L: yes") != std::string::npos);
  std::string json = render_json(r);
  CHECK(json.find("\"inS\"") != std::string::npos);
  CHECK(json.find("\"inW\"") != std::string::npos);
  CHECK(json.find("\"inL\"") != std::string::npos);
  CHECK(json.find("\"execution\"") != std::string::npos);
}

TEST_CASE("untypable fixtures classify as outside S") {
  ClassReport r = classify(load_fixture("leftover_linear.pis"), 10);
  CHECK(!r.in_s);
  CHECK(!r.w.accepted);
  CHECK(!r.l.accepted);
}
