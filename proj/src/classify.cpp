#include "sessterm/classify.hpp"

#include <json.hpp>
#include <sstream>

namespace sessterm {

ClassReport classify(const SourceFile& file, int budget) {
  if (file.calculus != Calculus::S)
    throw CheckError("MissingTypeInfo", "classify needs a πS file");
  ClassReport r;
  r.budget = budget;
  SCtx g;
  for (const auto& [x, t] : file.s_types) g.add(x, t);
  try {
    r.s_derivation = check_s(g, file.sproc);
    r.in_s = true;
  } catch (const CheckError& e) {
    r.s_error = e.what();
  }
  if (r.in_s) {
    r.w = in_W(file);
    r.l = in_L(file);
  } else {
    r.w.code = "NotInS";
    r.w.reason = r.s_error;
    r.l.code = "NotInS";
    r.l.reason = r.s_error;
  }
  r.execution = run_bounded(file.sproc, budget);
  if (r.l.accepted && !r.w.accepted)
    r.consistency_error =
        "L-membership without W-membership contradicts the class inclusion";
  if (r.w.accepted && !r.in_s)
    r.consistency_error = "W-membership without S-membership";
  return r;
}

std::string render_text(const ClassReport& r) {
  std::ostringstream os;
  os << "S: " << (r.in_s ? "yes" : "no");
  if (!r.in_s) os << "  (" << r.s_error << ")";
  os << "\n";
  os << "W: " << (r.w.accepted ? "yes" : "no");
  if (r.w.accepted) {
    os << "  levels:";
    for (const auto& [x, n] : r.w.levels) os << " " << x.str() << "=" << n;
  } else {
    os << "  (" << r.w.code << ": " << r.w.reason << ")";
  }
  os << "\n";
  os << "L: " << (r.l.accepted ? "yes" : "no");
  if (r.l.accepted)
    os << "  root " << r.l.root.str() << " : " << show(r.l.offered);
  else
    os << "  (" << r.l.code << ")";
  os << "\n";
  os << "execution: ";
  if (r.execution.verdict == Verdict::NormalForm)
    os << "normal form after " << r.execution.steps.size() << " step(s)";
  else
    os << "budget of " << r.budget << " exhausted";
  os << "\n";
  if (r.consistency_error)
    os << "internal consistency error: " << *r.consistency_error << "\n";
  return os.str();
}

std::string render_json(const ClassReport& r) {
  nlohmann::json j;
  j["inS"]["verdict"] = r.in_s;
  if (!r.in_s) j["inS"]["error"] = r.s_error;
  j["inW"]["verdict"] = r.w.accepted;
  if (r.w.accepted) {
    nlohmann::json lv = nlohmann::json::object();
    for (const auto& [x, n] : r.w.levels) lv[x.str()] = n;
    j["inW"]["levels"] = lv;
  } else {
    j["inW"]["code"] = r.w.code;
    j["inW"]["reason"] = r.w.reason;
  }
  j["inL"]["verdict"] = r.l.accepted;
  if (r.l.accepted) {
    j["inL"]["root"] = r.l.root.str();
    j["inL"]["offered"] = show(r.l.offered);
  } else {
    j["inL"]["code"] = r.l.code;
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& [root, why] : r.l.root_failures)
      fails.push_back({{"root", root}, {"reason", why}});
    j["inL"]["rootFailures"] = fails;
  }
  j["execution"]["steps"] = r.execution.steps.size();
  j["execution"]["verdict"] =
      r.execution.verdict == Verdict::NormalForm ? "NormalForm" : "BudgetExhausted";
  j["execution"]["budget"] = r.budget;
  if (r.consistency_error) j["consistencyError"] = *r.consistency_error;
  return j.dump(2);
}

}  // namespace sessterm
