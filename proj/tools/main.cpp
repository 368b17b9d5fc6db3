#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sessterm/classify.hpp"

using namespace sessterm;

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SourceFile load(const std::string& path) { return parse(slurp(path)); }

bool g_json = false;

void emit_error(const std::string& stage, const std::string& what) {
  if (g_json) {
    nlohmann::json j{{"ok", false}, {"stage", stage}, {"error", what}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << stage << ": " << what << "\n";
  }
}

int cmd_check_s(const std::string& path) {
  SourceFile f = load(path);
  if (f.calculus != Calculus::S) {
    emit_error("check-s", "expected a calculus s file");
    return kExitUsage;
  }
  SCtx g;
  for (const auto& [x, t] : f.s_types) g.add(x, t);
  try {
    SDerivPtr d = check_s(g, f.sproc);
    if (g_json) {
      nlohmann::json j{{"ok", true}, {"derivation", show(*d)}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << show(*d);
    }
    return kExitAccept;
  } catch (const CheckError& e) {
    emit_error("check-s", e.what());
    return kExitReject;
  }
}

int cmd_check_w(const std::string& path) {
  SourceFile f = load(path);
  if (f.calculus == Calculus::W) {
    WCtx g;
    for (const auto& [x, mt] : f.w_types) g.add(x, WEntry{mt.first, mt.second});
    try {
      LevelAssignment l = derive_levels(g, f.wproc);
      WDerivPtr d = check_w(g, f.wproc, l);
      if (g_json) {
        nlohmann::json j{{"ok", true}, {"derivation", show(*d)}};
        nlohmann::json lv = nlohmann::json::object();
        for (const auto& [x, n] : l) lv[x.str()] = n;
        j["levels"] = lv;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << show(*d);
        for (const auto& [x, n] : l)
          std::cout << "level " << x.str() << " = " << n << "\n";
      }
      return kExitAccept;
    } catch (const CheckError& e) {
      emit_error("check-w", e.what());
      return kExitReject;
    }
  }
  if (f.calculus == Calculus::S) {
    InWVerdict v = in_W(f);
    if (!v.accepted) {
      emit_error(v.code.empty() ? "check-w" : v.code, v.reason);
      return kExitReject;
    }
    if (g_json) {
      nlohmann::json j{{"ok", true}, {"process", show(v.proc)}};
      nlohmann::json lv = nlohmann::json::object();
      for (const auto& [x, n] : v.levels) lv[x.str()] = n;
      j["levels"] = lv;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "translated: " << show(v.proc) << "\n";
      for (const auto& [x, n] : v.levels)
        std::cout << "level " << x.str() << " = " << n << "\n";
    }
    return kExitAccept;
  }
  emit_error("check-w", "expected a calculus w or s file");
  return kExitUsage;
}

int cmd_check_l(const std::string& path, const std::string& root) {
  SourceFile f = load(path);
  if (f.calculus == Calculus::Dill) {
    if (!f.dill_root) {
      emit_error("check-l", "a direct πDILL file needs a 'root u : A' line");
      return kExitUsage;
    }
    DJudgment j;
    j.subject = f.dill_root->first;
    j.offered = f.dill_root->second;
    for (const auto& [x, t] : f.d_types) j.delta.emplace_back(x, t);
    try {
      DDerivPtr d = check_dill(j, f.dproc);
      if (g_json) {
        nlohmann::json out{{"ok", true}, {"derivation", show(*d)}};
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << show(*d);
      }
      return kExitAccept;
    } catch (const CheckError& e) {
      emit_error("check-l", e.what());
      return kExitReject;
    }
  }
  if (f.calculus == Calculus::S) {
    InLVerdict v = in_L(f);
    if (!root.empty() && v.accepted && v.root.str() != root) {
      // restrict to the requested root
      SCtx g;
      for (const auto& [x, t] : f.s_types) g.add(x, t);
      try {
        SDerivPtr deriv = check_s(g, f.sproc);
        S2DillResult r = translate_judgment_s2dill(
            deriv, root == "fresh" ? std::optional<Name>()
                                   : std::optional<Name>(Name(root)));
        DDerivPtr dd = check_dill(r.judgment, r.proc);
        v = InLVerdict{};
        v.accepted = true;
        v.root = r.judgment.subject;
        v.offered = r.judgment.offered;
        v.proc = r.proc;
        v.judgment = r.judgment;
        v.derivation = dd;
      } catch (const CheckError& e) {
        emit_error("check-l", e.what());
        return kExitReject;
      }
    }
    if (!v.accepted) {
      if (g_json) {
        nlohmann::json j{{"ok", false}, {"code", v.code}};
        nlohmann::json fails = nlohmann::json::array();
        for (const auto& [r, why] : v.root_failures)
          fails.push_back({{"root", r}, {"reason", why}});
        j["rootFailures"] = fails;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "not in L (" << v.code << ")\n";
        for (const auto& [r, why] : v.root_failures)
          std::cout << "  root " << r << ": " << why << "\n";
      }
      return kExitReject;
    }
    if (g_json) {
      nlohmann::json j{{"ok", true},
                       {"root", v.root.str()},
                       {"offered", show(v.offered)},
                       {"process", show(v.proc)},
                       {"derivation", show(*v.derivation)}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "root " << v.root.str() << " : " << show(v.offered) << "\n";
      std::cout << "translation: " << show(v.proc) << "\n";
      std::cout << show(*v.derivation);
    }
    return kExitAccept;
  }
  emit_error("check-l", "expected a calculus dill or s file");
  return kExitUsage;
}

int cmd_classify(const std::string& path, int budget) {
  SourceFile f = load(path);
  if (f.calculus != Calculus::S) {
    emit_error("classify", "expected a calculus s file");
    return kExitUsage;
  }
  ClassReport r = classify(f, budget);
  std::cout << (g_json ? render_json(r) + "\n" : render_text(r));
  return r.in_s ? kExitAccept : kExitReject;
}

int cmd_translate(const std::string& path, const std::string& to) {
  SourceFile f = load(path);
  if (f.calculus != Calculus::S) {
    emit_error("translate", "expected a calculus s file");
    return kExitUsage;
  }
  if (to == "w") {
    InWVerdict v = in_W(f);
    if (!v.accepted) {
      emit_error(v.code, v.reason);
      return kExitReject;
    }
    SourceFile out;
    out.calculus = Calculus::W;
    out.wproc = v.proc;
    for (const auto& [x, e] : v.context.entries)
      out.w_types.emplace_back(x, std::make_pair(e.mode, e.type));
    std::string text = print(out);
    if (g_json) {
      nlohmann::json j{{"ok", true}, {"file", text}};
      nlohmann::json lv = nlohmann::json::object();
      for (const auto& [x, n] : v.levels) lv[x.str()] = n;
      j["levels"] = lv;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << text;
      for (const auto& [x, n] : v.levels)
        std::cout << "# level " << x.str() << " = " << n << "\n";
    }
    return kExitAccept;
  }
  if (to == "dill") {
    InLVerdict v = in_L(f);
    if (!v.accepted) {
      emit_error(v.code, v.reason);
      return kExitReject;
    }
    SourceFile out;
    out.calculus = Calculus::Dill;
    out.dproc = v.proc;
    for (const auto& [x, t] : v.judgment.gamma)
      out.d_types.emplace_back(x, dt_bang(t));
    for (const auto& [x, t] : v.judgment.delta) out.d_types.emplace_back(x, t);
    out.dill_root = std::make_pair(v.root, v.offered);
    std::string text = print(out);
    if (g_json) {
      nlohmann::json j{{"ok", true}, {"file", text}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << text;
    }
    return kExitAccept;
  }
  emit_error("translate", "--to must be w or dill");
  return kExitUsage;
}

int cmd_run(const std::string& path, int budget) {
  SourceFile f = load(path);
  Trace t;
  switch (f.calculus) {
    case Calculus::S: t = run_bounded(f.sproc, budget); break;
    case Calculus::W: t = run_bounded(f.wproc, budget); break;
    case Calculus::Dill: t = run_bounded(f.dproc, budget); break;
  }
  if (g_json) {
    nlohmann::json steps = nlohmann::json::array();
    for (size_t i = 0; i < t.steps.size(); ++i)
      steps.push_back(
          {{"step", i + 1}, {"rule", t.steps[i].rule}, {"term", t.steps[i].term}});
    nlohmann::json j{{"steps", steps},
                     {"verdict", t.verdict == Verdict::NormalForm
                                     ? "NormalForm"
                                     : "BudgetExhausted"}};
    std::cout << j.dump(2) << "\n";
  } else {
    int k = 1;
    for (const auto& s : t.steps)
      std::cout << "#" << k++ << " [" << s.rule << "] " << s.term << "\n";
    std::cout << (t.verdict == Verdict::NormalForm ? "normal form"
                                                   : "budget exhausted")
              << " after " << t.steps.size() << " step(s)\n";
  }
  return kExitAccept;
}

int cmd_weight(const std::string& path) {
  SourceFile f = load(path);
  if (f.calculus != Calculus::W) {
    emit_error("weight", "expected a calculus w file");
    return kExitUsage;
  }
  WCtx g;
  for (const auto& [x, mt] : f.w_types) g.add(x, WEntry{mt.first, mt.second});
  try {
    LevelAssignment l = derive_levels(g, f.wproc);
    WeightVector v = weight(f.wproc, l);
    if (g_json) {
      nlohmann::json j{{"ok", true}, {"weight", show(v)}};
      nlohmann::json counts = nlohmann::json::object();
      for (const auto& [lvl, c] : v.counts) counts[std::to_string(lvl)] = c;
      j["counts"] = counts;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << show(v) << "\n";
    }
    return kExitAccept;
  } catch (const CheckError& e) {
    emit_error("weight", e.what());
    return kExitReject;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"session pi-calculus termination classifier"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string file, root, to = "w";
  int budget = 10000;

  auto* cs = app.add_subcommand("check-s", "session-type a πS file");
  cs->add_option("file", file)->required();
  auto* cw = app.add_subcommand("check-w",
                                "check a πW file, or decide class W of a πS file");
  cw->add_option("file", file)->required();
  auto* cl = app.add_subcommand(
      "check-l", "check a πDILL file, or decide class L of a πS file");
  cl->add_option("file", file)->required();
  cl->add_option("--root", root, "candidate root name (or 'fresh')");
  auto* cc = app.add_subcommand("classify", "decide S/W/L membership");
  cc->add_option("file", file)->required();
  cc->add_option("--budget", budget, "execution budget");
  auto* ct = app.add_subcommand("translate", "translate a πS file");
  ct->add_option("file", file)->required();
  ct->add_option("--to", to, "target calculus")
      ->required()
      ->check(CLI::IsMember({"w", "dill"}));
  auto* cr = app.add_subcommand("run", "bounded execution trace");
  cr->add_option("file", file)->required();
  cr->add_option("--budget", budget, "execution budget");
  auto* cwt = app.add_subcommand("weight", "weight vector of a πW file");
  cwt->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  g_json = format == "json";

  try {
    if (cs->parsed()) return cmd_check_s(file);
    if (cw->parsed()) return cmd_check_w(file);
    if (cl->parsed()) return cmd_check_l(file, root);
    if (cc->parsed()) return cmd_classify(file, budget);
    if (ct->parsed()) return cmd_translate(file, to);
    if (cr->parsed()) return cmd_run(file, budget);
    if (cwt->parsed()) return cmd_weight(file);
  } catch (const SyntaxError& e) {
    emit_error("parse", e.what());
    return kExitUsage;
  } catch (const CheckError& e) {
    // annotation and file-shape problems surfaced while loading
    emit_error("parse", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    emit_error("error", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
