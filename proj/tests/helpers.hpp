#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sessterm/congruence.hpp"
#include "sessterm/source.hpp"
#include "sessterm/typing_s.hpp"

namespace sessterm::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + path).c_str());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline SourceFile load_fixture(const std::string& name) {
  return parse(read_file(std::string(FIXTURES_DIR) + "/" + name));
}

inline SCtx s_ctx(const SourceFile& f) {
  SCtx g;
  for (const auto& [x, t] : f.s_types) g.add(x, t);
  return g;
}

// Renames free names from the generated namespaces (%k/%c/%w/%u) in first
// occurrence order, so translations of different runs can be compared: the
// translation picks fresh unit names arbitrarily.
inline void collect_free_order(const WProcPtr& p, const NameSet& bound,
                               std::vector<Name>& order) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        auto note = [&](const Name& x) {
          if (bound.count(x)) return;
          if (x.base.rfind("%", 0) != 0) return;
          for (const Name& seen : order)
            if (seen == x) return;
          order.push_back(x);
        };
        if constexpr (std::is_same_v<T, WNil>) {
        } else if constexpr (std::is_same_v<T, WOutput>) {
          note(n.subject);
          note(n.payload1);
          note(n.payload2);
          collect_free_order(n.cont, bound, order);
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          note(n.subject);
          NameSet b2 = bound;
          b2.insert(n.binder1);
          b2.insert(n.binder2);
          collect_free_order(n.body, b2, order);
        } else if constexpr (std::is_same_v<T, WPar>) {
          collect_free_order(n.left, bound, order);
          collect_free_order(n.right, bound, order);
        } else {
          NameSet b2 = bound;
          b2.insert(n.name);
          collect_free_order(n.body, b2, order);
        }
      },
      p->node);
}

inline WProcPtr rename_generated_free(const WProcPtr& p) {
  std::vector<Name> order;
  collect_free_order(canonical_w(p), {}, order);
  WProcPtr out = canonical_w(p);
  int k = 0;
  for (const Name& x : order) out = substitute(out, Name("%fu" + std::to_string(k++)), x);
  return out;
}

// W congruence up to the choice of generated free (unit) names.
inline bool congruent_w_mod_generated(const WProcPtr& a, const WProcPtr& b) {
  return congruent_w(rename_generated_free(a), rename_generated_free(b));
}

}  // namespace sessterm::testing
