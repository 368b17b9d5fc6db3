#pragma once

#include <optional>
#include <vector>

#include "sessterm/proc.hpp"

// Decomposition of a term into its top-level restrictions and unguarded
// parallel components (scope extrusion applied maximally; sound on
// Barendregt-normalized terms). Prefix-guarded subterms stay inside their
// component.

namespace sessterm::detail {

struct SRestriction {
  Name a, b;
  std::optional<SType> type_a;
};

inline void s_soup(const SProcPtr& p, std::vector<SRestriction>& res,
                   std::vector<SProcPtr>& comps) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SNil>) {
        } else if constexpr (std::is_same_v<T, SPar>) {
          s_soup(n.left, res, comps);
          s_soup(n.right, res, comps);
        } else if constexpr (std::is_same_v<T, SRes>) {
          res.push_back({n.endpoint_a, n.endpoint_b, n.type_a});
          s_soup(n.body, res, comps);
        } else {
          comps.push_back(p);
        }
      },
      p->node);
}

inline SProcPtr s_rebuild(const std::vector<SRestriction>& res,
                          const std::vector<SProcPtr>& comps) {
  SProcPtr body;
  for (const auto& c : comps) body = body ? s_par(body, c) : c;
  if (!body) body = s_nil();
  for (auto it = res.rbegin(); it != res.rend(); ++it)
    body = s_res(it->a, it->b, body, it->type_a);
  return body;
}

struct WRestriction {
  Name x;
  std::optional<WType> ann;
};

inline void w_soup(const WProcPtr& p, std::vector<WRestriction>& res,
                   std::vector<WProcPtr>& comps) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
        } else if constexpr (std::is_same_v<T, WPar>) {
          w_soup(n.left, res, comps);
          w_soup(n.right, res, comps);
        } else if constexpr (std::is_same_v<T, WRes>) {
          res.push_back({n.name, n.ann});
          w_soup(n.body, res, comps);
        } else {
          comps.push_back(p);
        }
      },
      p->node);
}

inline WProcPtr w_rebuild(const std::vector<WRestriction>& res,
                          const std::vector<WProcPtr>& comps) {
  WProcPtr body;
  for (const auto& c : comps) body = body ? w_par(body, c) : c;
  if (!body) body = w_nil();
  for (auto it = res.rbegin(); it != res.rend(); ++it)
    body = w_res(it->x, body, it->ann);
  return body;
}

struct DRestriction {
  Name x;
  std::optional<DType> ann;
};

inline void d_soup(const DProcPtr& p, std::vector<DRestriction>& res,
                   std::vector<DProcPtr>& comps) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DNil>) {
        } else if constexpr (std::is_same_v<T, DPar>) {
          d_soup(n.left, res, comps);
          d_soup(n.right, res, comps);
        } else if constexpr (std::is_same_v<T, DRes>) {
          res.push_back({n.name, n.ann});
          d_soup(n.body, res, comps);
        } else {
          comps.push_back(p);
        }
      },
      p->node);
}

inline DProcPtr d_rebuild(const std::vector<DRestriction>& res,
                          const std::vector<DProcPtr>& comps) {
  DProcPtr body;
  for (const auto& c : comps) body = body ? d_par(body, c) : c;
  if (!body) body = d_nil();
  for (auto it = res.rbegin(); it != res.rend(); ++it)
    body = d_res(it->x, body, it->ann);
  return body;
}

}  // namespace sessterm::detail
