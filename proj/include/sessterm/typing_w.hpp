#pragma once

#include <map>
#include <memory>
#include <vector>

#include "sessterm/errors.hpp"
#include "sessterm/proc.hpp"
#include "sessterm/source.hpp"

namespace sessterm {

// Context entry: x : V (plain) or x :: <V, dual V> (dual-join). Dual-joins
// store the canonical half (In or Srv outermost, or unit).
struct WEntry {
  CtxMode mode = CtxMode::Plain;
  WType type = wt_unit();
};

struct WCtx {
  std::vector<std::pair<Name, WEntry>> entries;

  const WEntry* find(const Name& x) const {
    for (const auto& [n, e] : entries)
      if (n == x) return &e;
    return nullptr;
  }
  void add(const Name& x, WEntry e) {
    if (find(x)) throw CheckError("DuplicateName", x.str() + " already in context");
    entries.emplace_back(x, std::move(e));
  }
};

std::string show(const WCtx& g);

// Canonical dual-join half: orient towards the receiving side.
WType canonical_half(const WType& v);

// Levels

struct LevelConstraint {
  enum class Kind { Eq, Lt };  // Lt(a,b): level(a) < level(b)
  Kind kind;
  Name a, b;
  friend bool operator==(const LevelConstraint&, const LevelConstraint&) = default;
  friend auto operator<=>(const LevelConstraint&, const LevelConstraint&) = default;
};

inline LevelConstraint lc_eq(Name a, Name b) {
  return {LevelConstraint::Kind::Eq, std::move(a), std::move(b)};
}
inline LevelConstraint lc_lt(Name a, Name b) {
  return {LevelConstraint::Kind::Lt, std::move(a), std::move(b)};
}

std::string show(const LevelConstraint& c);

using LevelAssignment = std::map<Name, int>;

struct UnsatisfiableError : CheckError {
  std::vector<Name> cycle;
  UnsatisfiableError(std::vector<Name> cyc, const std::string& detail)
      : CheckError("Unsatisfiable", detail), cycle(std::move(cyc)) {}
};

// Union-find over Eq, strict-order graph over Lt; assigns minimal positive
// levels by longest-path layering. Throws UnsatisfiableError when a cycle
// involves an Lt edge.
LevelAssignment solve_levels(const std::vector<LevelConstraint>& cs);

// Active outputs: output subjects not guarded by a server.
NameSet active_outputs(const WProcPtr& p);

// Weight vectors: sparse level -> count, ordered lexicographically from the
// highest level down.
struct WeightVector {
  std::map<int, long> counts;  // no zero entries
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

std::string show(const WeightVector& v);
WeightVector weight(const WProcPtr& p, const LevelAssignment& l);
bool weight_less(const WeightVector& a, const WeightVector& b);

// Checker

enum class WRule {
  Var1, Var2, Nil, Par, Res, LinIn1, LinIn2, LinIn3, LinOut, UnOut1, UnOut2,
  UnIn1, UnIn2
};

const char* show(WRule r);

struct WDerivation;
using WDerivPtr = std::shared_ptr<const WDerivation>;

struct WDerivation {
  WRule rule;
  std::string ctx_text;
  std::string conclusion;
  std::vector<WDerivPtr> premises;
};

std::string show(const WDerivation& d);

// Algorithmic checker for Γ ⊢w P under level assignment l. Level slots inside
// types may be concrete or symbolic carrier names resolved through l.
// Errors: UnknownName, ModeMismatch, LevelViolation, LeftoverLinear,
// TypeMismatch, MissingLevel, MissingAnnotation.
WDerivPtr check_w(const WCtx& g, const WProcPtr& p, const LevelAssignment& l);

// Structure-only pass: validates everything except the numeric side
// conditions and returns them as constraints between (carrier) names:
// Eq for the l(x)=l(y2) obligations of Lin-In1/Lin-Out, Lt for the server
// obligations, Eq ties between names and the level slots of their types.
std::vector<LevelConstraint> gen_constraints(const WCtx& g, const WProcPtr& p);

// Resolves symbolic level slots through the assignment. Throws MissingLevel.
WType instantiate(const WType& t, const LevelAssignment& l);

// The level assignment induced by concrete type annotations: context entries
// and restriction names map to the top level of their type, input binders to
// the top levels of the subject's payload slots.
LevelAssignment derive_levels(const WCtx& g, const WProcPtr& p);

}  // namespace sessterm
