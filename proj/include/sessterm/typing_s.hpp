#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sessterm/errors.hpp"
#include "sessterm/proc.hpp"

namespace sessterm {

// Typing context: insertion-ordered, names pairwise distinct.
struct SCtx {
  std::vector<std::pair<Name, SType>> entries;

  const SType* find(const Name& x) const {
    for (const auto& [n, t] : entries)
      if (n == x) return &t;
    return nullptr;
  }
  void add(const Name& x, SType t) {
    if (find(x)) throw CheckError("DuplicateName", x.str() + " already in context");
    entries.emplace_back(x, std::move(t));
  }
  bool all_un() const {
    for (const auto& [n, t] : entries)
      if (!un_pred(t)) return false;
    return true;
  }
};

std::string show(const SCtx& g);

// All pairs (G1,G2) with G1 ∘ G2 = G: unrestricted entries are copied to both
// sides, each linear entry goes to exactly one side. Test oracle for the
// algorithmic checker's leftover threading.
std::vector<std::pair<SCtx, SCtx>> split_s(const SCtx& g);

enum class SRule { Var, Nil, Par, Res, LinIn1, LinIn2, UnIn, LinOut, UnOut };

const char* show(SRule r);

struct SDerivation;
using SDerivPtr = std::shared_ptr<const SDerivation>;

struct SDerivation {
  SRule rule;
  SCtx ctx;        // conclusion context
  SProcPtr proc;   // conclusion process; null for Var nodes
  std::optional<std::pair<Name, SType>> var;  // Var nodes: Γ ⊢ x:T
  std::optional<SType> subject_type;          // at In/Out nodes
  std::vector<SDerivPtr> premises;
};

std::string show(const SDerivation& d);

// Algorithmic checker for Γ ⊢s P (refined input/output rules, linear context
// threaded through subterms). Failure is a CheckError: UnknownName,
// QualifierMismatch, TypeMismatch, PayloadMismatch, LeftoverLinear,
// DualityViolation, MissingAnnotation.
SDerivPtr check_s(const SCtx& g, const SProcPtr& p);

}  // namespace sessterm
