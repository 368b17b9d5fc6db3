#pragma once

#include <memory>
#include <vector>

#include "sessterm/errors.hpp"
#include "sessterm/proc.hpp"

namespace sessterm {

// Two-zone judgment Γ; Δ ⊢ P :: x:A. The domains of Γ, Δ and x are pairwise
// disjoint.
struct DJudgment {
  std::vector<std::pair<Name, DType>> gamma;  // unrestricted
  std::vector<std::pair<Name, DType>> delta;  // linear
  Name subject;
  DType offered = dt_one();
};

std::string show(const DJudgment& j);

enum class DRule {
  OneL, OneR, Fwd, TensorL, TensorR, LolliL, LolliR, Cut, CutBang, Copy,
  BangL, BangR, PlusL, PlusR1, PlusR2, WithL1, WithL2, WithR
};

const char* show(DRule r);

struct DDerivation;
using DDerivPtr = std::shared_ptr<const DDerivation>;

struct DDerivation {
  DRule rule;
  std::string conclusion;
  std::vector<DDerivPtr> premises;
};

std::string show(const DDerivation& d);

// Syntax-directed checker. Δ is threaded linearly (lazy splitting at binary
// rules); 1L discharges silently, !-typed linear assumptions move to Γ when
// used as copy subjects and are dischargeable when unused. Restrictions that
// stand for cuts must carry a type annotation.
// Errors: LinearLeftover, ZoneViolation, SplitFailure, RuleMismatch,
// MissingCutAnnotation, UnknownName, TypeMismatch, DuplicateName.
DDerivPtr check_dill(const DJudgment& j, const DProcPtr& p);

}  // namespace sessterm
