#pragma once

#include <optional>

#include "sessterm/source.hpp"
#include "sessterm/typing_dill.hpp"
#include "sessterm/typing_s.hpp"

namespace sessterm {

// Session types into linear-logic propositions, context form (used for names
// appearing to the left of the turnstile). This is the paper figure's
// translation taken literally; note that its worked examples print the
// second components of the server/client branching forms without the
// top-level bang, which is what the offered form below produces.
DType translate_type_s2dill(const SType& t);

// The proposition offered at a root that owns a name of session type T (the
// dual orientation): tail end positions offer 1, since inaction can offer
// nothing else.
DType offered_type_s2dill(const SType& t);

DProcPtr translate_proc_s2dill(const SProcPtr& p, const SDerivPtr& typing);

struct S2DillResult {
  DProcPtr proc;  // cut annotations embedded
  DJudgment judgment;
};

// Translation of the judgment at the given root; nullopt = fresh root
// (offered type 1). Throws CheckError with codes RowConditionViolation,
// NoRowApplies, NoClauseApplies, SideConditionViolation, MixedServerClient.
S2DillResult translate_judgment_s2dill(const SDerivPtr& d,
                                       std::optional<Name> root);

struct InLVerdict {
  bool accepted = false;
  std::string code;    // NotInS | NotInL
  std::string reason;
  Name root;
  DType offered = dt_one();
  DProcPtr proc;
  DJudgment judgment;
  DDerivPtr derivation;
  std::vector<std::pair<std::string, std::string>> root_failures;
};

// Class-L membership: check_s, then for each candidate root (context names
// in declaration order, then one fresh name) attempt the judgment
// translation and re-check it with check_dill; first success wins.
InLVerdict in_L(const SourceFile& file);

}  // namespace sessterm
