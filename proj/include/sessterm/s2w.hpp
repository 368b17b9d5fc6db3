#pragma once

#include <optional>

#include "sessterm/source.hpp"
#include "sessterm/typing_s.hpp"
#include "sessterm/typing_w.hpp"

namespace sessterm {

// Continuation-passing translation from πS to πW. Type-directed: the case
// split on the subject's type reads the πS derivation. Fresh continuation
// and unit names live in the reserved %k/%c namespaces; level slots in the
// produced types are symbolic carrier names to be fixed by solve_levels.
struct S2WTranslation {
  WProcPtr proc;  // restriction annotations embedded (symbolic levels)
  WCtx context;   // translated source context plus fresh unit names
  std::vector<LevelConstraint> constraints;
};

S2WTranslation translate_judgment_s2w(const SDerivPtr& d);

WProcPtr translate_proc_s2w(const SProcPtr& p, const SDerivPtr& typing);

// Session type to link type at a carrier name: levels are l(carrier) at the
// top, payloads use auxiliary carriers derived from the carrier's name.
WType translate_type_s2w(const SType& t, const LevelAssignment& l,
                         const Name& carrier);

// Class-W membership: check_s, translate, solve levels, re-check.
struct InWVerdict {
  bool accepted = false;
  std::string code;    // empty on accept; NotInS or NotInW otherwise
  std::string reason;  // human-readable failure detail
  // on accept:
  LevelAssignment levels;  // induced by the concrete types (Def 3.7 style)
  WCtx context;            // concrete levels
  WProcPtr proc;           // concrete levels
};

InWVerdict in_W(const SourceFile& file);

// Instantiates symbolic levels inside restriction annotations.
WProcPtr instantiate_proc(const WProcPtr& p, const LevelAssignment& l);

}  // namespace sessterm
