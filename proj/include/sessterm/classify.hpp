#pragma once

#include <optional>
#include <string>

#include "sessterm/s2dill.hpp"
#include "sessterm/s2w.hpp"
#include "sessterm/semantics.hpp"

namespace sessterm {

// Per-process verdicts for the three classes, plus bounded-execution
// evidence. Accepted membership carries its witness: the session derivation,
// the level assignment, the chosen root and offered proposition.
struct ClassReport {
  bool in_s = false;
  std::string s_error;
  SDerivPtr s_derivation;
  InWVerdict w;
  InLVerdict l;
  Trace execution;
  int budget = 0;
  // set when the verdicts contradict the class inclusions L ⊆ W ⊆ S
  std::optional<std::string> consistency_error;
};

ClassReport classify(const SourceFile& file, int budget);

std::string render_text(const ClassReport& r);
std::string render_json(const ClassReport& r);

}  // namespace sessterm
