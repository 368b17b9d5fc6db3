#pragma once

#include <string>
#include <vector>

#include "sessterm/proc.hpp"

namespace sessterm {

// ---------- πS reduction ----------

// All one-step successors modulo structural congruence, deduplicated by
// canonical form, in a deterministic order. Empty result = normal form.
std::vector<std::pair<std::string, SProcPtr>> reduce_s_tagged(const SProcPtr& p);
std::vector<SProcPtr> reduce_s(const SProcPtr& p);

// ---------- πW labeled transitions ----------

struct WLabel {
  enum class Kind { Tau, In, Out, BoundOut };
  Kind kind = Kind::Tau;
  Name subject;
  Name value1, value2;
  NameSet extruded;  // bound-output only
};

std::string show(const WLabel& l);

// Output, bound-output and internal (tau) transitions. Free-input transitions
// are only enumerable against caller-supplied values (lts_w_input below):
// tau-search restricts received values to those that can actually synchronize
// within the term.
std::vector<std::pair<WLabel, WProcPtr>> lts_w(const WProcPtr& p);
// Early input transition for a caller-chosen label x(v1,v2).
std::vector<WProcPtr> lts_w_input(const WProcPtr& p, const Name& subject,
                                  const Name& v1, const Name& v2);
std::vector<WProcPtr> tau_w(const WProcPtr& p);

// ---------- πDILL reduction ----------

std::vector<std::pair<std::string, DProcPtr>> reduce_dill_tagged(const DProcPtr& p);
std::vector<DProcPtr> reduce_dill(const DProcPtr& p);

// ---------- bounded execution ----------

enum class Verdict { NormalForm, BudgetExhausted };

struct TraceStep {
  std::string rule;
  std::string term;  // successor, printed
};

struct Trace {
  std::vector<TraceStep> steps;
  Verdict verdict = Verdict::NormalForm;
  SProcPtr final_s;
  WProcPtr final_w;
  DProcPtr final_d;
};

// Deterministic execution: repeatedly takes the first successor until normal
// form or budget. πW runs take tau steps only.
Trace run_bounded(const SProcPtr& p, int budget);
Trace run_bounded(const WProcPtr& p, int budget);
Trace run_bounded(const DProcPtr& p, int budget);

}  // namespace sessterm
