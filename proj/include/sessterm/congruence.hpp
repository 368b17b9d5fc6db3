#pragma once

#include "sessterm/proc.hpp"

namespace sessterm {

// Canonical representatives for structural congruence: parallel composition
// flattened and sorted by an alpha-invariant structural key, inert 0s
// deleted, restrictions hoisted as far out as prefixes allow and
// garbage-collected when unused, bound names renamed in traversal order.
// Congruence is then decided by comparing canonical forms. This is a
// deterministic normal form for the congruence axioms at desk scale, not a
// general decision procedure.
SProcPtr canonical_s(const SProcPtr& p);
WProcPtr canonical_w(const WProcPtr& p);
DProcPtr canonical_d(const DProcPtr& p);

bool congruent_s(const SProcPtr& a, const SProcPtr& b);
bool congruent_w(const WProcPtr& a, const WProcPtr& b);
bool congruent_d(const DProcPtr& a, const DProcPtr& b);

// Stable text key of the canonical form, used for deduplication.
std::string canonical_key(const SProcPtr& p);
std::string canonical_key(const WProcPtr& p);
std::string canonical_key(const DProcPtr& p);

}  // namespace sessterm
