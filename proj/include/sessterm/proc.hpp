#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "sessterm/types.hpp"

namespace sessterm {

// Process terms for the three calculi. Nodes are immutable and shared;
// every operation builds new terms. Restriction nodes optionally carry the
// type of the bound name (endpointA for πS restrictions, the canonical half
// of the dual-join for πW, the cut type for πDILL); the semantics ignore it,
// the checkers require it.

// ---------------- πS ----------------

struct SProc;
using SProcPtr = std::shared_ptr<const SProc>;

struct SNil {};
struct SOutput {  // x!v.P
  Name subject;
  Name value;
  SProcPtr cont;
};
struct SInput {  // lin x(y).P / un x(y).P
  Qual qual;
  Name subject;
  Name binder;
  SProcPtr body;
};
struct SPar {
  SProcPtr left;
  SProcPtr right;
};
struct SRes {  // new a b. P
  Name endpoint_a;
  Name endpoint_b;
  std::optional<SType> type_a;  // endpointB has the dual type
  SProcPtr body;
};

struct SProc {
  std::variant<SNil, SOutput, SInput, SPar, SRes> node;
};

SProcPtr s_nil();
SProcPtr s_out(Name x, Name v, SProcPtr p);
SProcPtr s_in(Qual q, Name x, Name y, SProcPtr p);
SProcPtr s_par(SProcPtr l, SProcPtr r);
SProcPtr s_res(Name a, Name b, SProcPtr p, std::optional<SType> ta = std::nullopt);

// ---------------- πW ----------------

struct WProc;
using WProcPtr = std::shared_ptr<const WProc>;

struct WNil {};
struct WOutput {  // x!(v1,v2).P
  Name subject;
  Name payload1;
  Name payload2;
  WProcPtr cont;
};
struct WInput {  // x(y1,y2).P
  Name subject;
  Name binder1;
  Name binder2;
  WProcPtr body;
};
struct WServer {  // !x(y1,y2).P
  Name subject;
  Name binder1;
  Name binder2;
  WProcPtr body;
};
struct WPar {
  WProcPtr left;
  WProcPtr right;
};
struct WRes {  // new x. P   (annotation: the canonical half V of x :: <V,dual V>)
  Name name;
  std::optional<WType> ann;
  WProcPtr body;
};

struct WProc {
  std::variant<WNil, WOutput, WInput, WServer, WPar, WRes> node;
};

WProcPtr w_nil();
WProcPtr w_out(Name x, Name v1, Name v2, WProcPtr p);
WProcPtr w_in(Name x, Name y1, Name y2, WProcPtr p);
WProcPtr w_srv(Name x, Name y1, Name y2, WProcPtr p);
WProcPtr w_par(WProcPtr l, WProcPtr r);
WProcPtr w_res(Name x, WProcPtr p, std::optional<WType> ann = std::nullopt);

// ---------------- πDILL ----------------

struct DProc;
using DProcPtr = std::shared_ptr<const DProc>;

struct DNil {};
struct DBoundOut {  // x!(z).P, i.e. new z. x<z>.P
  Name subject;
  Name binder;
  DProcPtr cont;
};
struct DInput {  // x(y).P
  Name subject;
  Name binder;
  DProcPtr body;
};
struct DServer {  // !x(y).P
  Name subject;
  Name binder;
  DProcPtr body;
};
struct DPar {
  DProcPtr left;
  DProcPtr right;
};
struct DRes {  // new x [: A]. P
  Name name;
  std::optional<DType> ann;
  DProcPtr body;
};
struct DForward {  // fwd x y
  Name from;
  Name to;
};
struct DSelL {  // x.inl; P
  Name subject;
  DProcPtr cont;
};
struct DSelR {  // x.inr; P
  Name subject;
  DProcPtr cont;
};
struct DCase {  // x.case(P,Q)
  Name subject;
  DProcPtr left;
  DProcPtr right;
};

struct DProc {
  std::variant<DNil, DBoundOut, DInput, DServer, DPar, DRes, DForward, DSelL,
               DSelR, DCase>
      node;
};

DProcPtr d_nil();
DProcPtr d_bout(Name x, Name z, DProcPtr p);
DProcPtr d_in(Name x, Name y, DProcPtr p);
DProcPtr d_srv(Name x, Name y, DProcPtr p);
DProcPtr d_par(DProcPtr l, DProcPtr r);
DProcPtr d_res(Name x, DProcPtr p, std::optional<DType> ann = std::nullopt);
DProcPtr d_fwd(Name x, Name y);
DProcPtr d_sell(Name x, DProcPtr p);
DProcPtr d_selr(Name x, DProcPtr p);
DProcPtr d_case(Name x, DProcPtr l, DProcPtr r);

// Replicated forwarder !fwd(x,y): a server on y that invokes x and links the
// fresh channels, !y(z). x!(k). fwd k z.
DProcPtr d_repl_fwd(Name x, Name y, NameSupply& supply);

// ---------------- name operations ----------------

NameSet free_names(const SProcPtr& p);
NameSet free_names(const WProcPtr& p);
NameSet free_names(const DProcPtr& p);

NameSet all_names(const SProcPtr& p);  // free and bound
NameSet all_names(const WProcPtr& p);
NameSet all_names(const DProcPtr& p);

// Capture-free substitution of `variable` by `value`.
SProcPtr substitute(const SProcPtr& p, const Name& value, const Name& variable);
WProcPtr substitute(const WProcPtr& p, const Name& value, const Name& variable);
DProcPtr substitute(const DProcPtr& p, const Name& value, const Name& variable);

bool alpha_eq(const SProcPtr& a, const SProcPtr& b);
bool alpha_eq(const WProcPtr& a, const WProcPtr& b);
bool alpha_eq(const DProcPtr& a, const DProcPtr& b);

// Barendregt normalization: renames binders so that all bound names are
// pairwise distinct and distinct from every free name (and from `avoid`).
SProcPtr normalize(const SProcPtr& p, const NameSet& avoid = {});
WProcPtr normalize(const WProcPtr& p, const NameSet& avoid = {});
DProcPtr normalize(const DProcPtr& p, const NameSet& avoid = {});

std::string show(const SProcPtr& p);
std::string show(const WProcPtr& p);
std::string show(const DProcPtr& p);

}  // namespace sessterm
