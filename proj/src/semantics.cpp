#include "sessterm/semantics.hpp"

#include <set>
#include <sstream>

#include "sessterm/congruence.hpp"
#include "sessterm/detail/soup.hpp"

namespace sessterm {

using detail::DRestriction;
using detail::SRestriction;
using detail::WRestriction;

// ---------- πS ----------

std::vector<std::pair<std::string, SProcPtr>> reduce_s_tagged(const SProcPtr& p0) {
  SProcPtr p = normalize(p0);
  std::vector<SRestriction> res;
  std::vector<SProcPtr> comps;
  detail::s_soup(p, res, comps);

  std::vector<std::pair<std::string, SProcPtr>> out;
  std::set<std::string> seen;

  auto are_covars = [&](const Name& x, const Name& y) {
    for (const auto& r : res)
      if ((r.a == x && r.b == y) || (r.a == y && r.b == x)) return true;
    return false;
  };

  for (size_t i = 0; i < comps.size(); ++i) {
    const auto* o = std::get_if<SOutput>(&comps[i]->node);
    if (!o) continue;
    for (size_t j = 0; j < comps.size(); ++j) {
      if (i == j) continue;
      const auto* in = std::get_if<SInput>(&comps[j]->node);
      if (!in) continue;
      if (!are_covars(o->subject, in->subject)) continue;
      SProcPtr received = substitute(in->body, o->value, in->binder);
      std::vector<SProcPtr> next;
      for (size_t k = 0; k < comps.size(); ++k) {
        if (k == i) {
          next.push_back(o->cont);
        } else if (k == j) {
          next.push_back(received);
          if (in->qual == Qual::Un) next.push_back(comps[j]);
        } else {
          next.push_back(comps[k]);
        }
      }
      SProcPtr succ = normalize(detail::s_rebuild(res, next));
      std::string key = canonical_key(succ);
      if (seen.insert(key).second)
        out.emplace_back(in->qual == Qual::Lin ? "R-LinCom" : "R-UnCom", succ);
    }
  }
  return out;
}

std::vector<SProcPtr> reduce_s(const SProcPtr& p) {
  std::vector<SProcPtr> out;
  for (auto& [tag, q] : reduce_s_tagged(p)) out.push_back(q);
  return out;
}

// ---------- πW ----------

std::string show(const WLabel& l) {
  std::ostringstream os;
  switch (l.kind) {
    case WLabel::Kind::Tau:
      os << "tau";
      break;
    case WLabel::Kind::In:
      os << l.subject.str() << "(" << l.value1.str() << "," << l.value2.str() << ")";
      break;
    case WLabel::Kind::Out:
      os << l.subject.str() << "!(" << l.value1.str() << "," << l.value2.str() << ")";
      break;
    case WLabel::Kind::BoundOut:
      os << "new(";
      {
        bool first = true;
        for (const Name& b : l.extruded) {
          if (!first) os << ",";
          os << b.str();
          first = false;
        }
      }
      os << ") " << l.subject.str() << "!(" << l.value1.str() << "," << l.value2.str()
         << ")";
      break;
  }
  return os.str();
}

namespace {

bool is_restricted(const std::vector<WRestriction>& res, const Name& x) {
  for (const auto& r : res)
    if (r.x == x) return true;
  return false;
}

std::vector<WProcPtr> w_tau_successors(const std::vector<WRestriction>& res,
                                       const std::vector<WProcPtr>& comps) {
  std::vector<WProcPtr> out;
  for (size_t i = 0; i < comps.size(); ++i) {
    const auto* o = std::get_if<WOutput>(&comps[i]->node);
    if (!o) continue;
    for (size_t j = 0; j < comps.size(); ++j) {
      if (i == j) continue;
      WProcPtr spawned;
      bool keep_server = false;
      if (const auto* in = std::get_if<WInput>(&comps[j]->node)) {
        if (in->subject != o->subject) continue;
        spawned = substitute(substitute(in->body, o->payload1, in->binder1),
                             o->payload2, in->binder2);
      } else if (const auto* sv = std::get_if<WServer>(&comps[j]->node)) {
        if (sv->subject != o->subject) continue;
        spawned = substitute(substitute(sv->body, o->payload1, sv->binder1),
                             o->payload2, sv->binder2);
        keep_server = true;
      } else {
        continue;
      }
      std::vector<WProcPtr> next;
      for (size_t k = 0; k < comps.size(); ++k) {
        if (k == i) {
          next.push_back(o->cont);
        } else if (k == j) {
          if (keep_server) next.push_back(comps[j]);
          next.push_back(spawned);
        } else {
          next.push_back(comps[k]);
        }
      }
      out.push_back(normalize(detail::w_rebuild(res, next)));
    }
  }
  return out;
}

}  // namespace

std::vector<WProcPtr> tau_w(const WProcPtr& p0) {
  WProcPtr p = normalize(p0);
  std::vector<WRestriction> res;
  std::vector<WProcPtr> comps;
  detail::w_soup(p, res, comps);
  std::vector<WProcPtr> dedup;
  std::set<std::string> seen;
  for (auto& s : w_tau_successors(res, comps))
    if (seen.insert(canonical_key(s)).second) dedup.push_back(s);
  return dedup;
}

std::vector<std::pair<WLabel, WProcPtr>> lts_w(const WProcPtr& p0) {
  WProcPtr p = normalize(p0);
  std::vector<WRestriction> res;
  std::vector<WProcPtr> comps;
  detail::w_soup(p, res, comps);

  std::vector<std::pair<WLabel, WProcPtr>> out;
  // free outputs, with Open extruding restricted payloads
  for (size_t i = 0; i < comps.size(); ++i) {
    const auto* o = std::get_if<WOutput>(&comps[i]->node);
    if (!o) continue;
    if (is_restricted(res, o->subject)) continue;
    WLabel l;
    l.subject = o->subject;
    l.value1 = o->payload1;
    l.value2 = o->payload2;
    for (const Name& v : {o->payload1, o->payload2})
      if (is_restricted(res, v)) l.extruded.insert(v);
    l.kind = l.extruded.empty() ? WLabel::Kind::Out : WLabel::Kind::BoundOut;
    std::vector<WRestriction> res2;
    for (const auto& r : res)
      if (!l.extruded.count(r.x)) res2.push_back(r);
    std::vector<WProcPtr> next;
    for (size_t k = 0; k < comps.size(); ++k)
      next.push_back(k == i ? o->cont : comps[k]);
    out.emplace_back(l, normalize(detail::w_rebuild(res2, next)));
  }
  for (auto& s : w_tau_successors(res, comps)) {
    WLabel l;
    l.kind = WLabel::Kind::Tau;
    out.emplace_back(l, s);
  }
  return out;
}

std::vector<WProcPtr> lts_w_input(const WProcPtr& p0, const Name& subject,
                                  const Name& v1, const Name& v2) {
  WProcPtr p = normalize(p0, NameSet{subject, v1, v2});
  std::vector<WRestriction> res;
  std::vector<WProcPtr> comps;
  detail::w_soup(p, res, comps);
  std::vector<WProcPtr> out;
  if (is_restricted(res, subject)) return out;
  for (size_t j = 0; j < comps.size(); ++j) {
    std::vector<WProcPtr> next;
    WProcPtr spawned;
    bool keep_server = false;
    if (const auto* in = std::get_if<WInput>(&comps[j]->node)) {
      if (in->subject != subject) continue;
      spawned = substitute(substitute(in->body, v1, in->binder1), v2, in->binder2);
    } else if (const auto* sv = std::get_if<WServer>(&comps[j]->node)) {
      if (sv->subject != subject) continue;
      spawned = substitute(substitute(sv->body, v1, sv->binder1), v2, sv->binder2);
      keep_server = true;
    } else {
      continue;
    }
    for (size_t k = 0; k < comps.size(); ++k) {
      if (k == j) {
        if (keep_server) next.push_back(comps[j]);
        next.push_back(spawned);
      } else {
        next.push_back(comps[k]);
      }
    }
    out.push_back(normalize(detail::w_rebuild(res, next)));
  }
  return out;
}

// ---------- πDILL ----------

namespace {

struct AnnSplit {
  std::optional<DType> fresh_ann;  // for the newly created restriction
  std::optional<DType> cont_ann;   // replacement for the channel's restriction
};

// Decomposes a cut annotation across a communication: A*B and A-oB hand A to
// the fresh name and leave B on the channel; !A spawns A and keeps !A.
AnnSplit split_ann_comm(const std::optional<DType>& ann, bool server) {
  AnnSplit s;
  if (!ann) return s;
  if (server) {
    if (const auto* b = std::get_if<DTBang>(&ann->node)) s.fresh_ann = *b->inner;
    s.cont_ann = ann;
    return s;
  }
  if (const auto* t = std::get_if<DTTensor>(&ann->node)) {
    s.fresh_ann = *t->arg;
    s.cont_ann = *t->res;
  } else if (const auto* l = std::get_if<DTLolli>(&ann->node)) {
    s.fresh_ann = *l->arg;
    s.cont_ann = *l->res;
  }
  return s;
}

std::optional<DType> project_ann(const std::optional<DType>& ann, bool left) {
  if (!ann) return std::nullopt;
  if (const auto* pl = std::get_if<DTPlus>(&ann->node))
    return left ? *pl->left : *pl->right;
  if (const auto* wi = std::get_if<DTWith>(&ann->node))
    return left ? *wi->left : *wi->right;
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<std::string, DProcPtr>> reduce_dill_tagged(const DProcPtr& p0) {
  DProcPtr p = normalize(p0);
  std::vector<DRestriction> res;
  std::vector<DProcPtr> comps;
  detail::d_soup(p, res, comps);

  std::vector<std::pair<std::string, DProcPtr>> out;
  std::set<std::string> seen;

  auto emit = [&](const std::string& tag, const DProcPtr& succ) {
    if (seen.insert(canonical_key(succ)).second) out.emplace_back(tag, succ);
  };
  auto res_with_ann = [&](const Name& x, const std::optional<DType>& ann) {
    std::vector<DRestriction> r2 = res;
    for (auto& r : r2)
      if (r.x == x) r.ann = ann;
    return r2;
  };
  auto ann_of = [&](const Name& x) -> std::optional<DType> {
    for (const auto& r : res)
      if (r.x == x) return r.ann;
    return std::nullopt;
  };
  auto restricted = [&](const Name& x) {
    for (const auto& r : res)
      if (r.x == x) return true;
    return false;
  };

  // forwarder elimination: new x.(fwd x y | P) -> P{y/x}
  for (size_t i = 0; i < comps.size(); ++i) {
    const auto* f = std::get_if<DForward>(&comps[i]->node);
    if (!f) continue;
    if (f->from == f->to) continue;
    if (!restricted(f->from)) continue;
    std::vector<DRestriction> res2;
    for (const auto& r : res)
      if (r.x != f->from) res2.push_back(r);
    std::vector<DProcPtr> next;
    for (size_t k = 0; k < comps.size(); ++k) {
      if (k == i) continue;
      next.push_back(substitute(comps[k], f->to, f->from));
    }
    emit("Rfwd", normalize(detail::d_rebuild(res2, next)));
  }

  // communication: bound output meets input (RC) or server (R!)
  for (size_t i = 0; i < comps.size(); ++i) {
    const auto* o = std::get_if<DBoundOut>(&comps[i]->node);
    if (!o) continue;
    for (size_t j = 0; j < comps.size(); ++j) {
      if (i == j) continue;
      DProcPtr body;
      bool server = false;
      if (const auto* in = std::get_if<DInput>(&comps[j]->node)) {
        if (in->subject != o->subject) continue;
        body = substitute(in->body, o->binder, in->binder);
      } else if (const auto* sv = std::get_if<DServer>(&comps[j]->node)) {
        if (sv->subject != o->subject) continue;
        body = substitute(sv->body, o->binder, sv->binder);
        server = true;
      } else {
        continue;
      }
      AnnSplit anns = split_ann_comm(ann_of(o->subject), server);
      std::vector<DRestriction> res2 =
          server ? res : res_with_ann(o->subject, anns.cont_ann);
      res2.push_back({o->binder, anns.fresh_ann});
      std::vector<DProcPtr> next;
      for (size_t k = 0; k < comps.size(); ++k) {
        if (k == i) {
          next.push_back(o->cont);
        } else if (k == j) {
          if (server) next.push_back(comps[j]);
          next.push_back(body);
        } else {
          next.push_back(comps[k]);
        }
      }
      emit(server ? "R!" : "RC", normalize(detail::d_rebuild(res2, next)));
    }
  }

  // selection
  for (size_t i = 0; i < comps.size(); ++i) {
    bool left;
    Name subj;
    DProcPtr cont;
    if (const auto* sl = std::get_if<DSelL>(&comps[i]->node)) {
      left = true;
      subj = sl->subject;
      cont = sl->cont;
    } else if (const auto* sr = std::get_if<DSelR>(&comps[i]->node)) {
      left = false;
      subj = sr->subject;
      cont = sr->cont;
    } else {
      continue;
    }
    for (size_t j = 0; j < comps.size(); ++j) {
      if (i == j) continue;
      const auto* c = std::get_if<DCase>(&comps[j]->node);
      if (!c || c->subject != subj) continue;
      std::vector<DRestriction> res2 =
          res_with_ann(subj, project_ann(ann_of(subj), left));
      std::vector<DProcPtr> next;
      for (size_t k = 0; k < comps.size(); ++k) {
        if (k == i) {
          next.push_back(cont);
        } else if (k == j) {
          next.push_back(left ? c->left : c->right);
        } else {
          next.push_back(comps[k]);
        }
      }
      emit(left ? "RL" : "RR", normalize(detail::d_rebuild(res2, next)));
    }
  }

  return out;
}

std::vector<DProcPtr> reduce_dill(const DProcPtr& p) {
  std::vector<DProcPtr> out;
  for (auto& [tag, q] : reduce_dill_tagged(p)) out.push_back(q);
  return out;
}

// ---------- bounded execution ----------

Trace run_bounded(const SProcPtr& p, int budget) {
  Trace t;
  SProcPtr cur = normalize(p);
  for (int step = 0; step < budget; ++step) {
    auto succs = reduce_s_tagged(cur);
    if (succs.empty()) {
      t.verdict = Verdict::NormalForm;
      t.final_s = cur;
      return t;
    }
    cur = succs.front().second;
    t.steps.push_back({succs.front().first, show(cur)});
  }
  t.final_s = cur;
  t.verdict = reduce_s_tagged(cur).empty() ? Verdict::NormalForm : Verdict::BudgetExhausted;
  return t;
}

Trace run_bounded(const WProcPtr& p, int budget) {
  Trace t;
  WProcPtr cur = normalize(p);
  for (int step = 0; step < budget; ++step) {
    auto succs = tau_w(cur);
    if (succs.empty()) {
      t.verdict = Verdict::NormalForm;
      t.final_w = cur;
      return t;
    }
    cur = succs.front();
    t.steps.push_back({"Tau", show(cur)});
  }
  t.final_w = cur;
  t.verdict = tau_w(cur).empty() ? Verdict::NormalForm : Verdict::BudgetExhausted;
  return t;
}

Trace run_bounded(const DProcPtr& p, int budget) {
  Trace t;
  DProcPtr cur = normalize(p);
  for (int step = 0; step < budget; ++step) {
    auto succs = reduce_dill_tagged(cur);
    if (succs.empty()) {
      t.verdict = Verdict::NormalForm;
      t.final_d = cur;
      return t;
    }
    cur = succs.front().second;
    t.steps.push_back({succs.front().first, show(cur)});
  }
  t.final_d = cur;
  t.verdict =
      reduce_dill_tagged(cur).empty() ? Verdict::NormalForm : Verdict::BudgetExhausted;
  return t;
}

}  // namespace sessterm
