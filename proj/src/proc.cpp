#include "sessterm/proc.hpp"

#include <map>
#include <sstream>

namespace sessterm {

SProcPtr s_nil() { return std::make_shared<const SProc>(SProc{SNil{}}); }
SProcPtr s_out(Name x, Name v, SProcPtr p) {
  return std::make_shared<const SProc>(
      SProc{SOutput{std::move(x), std::move(v), std::move(p)}});
}
SProcPtr s_in(Qual q, Name x, Name y, SProcPtr p) {
  return std::make_shared<const SProc>(
      SProc{SInput{q, std::move(x), std::move(y), std::move(p)}});
}
SProcPtr s_par(SProcPtr l, SProcPtr r) {
  return std::make_shared<const SProc>(SProc{SPar{std::move(l), std::move(r)}});
}
SProcPtr s_res(Name a, Name b, SProcPtr p, std::optional<SType> ta) {
  return std::make_shared<const SProc>(
      SProc{SRes{std::move(a), std::move(b), std::move(ta), std::move(p)}});
}

WProcPtr w_nil() { return std::make_shared<const WProc>(WProc{WNil{}}); }
WProcPtr w_out(Name x, Name v1, Name v2, WProcPtr p) {
  return std::make_shared<const WProc>(
      WProc{WOutput{std::move(x), std::move(v1), std::move(v2), std::move(p)}});
}
WProcPtr w_in(Name x, Name y1, Name y2, WProcPtr p) {
  return std::make_shared<const WProc>(
      WProc{WInput{std::move(x), std::move(y1), std::move(y2), std::move(p)}});
}
WProcPtr w_srv(Name x, Name y1, Name y2, WProcPtr p) {
  return std::make_shared<const WProc>(
      WProc{WServer{std::move(x), std::move(y1), std::move(y2), std::move(p)}});
}
WProcPtr w_par(WProcPtr l, WProcPtr r) {
  return std::make_shared<const WProc>(WProc{WPar{std::move(l), std::move(r)}});
}
WProcPtr w_res(Name x, WProcPtr p, std::optional<WType> ann) {
  return std::make_shared<const WProc>(
      WProc{WRes{std::move(x), std::move(ann), std::move(p)}});
}

DProcPtr d_nil() { return std::make_shared<const DProc>(DProc{DNil{}}); }
DProcPtr d_bout(Name x, Name z, DProcPtr p) {
  return std::make_shared<const DProc>(
      DProc{DBoundOut{std::move(x), std::move(z), std::move(p)}});
}
DProcPtr d_in(Name x, Name y, DProcPtr p) {
  return std::make_shared<const DProc>(
      DProc{DInput{std::move(x), std::move(y), std::move(p)}});
}
DProcPtr d_srv(Name x, Name y, DProcPtr p) {
  return std::make_shared<const DProc>(
      DProc{DServer{std::move(x), std::move(y), std::move(p)}});
}
DProcPtr d_par(DProcPtr l, DProcPtr r) {
  return std::make_shared<const DProc>(DProc{DPar{std::move(l), std::move(r)}});
}
DProcPtr d_res(Name x, DProcPtr p, std::optional<DType> ann) {
  return std::make_shared<const DProc>(
      DProc{DRes{std::move(x), std::move(ann), std::move(p)}});
}
DProcPtr d_fwd(Name x, Name y) {
  return std::make_shared<const DProc>(DProc{DForward{std::move(x), std::move(y)}});
}
DProcPtr d_sell(Name x, DProcPtr p) {
  return std::make_shared<const DProc>(DProc{DSelL{std::move(x), std::move(p)}});
}
DProcPtr d_selr(Name x, DProcPtr p) {
  return std::make_shared<const DProc>(DProc{DSelR{std::move(x), std::move(p)}});
}
DProcPtr d_case(Name x, DProcPtr l, DProcPtr r) {
  return std::make_shared<const DProc>(
      DProc{DCase{std::move(x), std::move(l), std::move(r)}});
}

DProcPtr d_repl_fwd(Name x, Name y, NameSupply& supply) {
  Name z = supply.fresh("k");
  Name k = supply.fresh("k");
  return d_srv(y, z, d_bout(x, k, d_fwd(k, z)));
}

// ---------------- free / all names ----------------

namespace {

void collect_s(const SProcPtr& p, NameSet bound, NameSet& free, NameSet* all) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        auto note = [&](const Name& x) {
          if (all) all->insert(x);
          if (!bound.count(x)) free.insert(x);
        };
        if constexpr (std::is_same_v<T, SNil>) {
        } else if constexpr (std::is_same_v<T, SOutput>) {
          note(n.subject);
          note(n.value);
          collect_s(n.cont, bound, free, all);
        } else if constexpr (std::is_same_v<T, SInput>) {
          note(n.subject);
          if (all) all->insert(n.binder);
          bound.insert(n.binder);
          collect_s(n.body, bound, free, all);
        } else if constexpr (std::is_same_v<T, SPar>) {
          collect_s(n.left, bound, free, all);
          collect_s(n.right, bound, free, all);
        } else {
          if (all) {
            all->insert(n.endpoint_a);
            all->insert(n.endpoint_b);
          }
          bound.insert(n.endpoint_a);
          bound.insert(n.endpoint_b);
          collect_s(n.body, bound, free, all);
        }
      },
      p->node);
}

void collect_w(const WProcPtr& p, NameSet bound, NameSet& free, NameSet* all) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        auto note = [&](const Name& x) {
          if (all) all->insert(x);
          if (!bound.count(x)) free.insert(x);
        };
        if constexpr (std::is_same_v<T, WNil>) {
        } else if constexpr (std::is_same_v<T, WOutput>) {
          note(n.subject);
          note(n.payload1);
          note(n.payload2);
          collect_w(n.cont, bound, free, all);
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          note(n.subject);
          if (all) {
            all->insert(n.binder1);
            all->insert(n.binder2);
          }
          bound.insert(n.binder1);
          bound.insert(n.binder2);
          collect_w(n.body, bound, free, all);
        } else if constexpr (std::is_same_v<T, WPar>) {
          collect_w(n.left, bound, free, all);
          collect_w(n.right, bound, free, all);
        } else {
          if (all) all->insert(n.name);
          bound.insert(n.name);
          collect_w(n.body, bound, free, all);
        }
      },
      p->node);
}

void collect_d(const DProcPtr& p, NameSet bound, NameSet& free, NameSet* all) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        auto note = [&](const Name& x) {
          if (all) all->insert(x);
          if (!bound.count(x)) free.insert(x);
        };
        if constexpr (std::is_same_v<T, DNil>) {
        } else if constexpr (std::is_same_v<T, DBoundOut> ||
                             std::is_same_v<T, DInput> ||
                             std::is_same_v<T, DServer>) {
          note(n.subject);
          if (all) all->insert(n.binder);
          bound.insert(n.binder);
          if constexpr (std::is_same_v<T, DBoundOut>)
            collect_d(n.cont, bound, free, all);
          else
            collect_d(n.body, bound, free, all);
        } else if constexpr (std::is_same_v<T, DPar>) {
          collect_d(n.left, bound, free, all);
          collect_d(n.right, bound, free, all);
        } else if constexpr (std::is_same_v<T, DRes>) {
          if (all) all->insert(n.name);
          bound.insert(n.name);
          collect_d(n.body, bound, free, all);
        } else if constexpr (std::is_same_v<T, DForward>) {
          note(n.from);
          note(n.to);
        } else if constexpr (std::is_same_v<T, DSelL> ||
                             std::is_same_v<T, DSelR>) {
          note(n.subject);
          collect_d(n.cont, bound, free, all);
        } else {
          note(n.subject);
          collect_d(n.left, bound, free, all);
          collect_d(n.right, bound, free, all);
        }
      },
      p->node);
}

}  // namespace

NameSet free_names(const SProcPtr& p) {
  NameSet f;
  collect_s(p, {}, f, nullptr);
  return f;
}
NameSet free_names(const WProcPtr& p) {
  NameSet f;
  collect_w(p, {}, f, nullptr);
  return f;
}
NameSet free_names(const DProcPtr& p) {
  NameSet f;
  collect_d(p, {}, f, nullptr);
  return f;
}
NameSet all_names(const SProcPtr& p) {
  NameSet f, a;
  collect_s(p, {}, f, &a);
  return a;
}
NameSet all_names(const WProcPtr& p) {
  NameSet f, a;
  collect_w(p, {}, f, &a);
  return a;
}
NameSet all_names(const DProcPtr& p) {
  NameSet f, a;
  collect_d(p, {}, f, &a);
  return a;
}

// ---------------- substitution ----------------

namespace {

Name bind_s(const Name& b, std::map<Name, Name>& sub, NameSupply& supply) {
  // Shadowing: the binder cancels any pending substitution for it.
  sub.erase(b);
  // Capture: if some substitution target equals the binder, rename the binder.
  for (const auto& [from, to] : sub) {
    if (to == b) {
      Name nb = supply.fresh_like(b);
      sub[b] = nb;
      return nb;
    }
  }
  return b;
}

SProcPtr subst_s(const SProcPtr& p, std::map<Name, Name> sub, NameSupply& supply) {
  auto ren = [&sub](const Name& x) {
    auto it = sub.find(x);
    return it == sub.end() ? x : it->second;
  };
  return std::visit(
      [&](const auto& n) -> SProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, SOutput>) {
          return s_out(ren(n.subject), ren(n.value), subst_s(n.cont, sub, supply));
        } else if constexpr (std::is_same_v<T, SInput>) {
          Name subj = ren(n.subject);
          auto sub2 = sub;
          Name b = bind_s(n.binder, sub2, supply);
          return s_in(n.qual, subj, b, subst_s(n.body, sub2, supply));
        } else if constexpr (std::is_same_v<T, SPar>) {
          return s_par(subst_s(n.left, sub, supply), subst_s(n.right, sub, supply));
        } else {
          auto sub2 = sub;
          Name a = bind_s(n.endpoint_a, sub2, supply);
          Name b = bind_s(n.endpoint_b, sub2, supply);
          return s_res(a, b, subst_s(n.body, sub2, supply), n.type_a);
        }
      },
      p->node);
}

WProcPtr subst_w(const WProcPtr& p, std::map<Name, Name> sub, NameSupply& supply) {
  auto ren = [&sub](const Name& x) {
    auto it = sub.find(x);
    return it == sub.end() ? x : it->second;
  };
  return std::visit(
      [&](const auto& n) -> WProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, WOutput>) {
          return w_out(ren(n.subject), ren(n.payload1), ren(n.payload2),
                       subst_w(n.cont, sub, supply));
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          Name subj = ren(n.subject);
          auto sub2 = sub;
          Name b1 = bind_s(n.binder1, sub2, supply);
          Name b2 = bind_s(n.binder2, sub2, supply);
          WProcPtr body = subst_w(n.body, sub2, supply);
          if constexpr (std::is_same_v<T, WInput>)
            return w_in(subj, b1, b2, body);
          else
            return w_srv(subj, b1, b2, body);
        } else if constexpr (std::is_same_v<T, WPar>) {
          return w_par(subst_w(n.left, sub, supply), subst_w(n.right, sub, supply));
        } else {
          auto sub2 = sub;
          Name x = bind_s(n.name, sub2, supply);
          return w_res(x, subst_w(n.body, sub2, supply), n.ann);
        }
      },
      p->node);
}

DProcPtr subst_d(const DProcPtr& p, std::map<Name, Name> sub, NameSupply& supply) {
  auto ren = [&sub](const Name& x) {
    auto it = sub.find(x);
    return it == sub.end() ? x : it->second;
  };
  return std::visit(
      [&](const auto& n) -> DProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, DBoundOut>) {
          Name subj = ren(n.subject);
          auto sub2 = sub;
          Name b = bind_s(n.binder, sub2, supply);
          return d_bout(subj, b, subst_d(n.cont, sub2, supply));
        } else if constexpr (std::is_same_v<T, DInput> ||
                             std::is_same_v<T, DServer>) {
          Name subj = ren(n.subject);
          auto sub2 = sub;
          Name b = bind_s(n.binder, sub2, supply);
          DProcPtr body = subst_d(n.body, sub2, supply);
          if constexpr (std::is_same_v<T, DInput>)
            return d_in(subj, b, body);
          else
            return d_srv(subj, b, body);
        } else if constexpr (std::is_same_v<T, DPar>) {
          return d_par(subst_d(n.left, sub, supply), subst_d(n.right, sub, supply));
        } else if constexpr (std::is_same_v<T, DRes>) {
          auto sub2 = sub;
          Name x = bind_s(n.name, sub2, supply);
          return d_res(x, subst_d(n.body, sub2, supply), n.ann);
        } else if constexpr (std::is_same_v<T, DForward>) {
          return d_fwd(ren(n.from), ren(n.to));
        } else if constexpr (std::is_same_v<T, DSelL>) {
          return d_sell(ren(n.subject), subst_d(n.cont, sub, supply));
        } else if constexpr (std::is_same_v<T, DSelR>) {
          return d_selr(ren(n.subject), subst_d(n.cont, sub, supply));
        } else {
          return d_case(ren(n.subject), subst_d(n.left, sub, supply),
                        subst_d(n.right, sub, supply));
        }
      },
      p->node);
}

}  // namespace

SProcPtr substitute(const SProcPtr& p, const Name& value, const Name& variable) {
  if (value == variable) return p;
  NameSupply supply;
  supply.reserve(all_names(p));
  supply.reserve(value);
  return subst_s(p, {{variable, value}}, supply);
}
WProcPtr substitute(const WProcPtr& p, const Name& value, const Name& variable) {
  if (value == variable) return p;
  NameSupply supply;
  supply.reserve(all_names(p));
  supply.reserve(value);
  return subst_w(p, {{variable, value}}, supply);
}
DProcPtr substitute(const DProcPtr& p, const Name& value, const Name& variable) {
  if (value == variable) return p;
  NameSupply supply;
  supply.reserve(all_names(p));
  supply.reserve(value);
  return subst_d(p, {{variable, value}}, supply);
}

// ---------------- alpha equivalence ----------------

namespace {

struct AlphaEnv {
  std::map<Name, int> left, right;
  int next = 0;

  AlphaEnv child_with(const Name& a, const Name& b) const {
    AlphaEnv e = *this;
    e.left[a] = e.next;
    e.right[b] = e.next;
    ++e.next;
    return e;
  }
  bool same(const Name& a, const Name& b) const {
    auto la = left.find(a);
    auto rb = right.find(b);
    if (la != left.end() || rb != right.end()) {
      return la != left.end() && rb != right.end() && la->second == rb->second;
    }
    return a == b;  // both free
  }
};

bool aeq_s(const SProcPtr& a, const SProcPtr& b, const AlphaEnv& env) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, SNil>) {
          return true;
        } else if constexpr (std::is_same_v<T, SOutput>) {
          return env.same(na.subject, nb.subject) && env.same(na.value, nb.value) &&
                 aeq_s(na.cont, nb.cont, env);
        } else if constexpr (std::is_same_v<T, SInput>) {
          return na.qual == nb.qual && env.same(na.subject, nb.subject) &&
                 aeq_s(na.body, nb.body, env.child_with(na.binder, nb.binder));
        } else if constexpr (std::is_same_v<T, SPar>) {
          return aeq_s(na.left, nb.left, env) && aeq_s(na.right, nb.right, env);
        } else {
          return aeq_s(na.body, nb.body,
                       env.child_with(na.endpoint_a, nb.endpoint_a)
                           .child_with(na.endpoint_b, nb.endpoint_b));
        }
      },
      a->node);
}

bool aeq_w(const WProcPtr& a, const WProcPtr& b, const AlphaEnv& env) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, WNil>) {
          return true;
        } else if constexpr (std::is_same_v<T, WOutput>) {
          return env.same(na.subject, nb.subject) &&
                 env.same(na.payload1, nb.payload1) &&
                 env.same(na.payload2, nb.payload2) && aeq_w(na.cont, nb.cont, env);
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          return env.same(na.subject, nb.subject) &&
                 aeq_w(na.body, nb.body,
                       env.child_with(na.binder1, nb.binder1)
                           .child_with(na.binder2, nb.binder2));
        } else if constexpr (std::is_same_v<T, WPar>) {
          return aeq_w(na.left, nb.left, env) && aeq_w(na.right, nb.right, env);
        } else {
          return aeq_w(na.body, nb.body, env.child_with(na.name, nb.name));
        }
      },
      a->node);
}

bool aeq_d(const DProcPtr& a, const DProcPtr& b, const AlphaEnv& env) {
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, DNil>) {
          return true;
        } else if constexpr (std::is_same_v<T, DBoundOut>) {
          return env.same(na.subject, nb.subject) &&
                 aeq_d(na.cont, nb.cont, env.child_with(na.binder, nb.binder));
        } else if constexpr (std::is_same_v<T, DInput> ||
                             std::is_same_v<T, DServer>) {
          return env.same(na.subject, nb.subject) &&
                 aeq_d(na.body, nb.body, env.child_with(na.binder, nb.binder));
        } else if constexpr (std::is_same_v<T, DPar>) {
          return aeq_d(na.left, nb.left, env) && aeq_d(na.right, nb.right, env);
        } else if constexpr (std::is_same_v<T, DRes>) {
          return aeq_d(na.body, nb.body, env.child_with(na.name, nb.name));
        } else if constexpr (std::is_same_v<T, DForward>) {
          return env.same(na.from, nb.from) && env.same(na.to, nb.to);
        } else if constexpr (std::is_same_v<T, DSelL> ||
                             std::is_same_v<T, DSelR>) {
          return env.same(na.subject, nb.subject) && aeq_d(na.cont, nb.cont, env);
        } else {
          return env.same(na.subject, nb.subject) &&
                 aeq_d(na.left, nb.left, env) && aeq_d(na.right, nb.right, env);
        }
      },
      a->node);
}

}  // namespace

bool alpha_eq(const SProcPtr& a, const SProcPtr& b) { return aeq_s(a, b, {}); }
bool alpha_eq(const WProcPtr& a, const WProcPtr& b) { return aeq_w(a, b, {}); }
bool alpha_eq(const DProcPtr& a, const DProcPtr& b) { return aeq_d(a, b, {}); }

// ---------------- Barendregt normalization ----------------

namespace {

struct NormState {
  NameSupply supply;
  NameSet taken;  // free names plus binders met so far

  Name admit(const Name& b, std::map<Name, Name>& sub) {
    sub.erase(b);
    Name out = b;
    if (taken.count(b)) {
      out = supply.fresh_like(b);
      sub[b] = out;
    }
    taken.insert(out);
    return out;
  }
};

SProcPtr norm_s(const SProcPtr& p, std::map<Name, Name> sub, NormState& st) {
  auto ren = [&sub](const Name& x) {
    auto it = sub.find(x);
    return it == sub.end() ? x : it->second;
  };
  return std::visit(
      [&](const auto& n) -> SProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, SOutput>) {
          return s_out(ren(n.subject), ren(n.value), norm_s(n.cont, sub, st));
        } else if constexpr (std::is_same_v<T, SInput>) {
          Name subj = ren(n.subject);
          auto sub2 = sub;
          Name b = st.admit(n.binder, sub2);
          return s_in(n.qual, subj, b, norm_s(n.body, sub2, st));
        } else if constexpr (std::is_same_v<T, SPar>) {
          return s_par(norm_s(n.left, sub, st), norm_s(n.right, sub, st));
        } else {
          auto sub2 = sub;
          Name a = st.admit(n.endpoint_a, sub2);
          Name b = st.admit(n.endpoint_b, sub2);
          return s_res(a, b, norm_s(n.body, sub2, st), n.type_a);
        }
      },
      p->node);
}

WProcPtr norm_w(const WProcPtr& p, std::map<Name, Name> sub, NormState& st) {
  auto ren = [&sub](const Name& x) {
    auto it = sub.find(x);
    return it == sub.end() ? x : it->second;
  };
  return std::visit(
      [&](const auto& n) -> WProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, WOutput>) {
          return w_out(ren(n.subject), ren(n.payload1), ren(n.payload2),
                       norm_w(n.cont, sub, st));
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          Name subj = ren(n.subject);
          auto sub2 = sub;
          Name b1 = st.admit(n.binder1, sub2);
          Name b2 = st.admit(n.binder2, sub2);
          WProcPtr body = norm_w(n.body, sub2, st);
          if constexpr (std::is_same_v<T, WInput>)
            return w_in(subj, b1, b2, body);
          else
            return w_srv(subj, b1, b2, body);
        } else if constexpr (std::is_same_v<T, WPar>) {
          return w_par(norm_w(n.left, sub, st), norm_w(n.right, sub, st));
        } else {
          auto sub2 = sub;
          Name x = st.admit(n.name, sub2);
          return w_res(x, norm_w(n.body, sub2, st), n.ann);
        }
      },
      p->node);
}

DProcPtr norm_d(const DProcPtr& p, std::map<Name, Name> sub, NormState& st) {
  auto ren = [&sub](const Name& x) {
    auto it = sub.find(x);
    return it == sub.end() ? x : it->second;
  };
  return std::visit(
      [&](const auto& n) -> DProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, DBoundOut>) {
          Name subj = ren(n.subject);
          auto sub2 = sub;
          Name b = st.admit(n.binder, sub2);
          return d_bout(subj, b, norm_d(n.cont, sub2, st));
        } else if constexpr (std::is_same_v<T, DInput> ||
                             std::is_same_v<T, DServer>) {
          Name subj = ren(n.subject);
          auto sub2 = sub;
          Name b = st.admit(n.binder, sub2);
          DProcPtr body = norm_d(n.body, sub2, st);
          if constexpr (std::is_same_v<T, DInput>)
            return d_in(subj, b, body);
          else
            return d_srv(subj, b, body);
        } else if constexpr (std::is_same_v<T, DPar>) {
          return d_par(norm_d(n.left, sub, st), norm_d(n.right, sub, st));
        } else if constexpr (std::is_same_v<T, DRes>) {
          auto sub2 = sub;
          Name x = st.admit(n.name, sub2);
          return d_res(x, norm_d(n.body, sub2, st), n.ann);
        } else if constexpr (std::is_same_v<T, DForward>) {
          return d_fwd(ren(n.from), ren(n.to));
        } else if constexpr (std::is_same_v<T, DSelL>) {
          return d_sell(ren(n.subject), norm_d(n.cont, sub, st));
        } else if constexpr (std::is_same_v<T, DSelR>) {
          return d_selr(ren(n.subject), norm_d(n.cont, sub, st));
        } else {
          return d_case(ren(n.subject), norm_d(n.left, sub, st),
                        norm_d(n.right, sub, st));
        }
      },
      p->node);
}

}  // namespace

SProcPtr normalize(const SProcPtr& p, const NameSet& avoid) {
  NormState st;
  st.supply.reserve(all_names(p));
  st.supply.reserve(avoid);
  st.taken = free_names(p);
  st.taken.insert(avoid.begin(), avoid.end());
  return norm_s(p, {}, st);
}
WProcPtr normalize(const WProcPtr& p, const NameSet& avoid) {
  NormState st;
  st.supply.reserve(all_names(p));
  st.supply.reserve(avoid);
  st.taken = free_names(p);
  st.taken.insert(avoid.begin(), avoid.end());
  return norm_w(p, {}, st);
}
DProcPtr normalize(const DProcPtr& p, const NameSet& avoid) {
  NormState st;
  st.supply.reserve(all_names(p));
  st.supply.reserve(avoid);
  st.taken = free_names(p);
  st.taken.insert(avoid.begin(), avoid.end());
  return norm_d(p, {}, st);
}

// ---------------- printing ----------------

namespace {
// Prefix continuations bind tighter than '|', so parallels are parenthesized
// whenever they appear as a continuation or under a prefix.
std::string show_s(const SProcPtr& p, bool atom) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SNil>) {
          return "0";
        } else if constexpr (std::is_same_v<T, SOutput>) {
          return n.subject.str() + "!" + n.value.str() + "." +
                 show_s(n.cont, true);
        } else if constexpr (std::is_same_v<T, SInput>) {
          std::string q = n.qual == Qual::Lin ? "lin" : "un";
          return q + " " + n.subject.str() + "(" + n.binder.str() + ")." +
                 show_s(n.body, true);
        } else if constexpr (std::is_same_v<T, SPar>) {
          std::string s = show_s(n.left, true) + " | " + show_s(n.right, true);
          return atom ? "(" + s + ")" : s;
        } else {
          return "new " + n.endpoint_a.str() + " " + n.endpoint_b.str() + ". " +
                 show_s(n.body, true);
        }
      },
      p->node);
}

std::string show_w(const WProcPtr& p, bool atom) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
          return "0";
        } else if constexpr (std::is_same_v<T, WOutput>) {
          return n.subject.str() + "!(" + n.payload1.str() + "," +
                 n.payload2.str() + ")." + show_w(n.cont, true);
        } else if constexpr (std::is_same_v<T, WInput>) {
          return n.subject.str() + "(" + n.binder1.str() + "," + n.binder2.str() +
                 ")." + show_w(n.body, true);
        } else if constexpr (std::is_same_v<T, WServer>) {
          return "!" + n.subject.str() + "(" + n.binder1.str() + "," +
                 n.binder2.str() + ")." + show_w(n.body, true);
        } else if constexpr (std::is_same_v<T, WPar>) {
          std::string s = show_w(n.left, true) + " | " + show_w(n.right, true);
          return atom ? "(" + s + ")" : s;
        } else {
          return "new " + n.name.str() + ". " + show_w(n.body, true);
        }
      },
      p->node);
}

std::string show_d(const DProcPtr& p, bool atom) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DNil>) {
          return "0";
        } else if constexpr (std::is_same_v<T, DBoundOut>) {
          return n.subject.str() + "!(" + n.binder.str() + ")." +
                 show_d(n.cont, true);
        } else if constexpr (std::is_same_v<T, DInput>) {
          return n.subject.str() + "(" + n.binder.str() + ")." +
                 show_d(n.body, true);
        } else if constexpr (std::is_same_v<T, DServer>) {
          return "!" + n.subject.str() + "(" + n.binder.str() + ")." +
                 show_d(n.body, true);
        } else if constexpr (std::is_same_v<T, DPar>) {
          std::string s = show_d(n.left, true) + " | " + show_d(n.right, true);
          return atom ? "(" + s + ")" : s;
        } else if constexpr (std::is_same_v<T, DRes>) {
          std::string ann = n.ann ? " : " + show(*n.ann) : "";
          return "new " + n.name.str() + ann + ". " + show_d(n.body, true);
        } else if constexpr (std::is_same_v<T, DForward>) {
          return "fwd " + n.from.str() + " " + n.to.str();
        } else if constexpr (std::is_same_v<T, DSelL>) {
          return n.subject.str() + ".inl;" + show_d(n.cont, true);
        } else if constexpr (std::is_same_v<T, DSelR>) {
          return n.subject.str() + ".inr;" + show_d(n.cont, true);
        } else {
          return n.subject.str() + ".case(" + show_d(n.left, false) + "," +
                 show_d(n.right, false) + ")";
        }
      },
      p->node);
}
}  // namespace

std::string show(const SProcPtr& p) { return show_s(p, false); }
std::string show(const WProcPtr& p) { return show_w(p, false); }
std::string show(const DProcPtr& p) { return show_d(p, false); }

}  // namespace sessterm
