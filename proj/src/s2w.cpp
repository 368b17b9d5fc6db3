#include "sessterm/s2w.hpp"

#include <map>

namespace sessterm {

namespace {

Name aux_carrier(const Name& c, const std::string& path) {
  return Name(c.str() + "." + path + "a", 0);
}

// [[T]] at carrier c, per the continuation-passing scheme: the continuation
// keeps the carrier (and so its level), payloads get auxiliary carriers.
WType tr_type(const SType& t, const Name& c, const std::string& path) {
  return std::visit(
      [&](const auto& n) -> WType {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, STEnd>) {
          return wt_unit();
        } else if constexpr (std::is_same_v<T, STLin>) {
          WType payload = tr_type(*n.payload, aux_carrier(c, path), "");
          WType cont = tr_type(*n.cont, c, path + "c");
          if (n.dir == Dir::Recv) return wt_in(c, payload, cont);
          return wt_out(c, payload, cont);
        } else if constexpr (std::is_same_v<T, STServer>) {
          return wt_srv(c, tr_type(*n.payload, aux_carrier(c, path), ""));
        } else {
          return wt_cli(c, tr_type(*n.payload, aux_carrier(c, path), ""));
        }
      },
      t.node);
}

class Engine {
 public:
  explicit Engine(const SDerivPtr& root) {
    for (const auto& [x, t] : root->ctx.entries) supply_.reserve(x);
    supply_.reserve(all_names(root->proc));
  }

  WProcPtr translate(const SDerivation& d) {
    switch (d.rule) {
      case SRule::Nil:
        return w_nil();
      case SRule::Par:
        return w_par(translate(*d.premises[0]), translate(*d.premises[1]));
      case SRule::Res: {
        const auto& res = std::get<SRes>(d.proc->node);
        Name z = supply_.fresh("c");
        auto saved = rho_;
        rho_[res.endpoint_a] = z;
        rho_[res.endpoint_b] = z;
        WProcPtr body = translate(*d.premises[0]);
        rho_ = saved;
        WType half = canonical_half(tr_type(*res.type_a, z, ""));
        return w_res(z, body, half);
      }
      case SRule::LinIn1: {
        const auto& in = std::get<SInput>(d.proc->node);
        Name subj = rename(in.subject);
        Name z = supply_.fresh("k");
        auto saved = rho_;
        rho_[in.subject] = z;
        WProcPtr body = translate(*body_premise(d));
        rho_ = saved;
        return w_in(subj, in.binder, z, body);
      }
      case SRule::LinIn2: {
        const auto& in = std::get<SInput>(d.proc->node);
        Name z = supply_.fresh("k");
        return w_in(rename(in.subject), in.binder, z, translate(*body_premise(d)));
      }
      case SRule::UnIn: {
        const auto& in = std::get<SInput>(d.proc->node);
        Name z = supply_.fresh("k");
        return w_srv(rename(in.subject), in.binder, z, translate(*body_premise(d)));
      }
      case SRule::LinOut: {
        const auto& out = std::get<SOutput>(d.proc->node);
        const auto& lin = std::get<STLin>(d.subject_type->node);
        Name subj = rename(out.subject);
        Name z = supply_.fresh("k");
        auto saved = rho_;
        rho_[out.subject] = z;
        WProcPtr body = translate(*cont_premise(d));
        rho_ = saved;
        WType half = canonical_half(tr_type(*lin.cont, z, ""));
        return w_res(z, w_out(subj, rename(out.value), z, body), half);
      }
      case SRule::UnOut: {
        const auto& out = std::get<SOutput>(d.proc->node);
        Name z = supply_.fresh("k");
        fresh_units_.push_back(z);
        return w_out(rename(out.subject), rename(out.value), z,
                     translate(*cont_premise(d)));
      }
      case SRule::Var:
        throw CheckError("MissingTypeInfo", "variable judgment has no translation");
    }
    throw CheckError("MissingTypeInfo", "unhandled rule");
  }

  const std::vector<Name>& fresh_units() const { return fresh_units_; }

 private:
  NameSupply supply_;
  std::map<Name, Name> rho_;
  std::vector<Name> fresh_units_;

  Name rename(const Name& x) const {
    auto it = rho_.find(x);
    return it == rho_.end() ? x : it->second;
  }

  // premise layout: inputs [subject-var, body], outputs [subject-var,
  // value-var, cont]
  static const SDerivPtr& body_premise(const SDerivation& d) {
    return d.premises.back();
  }
  static const SDerivPtr& cont_premise(const SDerivation& d) {
    return d.premises.back();
  }
};

}  // namespace

WType translate_type_s2w(const SType& t, const LevelAssignment& l,
                         const Name& carrier) {
  return instantiate(tr_type(t, carrier, ""), l);
}

WProcPtr translate_proc_s2w(const SProcPtr& p, const SDerivPtr& typing) {
  if (!typing || !typing->proc || !alpha_eq(typing->proc, p))
    throw CheckError("MissingTypeInfo",
                     "typing derivation does not match the process");
  Engine e(typing);
  return e.translate(*typing);
}

S2WTranslation translate_judgment_s2w(const SDerivPtr& d) {
  if (!d) throw CheckError("MissingTypeInfo", "no derivation");
  Engine e(d);
  S2WTranslation out;
  out.proc = e.translate(*d);
  for (const auto& [x, t] : d->ctx.entries)
    out.context.add(x, WEntry{CtxMode::Plain, tr_type(t, x, "")});
  for (const Name& z : e.fresh_units())
    out.context.add(z, WEntry{CtxMode::Plain, wt_unit()});
  out.constraints = gen_constraints(out.context, out.proc);
  return out;
}

WProcPtr instantiate_proc(const WProcPtr& p, const LevelAssignment& l) {
  return std::visit(
      [&](const auto& n) -> WProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, WOutput>) {
          return w_out(n.subject, n.payload1, n.payload2,
                       instantiate_proc(n.cont, l));
        } else if constexpr (std::is_same_v<T, WInput>) {
          return w_in(n.subject, n.binder1, n.binder2, instantiate_proc(n.body, l));
        } else if constexpr (std::is_same_v<T, WServer>) {
          return w_srv(n.subject, n.binder1, n.binder2, instantiate_proc(n.body, l));
        } else if constexpr (std::is_same_v<T, WPar>) {
          return w_par(instantiate_proc(n.left, l), instantiate_proc(n.right, l));
        } else {
          std::optional<WType> ann;
          if (n.ann) ann = instantiate(*n.ann, l);
          return w_res(n.name, instantiate_proc(n.body, l), ann);
        }
      },
      p->node);
}

namespace {

void collect_symbolic_carriers(const WType& t, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (!std::is_same_v<T, WTUnit>) {
          if (const Name* c = std::get_if<Name>(&n.level)) out.insert(*c);
          if constexpr (std::is_same_v<T, WTIn> || std::is_same_v<T, WTOut>) {
            collect_symbolic_carriers(*n.payload1, out);
            collect_symbolic_carriers(*n.payload2, out);
          } else {
            collect_symbolic_carriers(*n.payload, out);
          }
        }
      },
      t.node);
}

void collect_proc_carriers(const WProcPtr& p, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WOutput>) {
          collect_proc_carriers(n.cont, out);
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          collect_proc_carriers(n.body, out);
        } else if constexpr (std::is_same_v<T, WPar>) {
          collect_proc_carriers(n.left, out);
          collect_proc_carriers(n.right, out);
        } else if constexpr (std::is_same_v<T, WRes>) {
          if (n.ann) collect_symbolic_carriers(*n.ann, out);
          collect_proc_carriers(n.body, out);
        }
      },
      p->node);
}

}  // namespace

InWVerdict in_W(const SourceFile& file) {
  InWVerdict v;
  if (file.calculus != Calculus::S)
    throw CheckError("MissingTypeInfo", "in_W needs a πS file");
  SCtx g;
  for (const auto& [x, t] : file.s_types) g.add(x, t);
  SDerivPtr deriv;
  try {
    deriv = check_s(g, file.sproc);
  } catch (const CheckError& e) {
    v.code = "NotInS";
    v.reason = e.what();
    return v;
  }
  S2WTranslation t = translate_judgment_s2w(deriv);
  LevelAssignment solved;
  try {
    solved = solve_levels(t.constraints);
  } catch (const UnsatisfiableError& e) {
    v.code = "NotInW";
    v.reason = e.what();
    return v;
  }
  // names not mentioned by any constraint default to level 1
  NameSet carriers;
  for (const auto& [x, e] : t.context.entries)
    collect_symbolic_carriers(e.type, carriers);
  collect_proc_carriers(t.proc, carriers);
  for (const Name& c : carriers)
    if (!solved.count(c)) solved[c] = 1;
  WCtx concrete;
  for (const auto& [x, e] : t.context.entries)
    concrete.add(x, WEntry{e.mode, instantiate(e.type, solved)});
  WProcPtr cproc = instantiate_proc(t.proc, solved);
  LevelAssignment induced = derive_levels(concrete, cproc);
  try {
    check_w(concrete, cproc, induced);
  } catch (const CheckError& e) {
    v.code = "NotInW";
    v.reason = e.what();
    return v;
  }
  v.accepted = true;
  v.levels = induced;
  v.context = concrete;
  v.proc = cproc;
  return v;
}

}  // namespace sessterm
