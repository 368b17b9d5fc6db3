#include "sessterm/s2dill.hpp"

#include <map>

namespace sessterm {

namespace {

void require_not_mixed(const SType& t) {
  if (srv_pred(t) && cli_pred(t))
    throw CheckError("MixedServerClient",
                     show(t) + " has both server and client behavior");
}

}  // namespace

DType translate_type_s2dill(const SType& t) {
  return std::visit(
      [&](const auto& n) -> DType {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, STEnd>) {
          return dt_bang(dt_one());
        } else if constexpr (std::is_same_v<T, STLin>) {
          DType pl = translate_type_s2dill(*n.payload);
          DType ct = translate_type_s2dill(*n.cont);
          // send is -o, receive is *
          return n.dir == Dir::Send ? dt_lolli(pl, ct) : dt_tensor(pl, ct);
        } else if constexpr (std::is_same_v<T, STServer>) {
          const SType& payload = *n.payload;
          require_not_mixed(payload);
          DType pl = translate_type_s2dill(payload);
          if (srv_pred(payload)) return dt_bang(pl);
          if (cli_pred(payload)) return dt_bang(dt_tensor(pl, dt_one()));
          return dt_bang(dt_plus(dt_tensor(pl, dt_one()), pl));
        } else {
          const SType& payload = *n.payload;
          require_not_mixed(payload);
          DType pl = translate_type_s2dill(payload);
          if (srv_pred(payload))
            return dt_bang(translate_type_s2dill(dual_s(payload)));
          if (cli_pred(payload)) return dt_bang(dt_lolli(pl, dt_one()));
          return dt_bang(dt_with(dt_lolli(pl, dt_one()),
                                 translate_type_s2dill(dual_s(payload))));
        }
      },
      t.node);
}

DType offered_type_s2dill(const SType& t) {
  return std::visit(
      [&](const auto& n) -> DType {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, STEnd>) {
          return dt_one();
        } else if constexpr (std::is_same_v<T, STLin>) {
          DType pl = translate_type_s2dill(*n.payload);
          DType ct = offered_type_s2dill(*n.cont);
          // the owner of ?T.S receives: -o; the owner of !T.S sends: *
          return n.dir == Dir::Recv ? dt_lolli(pl, ct) : dt_tensor(pl, ct);
        } else if constexpr (std::is_same_v<T, STServer>) {
          const SType& payload = *n.payload;
          require_not_mixed(payload);
          DType pl = translate_type_s2dill(payload);
          if (srv_pred(payload)) return dt_bang(offered_type_s2dill(payload));
          if (cli_pred(payload)) return dt_bang(dt_lolli(pl, dt_one()));
          return dt_bang(
              dt_with(dt_lolli(pl, dt_one()), offered_type_s2dill(payload)));
        } else {
          // a client-owned root: the dual server side, context form
          return translate_type_s2dill(dual_s(SType{n}));
        }
      },
      t.node);
}

namespace {

struct Root {
  Name target;
  std::optional<SType> type;  // absent: fresh root, offers 1
};

NameSet mapped_free(const SProcPtr& p, const std::map<Name, Name>& rho) {
  NameSet out;
  for (const Name& x : free_names(p)) {
    auto it = rho.find(x);
    out.insert(it == rho.end() ? x : it->second);
  }
  return out;
}

class Engine {
 public:
  Engine(const SDerivPtr& root, bool judgment_mode)
      : judgment_mode_(judgment_mode) {
    for (const auto& [x, t] : root->ctx.entries) supply_.reserve(x);
    supply_.reserve(all_names(root->proc));
  }

  NameSupply& supply() { return supply_; }

  DProcPtr translate(const SDerivation& d, const Root& u) {
    switch (d.rule) {
      case SRule::Nil: {
        if (judgment_mode_ && u.type && !(*u.type == st_end()))
          throw CheckError("RowConditionViolation",
                           "row 1: inaction offers 1, root " + u.target.str() +
                               " demands " + show(offered_type_s2dill(*u.type)));
        return d_nil();
      }
      case SRule::Par: {
        const SDerivation& l = *d.premises[0];
        const SDerivation& r = *d.premises[1];
        if (judgment_mode_ && mapped_free(l.proc, rho_).count(u.target))
          throw CheckError("RowConditionViolation",
                           "row 2: root " + u.target.str() +
                               " occurs in the left component");
        Name w = supply_.fresh("w");
        DProcPtr lp = translate(l, Root{w, std::nullopt});
        DProcPtr rp = translate(r, u);
        return d_res(w, d_par(lp, rp), dt_one());
      }
      case SRule::Res:
        return translate_res(d, u);
      case SRule::LinIn1: {
        const auto& in = std::get<SInput>(d.proc->node);
        const auto& lin = std::get<STLin>(d.subject_type->node);
        Name subj = rename(in.subject);
        Root sub = u;
        if (u.target == subj) sub = Root{subj, *lin.cont};
        DProcPtr body = translate(*d.premises.back(), sub);
        return d_in(subj, in.binder, body);
      }
      case SRule::LinIn2:
        throw CheckError("NoClauseApplies",
                         "a linear input on a server-typed subject has no "
                         "translation clause");
      case SRule::UnIn:
        return translate_unin(d, u);
      case SRule::LinOut:
        return translate_free_out_lin(d, u);
      case SRule::UnOut:
        return translate_free_out_un(d, u);
      case SRule::Var:
        throw CheckError("NoClauseApplies", "variable judgment");
    }
    throw CheckError("NoClauseApplies", "unhandled rule");
  }

 private:
  bool judgment_mode_;
  NameSupply supply_;
  std::map<Name, Name> rho_;

  Name rename(const Name& x) const {
    auto it = rho_.find(x);
    return it == rho_.end() ? x : it->second;
  }

  // new x y. _ patterns: rows 3 (parallel body), 6 and 7 (bound outputs)
  DProcPtr translate_res(const SDerivation& d, const Root& u) {
    const auto& res = std::get<SRes>(d.proc->node);
    const SDerivation& body = *d.premises[0];
    const SType& ta = *res.type_a;

    if (body.rule == SRule::Par) {
      const SDerivation& l = *body.premises[0];
      const SDerivation& r = *body.premises[1];
      NameSet fl = free_names(l.proc), fr = free_names(r.proc);
      Name z = res.endpoint_a, v = res.endpoint_b;
      SType tz = ta;
      bool a_l = fl.count(res.endpoint_a), a_r = fr.count(res.endpoint_a);
      bool b_l = fl.count(res.endpoint_b), b_r = fr.count(res.endpoint_b);
      if ((a_l && a_r) || (b_l && b_r))
        throw CheckError("RowConditionViolation",
                         "row 3: a restriction endpoint occurs on both sides");
      if (b_l || a_r) {
        if (a_l || b_r)
          throw CheckError("RowConditionViolation",
                           "row 3: endpoints are not split across the "
                           "components");
        std::swap(z, v);
        tz = dual_s(ta);
      }
      if (judgment_mode_ && mapped_free(l.proc, rho_).count(u.target))
        throw CheckError("RowConditionViolation",
                         "row 3: root " + u.target.str() +
                             " occurs in the left component");
      Name zt = rename(z);
      DType ann = offered_type_s2dill(tz);
      DProcPtr lp = translate(l, Root{zt, tz});
      auto saved = rho_;
      rho_[v] = zt;
      DProcPtr rp = translate(r, u);
      rho_ = saved;
      return d_res(zt, d_par(lp, rp), ann);
    }

    if (body.rule == SRule::UnOut || body.rule == SRule::LinOut) {
      const auto& out = std::get<SOutput>(body.proc->node);
      bool sent_a = out.value == res.endpoint_a;
      bool sent_b = out.value == res.endpoint_b;
      if (!sent_a && !sent_b)
        throw CheckError("NoRowApplies",
                         "restriction over an output that does not send an "
                         "endpoint");
      Name sent = sent_a ? res.endpoint_a : res.endpoint_b;
      Name kept = sent_a ? res.endpoint_b : res.endpoint_a;
      SType t_sent = sent_a ? ta : dual_s(ta);
      if (body.rule == SRule::UnOut) return row6(d, body, u, sent, kept, t_sent);
      return row7(d, body, u, sent, kept, t_sent);
    }
    throw CheckError("NoRowApplies",
                     "restriction body matches no translation pattern");
  }

  // row 6: new x y. z!y.P with z a client channel
  DProcPtr row6(const SDerivation&, const SDerivation& out_d, const Root& u,
                const Name& sent, const Name& kept, const SType& t_sent) {
    const auto& out = std::get<SOutput>(out_d.proc->node);
    const SDerivation& cont = *out_d.premises.back();
    require_not_mixed(t_sent);
    if (cli_pred(t_sent))
      throw CheckError("SideConditionViolation",
                       "unrestricted bound output: the sent endpoint " +
                           sent.str() + " has client behavior");
    if (un_pred(t_sent) && free_names(cont.proc).count(sent))
      throw CheckError("RowConditionViolation",
                       "row 6: sent endpoint " + sent.str() +
                           " occurs in the continuation");
    if (judgment_mode_ && u.target == rename(out.subject))
      throw CheckError("RowConditionViolation",
                       "row 6: the client channel stays in the context and "
                       "cannot be the root");
    DProcPtr body = translate(cont, u);
    if (srv_pred(t_sent)) return d_bout(rename(out.subject), kept, body);
    return d_bout(rename(out.subject), kept, d_selr(kept, body));
  }

  // row 7: new x y. z!x.(P | Q) with z a linear channel
  DProcPtr row7(const SDerivation& res_d, const SDerivation& out_d, const Root& u,
                const Name& sent, const Name& kept, const SType& t_sent) {
    const auto& out = std::get<SOutput>(out_d.proc->node);
    const auto& lin = std::get<STLin>(out_d.subject_type->node);
    const SDerivation& cont = *out_d.premises.back();
    if (cont.rule != SRule::Par)
      throw CheckError("NoRowApplies",
                       "row 7 needs a parallel continuation under the bound "
                       "output");
    (void)res_d;
    require_not_mixed(t_sent);
    if (srv_pred(t_sent))
      throw CheckError("SideConditionViolation",
                       "free output payloads cannot have server behavior");
    const SDerivation* pl = cont.premises[0].get();
    const SDerivation* qr = cont.premises[1].get();
    NameSet fl = free_names(pl->proc), fr = free_names(qr->proc);
    if (fl.count(kept) && fr.count(kept))
      throw CheckError("RowConditionViolation",
                       "row 7: kept endpoint occurs on both sides");
    if (fr.count(kept) && !fl.count(kept)) std::swap(pl, qr);
    NameSet fP = free_names(pl->proc), fQ = free_names(qr->proc);
    if (fQ.count(kept))
      throw CheckError("RowConditionViolation",
                       "row 7: kept endpoint occurs in the continuation side");
    if (fP.count(out.subject))
      throw CheckError("RowConditionViolation",
                       "row 7: subject occurs in the payload side");
    if (un_pred(t_sent) && (fP.count(sent) || fQ.count(sent)))
      throw CheckError("RowConditionViolation",
                       "row 7: sent endpoint occurs in a component");
    if (judgment_mode_ && mapped_free(pl->proc, rho_).count(u.target))
      throw CheckError("RowConditionViolation",
                       "row 7: root occurs in the payload side");
    // the payload component must offer the figure's tensor argument
    SType t_kept = dual_s(t_sent);
    if (!(translate_type_s2dill(t_sent) == offered_type_s2dill(t_kept)))
      throw CheckError("RowConditionViolation",
                       "row 7: payload type " + show(t_sent) +
                           " is not offerable by a translated component");
    Name subj = rename(out.subject);
    Root sub_q = u;
    if (judgment_mode_ && u.target == subj) sub_q = Root{subj, *lin.cont};
    DProcPtr P = translate(*pl, Root{kept, t_kept});
    DProcPtr Q = translate(*qr, sub_q);
    return d_bout(subj, kept, d_par(P, Q));
  }

  // row 4: un x(y).P at the server's own channel
  DProcPtr translate_unin(const SDerivation& d, const Root& u) {
    const auto& in = std::get<SInput>(d.proc->node);
    const auto& srv = std::get<STServer>(d.subject_type->node);
    const SType& t = *srv.payload;
    const SDerivation& body = *d.premises.back();
    if (judgment_mode_ && !(u.target == rename(in.subject)))
      throw CheckError("NoRowApplies",
                       "a server can only be translated at its own channel (" +
                           rename(in.subject).str() + ", root is " +
                           u.target.str() + ")");
    if (free_names(body.proc).count(in.subject))
      throw CheckError("RowConditionViolation",
                       "row 4: the server channel occurs in its own body");
    for (const auto& [n, ty] : d.ctx.entries)
      if (!un_pred(ty))
        throw CheckError("RowConditionViolation",
                         "row 4: the server judgment has a linear context");
    require_not_mixed(t);
    Name subj = rename(in.subject);
    Name w = supply_.fresh("s");
    if (srv_pred(t)) {
      auto saved = rho_;
      rho_[in.binder] = w;
      DProcPtr p = translate(body, Root{w, t});
      rho_ = saved;
      return d_srv(subj, w, p);
    }
    if (cli_pred(t)) {
      DProcPtr p = translate(body, Root{w, std::nullopt});
      return d_srv(subj, w, d_in(w, in.binder, p));
    }
    DProcPtr left_branch;
    {
      DProcPtr p = translate(body, Root{w, std::nullopt});
      left_branch = d_in(w, in.binder, p);
    }
    DProcPtr right_branch;
    {
      auto saved = rho_;
      rho_[in.binder] = w;
      right_branch = translate(body, Root{w, t});
      rho_ = saved;
    }
    return d_srv(subj, w, d_case(w, left_branch, right_branch));
  }

  // rows 8/9: free output on a linear channel
  DProcPtr translate_free_out_lin(const SDerivation& d, const Root& u) {
    const auto& out = std::get<SOutput>(d.proc->node);
    const auto& lin = std::get<STLin>(d.subject_type->node);
    const SType& t = *lin.payload;
    require_not_mixed(t);
    if (srv_pred(t))
      throw CheckError("SideConditionViolation",
                       "free output payloads cannot have server behavior");
    Name subj = rename(out.subject);
    Name val = rename(out.value);
    if (judgment_mode_ && u.target == val)
      throw CheckError("RowConditionViolation",
                       "rows 8-9: the payload cannot be the root");
    Root sub = u;
    if (judgment_mode_ && u.target == subj) sub = Root{subj, *lin.cont};
    DProcPtr P = translate(*d.premises.back(), sub);
    Name y = supply_.fresh("y");
    DProcPtr provider =
        un_pred(t) ? d_repl_fwd(val, y, supply_) : d_fwd(val, y);
    return d_bout(subj, y, d_par(provider, P));
  }

  // rows 10/11: free output on a client channel
  DProcPtr translate_free_out_un(const SDerivation& d, const Root& u) {
    const auto& out = std::get<SOutput>(d.proc->node);
    const auto& cli = std::get<STClient>(d.subject_type->node);
    const SType& t = *cli.payload;
    require_not_mixed(t);
    if (srv_pred(t))
      throw CheckError("SideConditionViolation",
                       "free output payloads cannot have server behavior");
    Name subj = rename(out.subject);
    Name val = rename(out.value);
    if (judgment_mode_ && (u.target == subj || u.target == val))
      throw CheckError("RowConditionViolation",
                       "rows 10-11: subject and payload stay in the context");
    DProcPtr P = translate(*d.premises.back(), u);
    Name z = supply_.fresh("z");
    Name w = supply_.fresh("y");
    DProcPtr provider =
        un_pred(t) ? d_repl_fwd(val, w, supply_) : d_fwd(val, w);
    DProcPtr inner = d_bout(z, w, d_par(provider, P));
    if (!cli_pred(t)) inner = d_sell(z, inner);
    return d_bout(subj, z, inner);
  }
};

}  // namespace

DProcPtr translate_proc_s2dill(const SProcPtr& p, const SDerivPtr& typing) {
  if (!typing || !typing->proc || !alpha_eq(typing->proc, p))
    throw CheckError("MissingTypeInfo",
                     "typing derivation does not match the process");
  Engine e(typing, /*judgment_mode=*/false);
  Name u = e.supply().fresh("u");
  return normalize(e.translate(*typing, Root{u, std::nullopt}));
}

S2DillResult translate_judgment_s2dill(const SDerivPtr& d,
                                       std::optional<Name> root) {
  if (!d) throw CheckError("MissingTypeInfo", "no derivation");
  Engine e(d, /*judgment_mode=*/true);
  Root u;
  if (root) {
    const SType* t = d->ctx.find(*root);
    if (!t)
      throw CheckError("UnknownName", "root " + root->str() + " not in context");
    u = Root{*root, *t};
  } else {
    u = Root{e.supply().fresh("u"), std::nullopt};
  }
  S2DillResult out;
  out.proc = normalize(e.translate(*d, u));
  out.judgment.subject = u.target;
  out.judgment.offered = u.type ? offered_type_s2dill(*u.type) : dt_one();
  for (const auto& [x, t] : d->ctx.entries) {
    if (root && x == *root) continue;
    if (un_pred(t))
      out.judgment.gamma.emplace_back(x, strip_bang(translate_type_s2dill(t)));
    else
      out.judgment.delta.emplace_back(x, translate_type_s2dill(t));
  }
  return out;
}

InLVerdict in_L(const SourceFile& file) {
  InLVerdict v;
  if (file.calculus != Calculus::S)
    throw CheckError("MissingTypeInfo", "in_L needs a πS file");
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
  std::vector<std::optional<Name>> candidates;
  for (const auto& [x, t] : deriv->ctx.entries) candidates.emplace_back(x);
  candidates.emplace_back(std::nullopt);
  for (const auto& cand : candidates) {
    std::string label = cand ? cand->str() : "(fresh)";
    try {
      S2DillResult r = translate_judgment_s2dill(deriv, cand);
      DDerivPtr dd = check_dill(r.judgment, r.proc);
      v.accepted = true;
      v.root = r.judgment.subject;
      v.offered = r.judgment.offered;
      v.proc = r.proc;
      v.judgment = r.judgment;
      v.derivation = dd;
      return v;
    } catch (const CheckError& e) {
      v.root_failures.emplace_back(label, e.what());
    }
  }
  v.code = "NotInL";
  v.reason = "no candidate root admits a typable translation";
  return v;
}

}  // namespace sessterm
