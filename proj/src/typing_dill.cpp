#include "sessterm/typing_dill.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sessterm {

namespace {

std::string show_zone(const std::vector<std::pair<Name, DType>>& z) {
  std::ostringstream os;
  for (size_t i = 0; i < z.size(); ++i) {
    if (i) os << ", ";
    os << z[i].first.str() << ":" << show(z[i].second);
  }
  if (z.empty()) os << ".";
  return os.str();
}

}  // namespace

std::string show(const DJudgment& j) {
  return show_zone(j.gamma) + " ; " + show_zone(j.delta) + " |- :: " +
         j.subject.str() + " : " + show(j.offered);
}

const char* show(DRule r) {
  switch (r) {
    case DRule::OneL: return "1L";
    case DRule::OneR: return "1R";
    case DRule::Fwd: return "fwd";
    case DRule::TensorL: return "*L";
    case DRule::TensorR: return "*R";
    case DRule::LolliL: return "-oL";
    case DRule::LolliR: return "-oR";
    case DRule::Cut: return "cut";
    case DRule::CutBang: return "cut!";
    case DRule::Copy: return "copy";
    case DRule::BangL: return "!L";
    case DRule::BangR: return "!R";
    case DRule::PlusL: return "(+)L";
    case DRule::PlusR1: return "(+)R1";
    case DRule::PlusR2: return "(+)R2";
    case DRule::WithL1: return "&L1";
    case DRule::WithL2: return "&L2";
    case DRule::WithR: return "&R";
  }
  return "?";
}

namespace {

void show_dderiv(const DDerivation& d, int depth, std::ostringstream& os) {
  for (int i = 0; i < depth; ++i) os << "  ";
  os << "[" << show(d.rule) << "] " << d.conclusion << "\n";
  for (const auto& p : d.premises) show_dderiv(*p, depth + 1, os);
}

using Zone = std::vector<std::pair<Name, DType>>;

const DType* zone_find(const Zone& z, const Name& x) {
  for (const auto& [n, t] : z)
    if (n == x) return &t;
  return nullptr;
}

void zone_remove(Zone& z, const Name& x) {
  for (auto it = z.begin(); it != z.end(); ++it)
    if (it->first == x) {
      z.erase(it);
      return;
    }
}

bool dischargeable(const DType& t) {
  return std::holds_alternative<DTOne>(t.node) ||
         std::holds_alternative<DTBang>(t.node);
}

bool zone_equal(Zone a, Zone b) {
  auto key = [](const std::pair<Name, DType>& e) { return e.first; };
  std::sort(a.begin(), a.end(),
            [&](const auto& x, const auto& y) { return key(x) < key(y); });
  std::sort(b.begin(), b.end(),
            [&](const auto& x, const auto& y) { return key(x) < key(y); });
  return a == b;
}

// whether x occurs as the source of a forwarder (those uses need the
// assumption to stay linear; every other use of a !-typed assumption starts
// with !L)
bool fwd_source(const DProcPtr& p, const Name& x) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DNil>) {
          return false;
        } else if constexpr (std::is_same_v<T, DForward>) {
          return n.from == x;
        } else if constexpr (std::is_same_v<T, DBoundOut> ||
                             std::is_same_v<T, DSelL> ||
                             std::is_same_v<T, DSelR>) {
          return fwd_source(n.cont, x);
        } else if constexpr (std::is_same_v<T, DInput> ||
                             std::is_same_v<T, DServer>) {
          return n.binder == x ? false : fwd_source(n.body, x);
        } else if constexpr (std::is_same_v<T, DPar>) {
          return fwd_source(n.left, x) || fwd_source(n.right, x);
        } else if constexpr (std::is_same_v<T, DRes>) {
          return n.name == x ? false : fwd_source(n.body, x);
        } else {
          return fwd_source(n.left, x) || fwd_source(n.right, x);
        }
      },
      p->node);
}

class DillChecker {
 public:
  // check: P offers a along x, consuming delta; returns the residual delta.
  struct Result {
    DDerivPtr deriv;
    Zone residual;
  };

  // Adds a linear assumption, applying !L eagerly unless the scope forwards
  // the name (which requires the linear entry).
  static void place(Zone& delta, Zone& gamma, const Name& n, const DType& t,
                    const DProcPtr& scope) {
    if (const auto* bang = std::get_if<DTBang>(&t.node)) {
      if (!fwd_source(scope, n)) {
        gamma.emplace_back(n, *bang->inner);
        return;
      }
    }
    delta.emplace_back(n, t);
  }

  Result check(Zone delta, const Zone& gamma, const DProcPtr& p, const Name& x,
               const DType& a) {
    std::string concl = show_zone(gamma) + " ; " + show_zone(delta) + " |- " +
                        show(p) + " :: " + x.str() + " : " + show(a);
    auto node = [&](DRule r, std::vector<DDerivPtr> prem, Zone residual) -> Result {
      auto d = std::make_shared<DDerivation>();
      d->rule = r;
      d->conclusion = concl;
      d->premises = std::move(prem);
      return {d, std::move(residual)};
    };

    return std::visit(
        [&](const auto& n) -> Result {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DNil>) {
            if (!std::holds_alternative<DTOne>(a.node))
              throw CheckError("RuleMismatch",
                               "0 offers 1, not " + show(a) + " (at " + x.str() + ")");
            return node(DRule::OneR, {}, delta);
          } else if constexpr (std::is_same_v<T, DForward>) {
            if (!(n.to == x))
              throw CheckError("RuleMismatch",
                               "forwarder target " + n.to.str() +
                                   " is not the offered channel " + x.str());
            const DType* tf = zone_find(delta, n.from);
            if (!tf) {
              if (zone_find(gamma, n.from))
                throw CheckError("ZoneViolation",
                                 "forwarder source " + n.from.str() +
                                     " is unrestricted");
              throw CheckError("UnknownName", n.from.str() + " not in scope");
            }
            if (!(*tf == a))
              throw CheckError("TypeMismatch",
                               "fwd " + n.from.str() + " : " + show(*tf) +
                                   " cannot offer " + show(a));
            zone_remove(delta, n.from);
            return node(DRule::Fwd, {}, delta);
          } else if constexpr (std::is_same_v<T, DInput>) {
            if (n.subject == x) {
              const auto* lolli = std::get_if<DTLolli>(&a.node);
              if (!lolli)
                throw CheckError("RuleMismatch",
                                 "input on the offered channel needs -o, got " +
                                     show(a));
              Zone d2 = delta;
              Zone g2 = gamma;
              place(d2, g2, n.binder, *lolli->arg, n.body);
              Result r = check(std::move(d2), g2, n.body, x, *lolli->res);
              drop_scoped(r.residual, n.binder);
              return node(DRule::LolliR, {r.deriv}, std::move(r.residual));
            }
            const DType* ts = zone_find(delta, n.subject);
            if (!ts) {
              if (zone_find(gamma, n.subject))
                throw CheckError("ZoneViolation",
                                 "input on unrestricted name " + n.subject.str());
              throw CheckError("UnknownName", n.subject.str() + " not in scope");
            }
            const auto* tensor = std::get_if<DTTensor>(&ts->node);
            if (!tensor)
              throw CheckError("RuleMismatch", "input on " + n.subject.str() +
                                                   " : " + show(*ts) + " needs *");
            DType arg = *tensor->arg, res = *tensor->res;
            zone_remove(delta, n.subject);
            Zone d2 = delta;
            Zone g2 = gamma;
            place(d2, g2, n.binder, arg, n.body);
            place(d2, g2, n.subject, res, n.body);
            Result r = check(std::move(d2), g2, n.body, x, a);
            drop_scoped(r.residual, n.binder);
            drop_scoped(r.residual, n.subject);
            return node(DRule::TensorL, {r.deriv}, std::move(r.residual));
          } else if constexpr (std::is_same_v<T, DBoundOut>) {
            const auto& cont = n.cont;
            if (n.subject == x) {
              const auto* tensor = std::get_if<DTTensor>(&a.node);
              if (!tensor)
                throw CheckError("RuleMismatch",
                                 "bound output on the offered channel needs *, got " +
                                     show(a));
              const auto* par = std::get_if<DPar>(&cont->node);
              if (!par)
                throw CheckError("RuleMismatch",
                                 "*R needs a parallel continuation (payload | rest)");
              Result r1 = check(delta, gamma, par->left, n.binder, *tensor->arg);
              Result r2 =
                  check(std::move(r1.residual), gamma, par->right, x, *tensor->res);
              return node(DRule::TensorR, {r1.deriv, r2.deriv},
                          std::move(r2.residual));
            }
            if (const DType* ts = zone_find(delta, n.subject)) {
              if (const auto* lolli = std::get_if<DTLolli>(&ts->node)) {
                const auto* par = std::get_if<DPar>(&cont->node);
                if (!par)
                  throw CheckError("RuleMismatch",
                                   "-oL needs a parallel continuation");
                DType arg = *lolli->arg, res = *lolli->res;
                zone_remove(delta, n.subject);
                Result r1 = check(delta, gamma, par->left, n.binder, arg);
                Zone d2 = std::move(r1.residual);
                Zone g2 = gamma;
                place(d2, g2, n.subject, res, par->right);
                Result r2 = check(std::move(d2), g2, par->right, x, a);
                drop_scoped(r2.residual, n.subject);
                return node(DRule::LolliL, {r1.deriv, r2.deriv},
                            std::move(r2.residual));
              }
              if (const auto* bang = std::get_if<DTBang>(&ts->node)) {
                // implicit !L, then copy
                DType inner = *bang->inner;
                zone_remove(delta, n.subject);
                Zone d2 = delta;
                Zone g2 = gamma;
                g2.emplace_back(n.subject, inner);
                place(d2, g2, n.binder, inner, cont);
                Result r = check(std::move(d2), g2, cont, x, a);
                drop_scoped(r.residual, n.binder);
                auto inner_node = std::make_shared<DDerivation>();
                inner_node->rule = DRule::Copy;
                inner_node->conclusion = concl;
                inner_node->premises = {r.deriv};
                auto outer = std::make_shared<DDerivation>();
                outer->rule = DRule::BangL;
                outer->conclusion = concl;
                outer->premises = {inner_node};
                return {outer, std::move(r.residual)};
              }
              throw CheckError("RuleMismatch",
                               "bound output on " + n.subject.str() + " : " +
                                   show(*ts));
            }
            if (const DType* tg = zone_find(gamma, n.subject)) {
              Zone d2 = delta;
              Zone g2 = gamma;
              place(d2, g2, n.binder, *tg, cont);
              Result r = check(std::move(d2), g2, cont, x, a);
              drop_scoped(r.residual, n.binder);
              return node(DRule::Copy, {r.deriv}, std::move(r.residual));
            }
            throw CheckError("UnknownName", n.subject.str() + " not in scope");
          } else if constexpr (std::is_same_v<T, DServer>) {
            if (!(n.subject == x))
              throw CheckError(
                  zone_find(delta, n.subject) || zone_find(gamma, n.subject)
                      ? "RuleMismatch"
                      : "UnknownName",
                  "server on non-offered channel " + n.subject.str());
            const auto* bang = std::get_if<DTBang>(&a.node);
            if (!bang)
              throw CheckError("RuleMismatch",
                               "server offers !, got " + show(a));
            Result r = check(Zone{}, gamma, n.body, n.binder, *bang->inner);
            if (!r.residual.empty())
              throw CheckError("LinearLeftover",
                               "server body retains linear assumptions");
            return node(DRule::BangR, {r.deriv}, delta);
          } else if constexpr (std::is_same_v<T, DPar>) {
            throw CheckError("RuleMismatch",
                             "parallel composition must occur under a cut");
          } else if constexpr (std::is_same_v<T, DRes>) {
            const auto* par = std::get_if<DPar>(&n.body->node);
            if (!par)
              throw CheckError("RuleMismatch",
                               "restriction must scope a parallel composition");
            if (!n.ann)
              throw CheckError("MissingCutAnnotation",
                               "cut on " + n.name.str() + " has no type annotation");
            const auto* srv = std::get_if<DServer>(&par->left->node);
            if (srv && srv->subject == n.name) {
              const auto* bang = std::get_if<DTBang>(&n.ann->node);
              if (!bang)
                throw CheckError("RuleMismatch",
                                 "cut! annotation must be !A, got " + show(*n.ann));
              Result r1 = check(Zone{}, gamma, srv->body, srv->binder, *bang->inner);
              if (!r1.residual.empty())
                throw CheckError("LinearLeftover",
                                 "server body retains linear assumptions");
              auto bang_node = std::make_shared<DDerivation>();
              bang_node->rule = DRule::BangR;
              bang_node->conclusion =
                  show_zone(gamma) + " ; . |- " + show(par->left) + " :: " +
                  n.name.str() + " : " + show(*n.ann);
              bang_node->premises = {r1.deriv};
              Zone g2 = gamma;
              g2.emplace_back(n.name, *bang->inner);
              Result r2 = check(delta, g2, par->right, x, a);
              return node(DRule::CutBang, {bang_node, r2.deriv},
                          std::move(r2.residual));
            }
            Result r1 = check(delta, gamma, par->left, n.name, *n.ann);
            Zone d2 = std::move(r1.residual);
            Zone g2 = gamma;
            place(d2, g2, n.name, *n.ann, par->right);
            Result r2 = check(std::move(d2), g2, par->right, x, a);
            drop_scoped(r2.residual, n.name);
            return node(DRule::Cut, {r1.deriv, r2.deriv}, std::move(r2.residual));
          } else if constexpr (std::is_same_v<T, DSelL> ||
                               std::is_same_v<T, DSelR>) {
            constexpr bool left = std::is_same_v<T, DSelL>;
            if (n.subject == x) {
              const auto* plus = std::get_if<DTPlus>(&a.node);
              if (!plus)
                throw CheckError("RuleMismatch",
                                 "selection on the offered channel needs (+), got " +
                                     show(a));
              Result r = check(delta, gamma, n.cont, x,
                               left ? *plus->left : *plus->right);
              return node(left ? DRule::PlusR1 : DRule::PlusR2, {r.deriv},
                          std::move(r.residual));
            }
            const DType* ts = zone_find(delta, n.subject);
            if (!ts) {
              if (zone_find(gamma, n.subject))
                throw CheckError("ZoneViolation",
                                 "selection on unrestricted name " + n.subject.str());
              throw CheckError("UnknownName", n.subject.str() + " not in scope");
            }
            const auto* with = std::get_if<DTWith>(&ts->node);
            if (!with)
              throw CheckError("RuleMismatch", "selection on " + n.subject.str() +
                                                   " : " + show(*ts) + " needs &");
            DType chosen = left ? *with->left : *with->right;
            zone_remove(delta, n.subject);
            Zone d2 = delta;
            Zone g2 = gamma;
            place(d2, g2, n.subject, chosen, n.cont);
            Result r = check(std::move(d2), g2, n.cont, x, a);
            drop_scoped(r.residual, n.subject);
            return node(left ? DRule::WithL1 : DRule::WithL2, {r.deriv},
                        std::move(r.residual));
          } else {  // DCase
            if (n.subject == x) {
              const auto* with = std::get_if<DTWith>(&a.node);
              if (!with)
                throw CheckError("RuleMismatch",
                                 "case on the offered channel needs &, got " +
                                     show(a));
              Result rl = check(delta, gamma, n.left, x, *with->left);
              Result rr = check(delta, gamma, n.right, x, *with->right);
              if (!zone_equal(rl.residual, rr.residual))
                throw CheckError("SplitFailure",
                                 "case branches consume different resources");
              return node(DRule::WithR, {rl.deriv, rr.deriv},
                          std::move(rl.residual));
            }
            const DType* ts = zone_find(delta, n.subject);
            if (!ts) {
              if (zone_find(gamma, n.subject))
                throw CheckError("ZoneViolation",
                                 "case on unrestricted name " + n.subject.str());
              throw CheckError("UnknownName", n.subject.str() + " not in scope");
            }
            const auto* plus = std::get_if<DTPlus>(&ts->node);
            if (!plus)
              throw CheckError("RuleMismatch", "case on " + n.subject.str() + " : " +
                                                   show(*ts) + " needs (+)");
            DType tl = *plus->left, tr = *plus->right;
            zone_remove(delta, n.subject);
            Zone dl = delta;
            Zone gl = gamma;
            place(dl, gl, n.subject, tl, n.left);
            Result rl = check(std::move(dl), gl, n.left, x, a);
            drop_scoped(rl.residual, n.subject);
            Zone dr = delta;
            Zone gr = gamma;
            place(dr, gr, n.subject, tr, n.right);
            Result rr = check(std::move(dr), gr, n.right, x, a);
            drop_scoped(rr.residual, n.subject);
            if (!zone_equal(rl.residual, rr.residual))
              throw CheckError("SplitFailure",
                               "case branches consume different resources");
            return node(DRule::PlusL, {rl.deriv, rr.deriv}, std::move(rl.residual));
          }
        },
        p->node);
  }

 private:
  // A bound name leaving scope must have been consumed, up to the silent 1L
  // discharge and !L on unused assumptions.
  static void drop_scoped(Zone& residual, const Name& x) {
    const DType* t = zone_find(residual, x);
    if (!t) return;
    if (!dischargeable(*t))
      throw CheckError("LinearLeftover",
                       "linear assumption " + x.str() + " : " + show(*t) + " unused");
    zone_remove(residual, x);
  }
};

}  // namespace

std::string show(const DDerivation& d) {
  std::ostringstream os;
  show_dderiv(d, 0, os);
  return os.str();
}

DDerivPtr check_dill(const DJudgment& j, const DProcPtr& p) {
  // domain disjointness
  std::map<Name, int> seen;
  for (const auto& [n, t] : j.gamma) seen[n]++;
  for (const auto& [n, t] : j.delta) seen[n]++;
  seen[j.subject]++;
  for (const auto& [n, c] : seen)
    if (c > 1)
      throw CheckError("DuplicateName",
                       n.str() + " occurs twice across the judgment zones");
  DillChecker c;
  Zone delta0;
  Zone gamma0 = j.gamma;
  for (const auto& [n, t] : j.delta) DillChecker::place(delta0, gamma0, n, t, p);
  auto r = c.check(std::move(delta0), gamma0, p, j.subject, j.offered);
  for (const auto& [n, t] : r.residual)
    if (!dischargeable(t))
      throw CheckError("LinearLeftover",
                       "linear assumption " + n.str() + " : " + show(t) + " unused");
  return r.deriv;
}

}  // namespace sessterm
