#include "sessterm/typing_s.hpp"

#include <sstream>

namespace sessterm {

std::string show(const SCtx& g) {
  std::ostringstream os;
  for (size_t i = 0; i < g.entries.size(); ++i) {
    if (i) os << ", ";
    os << g.entries[i].first.str() << ": " << show(g.entries[i].second);
  }
  return os.str();
}

std::vector<std::pair<SCtx, SCtx>> split_s(const SCtx& g) {
  std::vector<std::pair<SCtx, SCtx>> out{{SCtx{}, SCtx{}}};
  for (const auto& [x, t] : g.entries) {
    if (un_pred(t)) {
      for (auto& [l, r] : out) {
        l.add(x, t);
        r.add(x, t);
      }
    } else {
      std::vector<std::pair<SCtx, SCtx>> next;
      next.reserve(out.size() * 2);
      for (const auto& [l, r] : out) {
        auto a = std::make_pair(l, r);
        a.first.add(x, t);
        next.push_back(std::move(a));
        auto b = std::make_pair(l, r);
        b.second.add(x, t);
        next.push_back(std::move(b));
      }
      out = std::move(next);
    }
  }
  return out;
}

const char* show(SRule r) {
  switch (r) {
    case SRule::Var: return "Var";
    case SRule::Nil: return "Nil";
    case SRule::Par: return "Par";
    case SRule::Res: return "Res";
    case SRule::LinIn1: return "Lin-In1";
    case SRule::LinIn2: return "Lin-In2";
    case SRule::UnIn: return "Un-In";
    case SRule::LinOut: return "Lin-Out";
    case SRule::UnOut: return "Un-Out";
  }
  return "?";
}

namespace {

void show_deriv(const SDerivation& d, int depth, std::ostringstream& os) {
  for (int i = 0; i < depth; ++i) os << "  ";
  os << "[" << show(d.rule) << "] " << show(d.ctx) << " |- ";
  if (d.var)
    os << d.var->first.str() << " : " << show(d.var->second);
  else
    os << show(d.proc);
  os << "\n";
  for (const auto& p : d.premises) show_deriv(*p, depth + 1, os);
}

}  // namespace

std::string show(const SDerivation& d) {
  std::ostringstream os;
  show_deriv(d, 0, os);
  return os.str();
}

namespace {

// Working context for the algorithmic checker. Linear entries are removed as
// they are consumed; unrestricted entries persist. Continuation updates
// (x:S after a linear in/out on x) are scoped to the node that made them.
class Checker {
 public:
  explicit Checker(const SCtx& g) : env_(g.entries) {}

  SDerivPtr check(const SProcPtr& p) {
    SDerivPtr d = go(p);
    for (const auto& [x, t] : env_)
      if (!un_pred(t))
        throw CheckError("LeftoverLinear",
                         "linear assumption " + x.str() + ": " + show(t) + " unused");
    return d;
  }

 private:
  std::vector<std::pair<Name, SType>> env_;

  SCtx snapshot() const { return SCtx{env_}; }

  const SType* find(const Name& x) const {
    for (const auto& [n, t] : env_)
      if (n == x) return &t;
    return nullptr;
  }
  SType take(const Name& x) {
    for (auto it = env_.begin(); it != env_.end(); ++it) {
      if (it->first == x) {
        SType t = it->second;
        env_.erase(it);
        return t;
      }
    }
    throw CheckError("UnknownName", x.str() + " not in context");
  }
  void put(const Name& x, SType t) { env_.emplace_back(x, std::move(t)); }

  // Consumes a right-hand-side judgment Γ ⊢ v:T (rule Var): linear entries
  // are used up, unrestricted ones stay.
  SType use_value(const Name& v) {
    const SType* t = find(v);
    if (!t) throw CheckError("UnknownName", v.str() + " not in context");
    SType ty = *t;
    if (!un_pred(ty)) take(v);
    return ty;
  }

  // Binder scope exit: a leftover linear entry is an error, an unrestricted
  // residue dies with the scope.
  void drop_scoped(const Name& x) {
    const SType* t = find(x);
    if (!t) return;
    if (!un_pred(*t))
      throw CheckError("LeftoverLinear",
                       "linear assumption " + x.str() + ": " + show(*t) + " unused");
    take(x);
  }

  SDerivPtr var_node(const Name& x, const SType& t) {
    auto d = std::make_shared<SDerivation>();
    d->rule = SRule::Var;
    d->ctx = snapshot();
    d->var = std::make_pair(x, t);
    return d;
  }

  SDerivPtr node(SRule r, const SCtx& ctx, const SProcPtr& p,
                 std::vector<SDerivPtr> prem,
                 std::optional<SType> subj = std::nullopt) {
    auto d = std::make_shared<SDerivation>();
    d->rule = r;
    d->ctx = ctx;
    d->proc = p;
    d->subject_type = std::move(subj);
    d->premises = std::move(prem);
    return d;
  }

  SDerivPtr go(const SProcPtr& p) {
    SCtx here = snapshot();
    return std::visit(
        [&](const auto& n) -> SDerivPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, SNil>) {
            return node(SRule::Nil, here, p, {});
          } else if constexpr (std::is_same_v<T, SPar>) {
            SDerivPtr l = go(n.left);
            SDerivPtr r = go(n.right);
            return node(SRule::Par, here, p, {l, r});
          } else if constexpr (std::is_same_v<T, SRes>) {
            if (!n.type_a)
              throw CheckError("MissingAnnotation",
                               "restriction " + n.endpoint_a.str() + " " +
                                   n.endpoint_b.str() + " has no endpoint type");
            if (find(n.endpoint_a) || find(n.endpoint_b))
              throw CheckError("DuplicateName", "restriction endpoint shadows context");
            put(n.endpoint_a, *n.type_a);
            put(n.endpoint_b, dual_s(*n.type_a));
            SDerivPtr b = go(n.body);
            drop_scoped(n.endpoint_a);
            drop_scoped(n.endpoint_b);
            return node(SRule::Res, here, p, {b});
          } else if constexpr (std::is_same_v<T, SInput>) {
            const SType* tx = find(n.subject);
            if (!tx)
              throw CheckError("UnknownName", n.subject.str() + " not in context");
            SType subj = *tx;
            if (n.qual == Qual::Un) {
              const auto* srv = std::get_if<STServer>(&subj.node);
              if (!srv)
                throw CheckError("QualifierMismatch",
                                 "un input subject " + n.subject.str() +
                                     " is not a server type: " + show(subj));
              // un(Γ) is required at this node: the body may only see the
              // unrestricted part of the context.
              std::vector<std::pair<Name, SType>> saved_lin;
              std::vector<std::pair<Name, SType>> un_part;
              for (auto& e : env_)
                (un_pred(e.second) ? un_part : saved_lin).push_back(e);
              std::swap(env_, un_part);
              SDerivPtr vx = var_node(n.subject, subj);
              put(n.binder, *srv->payload);
              SDerivPtr b = go(n.body);
              drop_scoped(n.binder);
              for (auto& e : saved_lin) env_.push_back(e);
              return node(SRule::UnIn, here, p, {vx, b}, subj);
            }
            // lin input
            if (const auto* lin = std::get_if<STLin>(&subj.node)) {
              if (lin->dir != Dir::Recv)
                throw CheckError("TypeMismatch",
                                 "lin input subject " + n.subject.str() +
                                     " has send type " + show(subj));
              SDerivPtr vx = var_node(n.subject, subj);
              take(n.subject);
              put(n.subject, *lin->cont);
              put(n.binder, *lin->payload);
              SDerivPtr b = go(n.body);
              drop_scoped(n.binder);
              drop_scoped(n.subject);  // continuation residue is scope-local
              return node(SRule::LinIn1, here, p, {vx, b}, subj);
            }
            if (const auto* srv = std::get_if<STServer>(&subj.node)) {
              SDerivPtr vx = var_node(n.subject, subj);
              put(n.binder, *srv->payload);
              SDerivPtr b = go(n.body);
              drop_scoped(n.binder);
              return node(SRule::LinIn2, here, p, {vx, b}, subj);
            }
            throw CheckError("TypeMismatch", "input subject " + n.subject.str() +
                                                 " has type " + show(subj));
          } else {  // SOutput
            const SType* tx = find(n.subject);
            if (!tx)
              throw CheckError("UnknownName", n.subject.str() + " not in context");
            SType subj = *tx;
            if (const auto* lin = std::get_if<STLin>(&subj.node)) {
              if (lin->dir != Dir::Send)
                throw CheckError("TypeMismatch",
                                 "output subject " + n.subject.str() +
                                     " has receive type " + show(subj));
              SDerivPtr vx = var_node(n.subject, subj);
              take(n.subject);
              SType tv = use_value(n.value);
              if (!(tv == *lin->payload))
                throw CheckError("PayloadMismatch",
                                 "value " + n.value.str() + ": " + show(tv) +
                                     " sent over " + n.subject.str() + ": " +
                                     show(subj));
              SDerivPtr vv = var_node(n.value, tv);
              put(n.subject, *lin->cont);
              SDerivPtr c = go(n.cont);
              drop_scoped(n.subject);
              return node(SRule::LinOut, here, p, {vx, vv, c}, subj);
            }
            if (const auto* cli = std::get_if<STClient>(&subj.node)) {
              SDerivPtr vx = var_node(n.subject, subj);
              SType tv = use_value(n.value);
              if (!(tv == *cli->payload))
                throw CheckError("PayloadMismatch",
                                 "value " + n.value.str() + ": " + show(tv) +
                                     " sent over " + n.subject.str() + ": " +
                                     show(subj));
              SDerivPtr vv = var_node(n.value, tv);
              SDerivPtr c = go(n.cont);
              return node(SRule::UnOut, here, p, {vx, vv, c}, subj);
            }
            throw CheckError("TypeMismatch", "output subject " + n.subject.str() +
                                                 " has type " + show(subj));
          }
        },
        p->node);
  }
};

}  // namespace

SDerivPtr check_s(const SCtx& g, const SProcPtr& p) {
  Checker c(g);
  return c.check(p);
}

}  // namespace sessterm
