#include "sessterm/typing_w.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sessterm {

std::string show(const WCtx& g) {
  std::ostringstream os;
  for (size_t i = 0; i < g.entries.size(); ++i) {
    if (i) os << ", ";
    os << g.entries[i].first.str()
       << (g.entries[i].second.mode == CtxMode::DualJoin ? " :: " : " : ")
       << show(g.entries[i].second.type);
  }
  return os.str();
}

// Complementary endpoint protocol of a link type: flips the polarity of the
// top constructor and of the continuation slot, but keeps payload slots (the
// exchanged value has one type, seen identically from both ends). Coincides
// with dual_w wherever payloads are self-dual.
WType comm_dual(const WType& v) {
  return std::visit(
      [](const auto& n) -> WType {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WTUnit>) {
          return wt_unit();
        } else if constexpr (std::is_same_v<T, WTIn>) {
          return wt_out(n.level, *n.payload1, comm_dual(*n.payload2));
        } else if constexpr (std::is_same_v<T, WTOut>) {
          return wt_in(n.level, *n.payload1, comm_dual(*n.payload2));
        } else if constexpr (std::is_same_v<T, WTSrv>) {
          return wt_cli(n.level, *n.payload);
        } else {
          return wt_srv(n.level, *n.payload);
        }
      },
      v.node);
}

WType canonical_half(const WType& v) {
  if (std::holds_alternative<WTOut>(v.node) || std::holds_alternative<WTCli>(v.node))
    return comm_dual(v);
  return v;
}

std::string show(const LevelConstraint& c) {
  if (c.kind == LevelConstraint::Kind::Eq)
    return "l(" + c.a.str() + ") = l(" + c.b.str() + ")";
  return "l(" + c.a.str() + ") < l(" + c.b.str() + ")";
}

// ---------------- level solving ----------------

namespace {

struct UnionFind {
  std::map<Name, Name> parent;
  Name find(const Name& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    Name root = find(it->second);
    parent[x] = root;
    return root;
  }
  void join(const Name& a, const Name& b) {
    Name ra = find(a), rb = find(b);
    if (!(ra == rb)) parent[ra] = rb;
  }
};

}  // namespace

LevelAssignment solve_levels(const std::vector<LevelConstraint>& cs) {
  UnionFind uf;
  for (const auto& c : cs) {
    uf.find(c.a);
    uf.find(c.b);
    if (c.kind == LevelConstraint::Kind::Eq) uf.join(c.a, c.b);
  }
  // strict-order graph between equivalence classes
  std::map<Name, std::set<Name>> succ;  // a -> {b | level(a) < level(b)}
  std::set<Name> nodes;
  for (const auto& c : cs) {
    Name ra = uf.find(c.a), rb = uf.find(c.b);
    nodes.insert(ra);
    nodes.insert(rb);
    if (c.kind == LevelConstraint::Kind::Lt) succ[ra].insert(rb);
  }
  // cycle detection and longest-path layering (DFS, memoized)
  std::map<Name, int> state;  // 0 unseen, 1 on stack, 2 done
  std::map<Name, int> height; // longest chain of Lt edges ending here
  std::vector<Name> stack;
  std::vector<Name> cycle_out;

  auto dfs = [&](auto&& self, const Name& v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    int h = 1;
    for (const Name& w : succ[v]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle_out.assign(it, stack.end());
        return false;
      }
      if (state[w] == 0 && !self(self, w)) return false;
      (void)h;
    }
    // height: 1 + longest over predecessors is computed the other way; we
    // compute levels below by propagating over a topological order instead.
    state[v] = 2;
    stack.pop_back();
    return true;
  };
  for (const Name& v : nodes) {
    if (state[v] == 0 && !dfs(dfs, v)) {
      std::ostringstream os;
      os << "level constraints have no solution; cycle through";
      for (const Name& n : cycle_out) os << " " << n.str();
      throw UnsatisfiableError(cycle_out, os.str());
    }
  }
  // topological order by repeated relaxation (graphs here are tiny)
  std::map<Name, int> level;
  for (const Name& v : nodes) level[v] = 1;
  bool changed = true;
  int guard = static_cast<int>(nodes.size()) + 1;
  while (changed && guard-- > 0) {
    changed = false;
    for (const auto& [a, outs] : succ) {
      for (const Name& b : outs) {
        if (level[b] < level[a] + 1) {
          level[b] = level[a] + 1;
          changed = true;
        }
      }
    }
  }
  LevelAssignment out;
  for (const auto& [x, _] : uf.parent) out[x] = level[uf.find(x)];
  return out;
}

// ---------------- active outputs and weights ----------------

NameSet active_outputs(const WProcPtr& p) {
  return std::visit(
      [&](const auto& n) -> NameSet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil> || std::is_same_v<T, WServer>) {
          return {};
        } else if constexpr (std::is_same_v<T, WOutput>) {
          NameSet s = active_outputs(n.cont);
          s.insert(n.subject);
          return s;
        } else if constexpr (std::is_same_v<T, WInput>) {
          return active_outputs(n.body);
        } else if constexpr (std::is_same_v<T, WPar>) {
          NameSet s = active_outputs(n.left);
          for (const Name& x : active_outputs(n.right)) s.insert(x);
          return s;
        } else {
          return active_outputs(n.body);
        }
      },
      p->node);
}

std::string show(const WeightVector& v) {
  if (v.counts.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = v.counts.rbegin(); it != v.counts.rend(); ++it) {
    if (!first) os << " + ";
    os << it->second << "@" << it->first;
    first = false;
  }
  return os.str();
}

WeightVector weight(const WProcPtr& p, const LevelAssignment& l) {
  return std::visit(
      [&](const auto& n) -> WeightVector {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil> || std::is_same_v<T, WServer>) {
          return {};
        } else if constexpr (std::is_same_v<T, WOutput>) {
          WeightVector v = weight(n.cont, l);
          auto it = l.find(n.subject);
          if (it == l.end())
            throw CheckError("MissingLevel",
                             "no level for output subject " + n.subject.str());
          v.counts[it->second] += 1;
          return v;
        } else if constexpr (std::is_same_v<T, WInput>) {
          return weight(n.body, l);
        } else if constexpr (std::is_same_v<T, WPar>) {
          WeightVector v = weight(n.left, l);
          for (auto& [lvl, c] : weight(n.right, l).counts) v.counts[lvl] += c;
          return v;
        } else {
          return weight(n.body, l);
        }
      },
      p->node);
}

bool weight_less(const WeightVector& a, const WeightVector& b) {
  // lexicographic from the highest level down, zero-padding implicit
  std::set<int> levels;
  for (auto& [k, v] : a.counts) levels.insert(k);
  for (auto& [k, v] : b.counts) levels.insert(k);
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    long ca = a.counts.count(*it) ? a.counts.at(*it) : 0;
    long cb = b.counts.count(*it) ? b.counts.at(*it) : 0;
    if (ca != cb) return ca < cb;
  }
  return false;
}

// ---------------- checker ----------------

const char* show(WRule r) {
  switch (r) {
    case WRule::Var1: return "Var1";
    case WRule::Var2: return "Var2";
    case WRule::Nil: return "Nil";
    case WRule::Par: return "Par";
    case WRule::Res: return "Res";
    case WRule::LinIn1: return "Lin-In1";
    case WRule::LinIn2: return "Lin-In2";
    case WRule::LinIn3: return "Lin-In3";
    case WRule::LinOut: return "Lin-Out";
    case WRule::UnOut1: return "Un-Out1";
    case WRule::UnOut2: return "Un-Out2";
    case WRule::UnIn1: return "Un-In1";
    case WRule::UnIn2: return "Un-In2";
  }
  return "?";
}

namespace {

void show_wderiv(const WDerivation& d, int depth, std::ostringstream& os) {
  for (int i = 0; i < depth; ++i) os << "  ";
  os << "[" << show(d.rule) << "] " << d.ctx_text << " |- " << d.conclusion << "\n";
  for (const auto& p : d.premises) show_wderiv(*p, depth + 1, os);
}

// One checker, two modes: with a level assignment it enforces the numeric
// side conditions; in collect mode it emits them as constraints.
class WChecker {
 public:
  WChecker(const WCtx& g, const LevelAssignment* l,
           std::vector<LevelConstraint>* collect)
      : l_(l), collect_(collect) {
    for (const auto& [x, e] : g.entries) {
      Slot s;
      s.mode = e.mode;
      s.type = e.mode == CtxMode::DualJoin ? canonical_half(e.type) : e.type;
      env_.emplace_back(x, s);
      tie(x, s.type);
    }
  }

  WDerivPtr run(const WProcPtr& p) {
    WDerivPtr d = go(p);
    for (const auto& [x, s] : env_)
      if (s.live && !slot_un(s))
        throw CheckError("LeftoverLinear",
                         "linear assumption " + x.str() + " unused");
    return d;
  }

 private:
  struct Slot {
    CtxMode mode = CtxMode::Plain;
    WType type = wt_unit();          // plain type, or canonical dual-join half
    bool live = true;                // false once fully consumed
    std::optional<WType> remaining;  // linear dual-join with one half left
  };

  std::vector<std::pair<Name, Slot>> env_;
  const LevelAssignment* l_;
  std::vector<LevelConstraint>* collect_;

  static bool slot_un(const Slot& s) { return un_pred(s.type); }

  Slot* find(const Name& x) {
    for (auto& [n, s] : env_)
      if (n == x && s.live) return &s;
    return nullptr;
  }
  void insert(const Name& x, Slot s) {
    if (find(x)) throw CheckError("DuplicateName", x.str() + " shadows context");
    env_.emplace_back(x, s);
  }
  void kill(const Name& x) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == x && it->second.live) {
        it->second.live = false;
        return;
      }
  }

  std::string env_text() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [x, s] : env_) {
      if (!s.live) continue;
      if (!first) os << ", ";
      os << x.str() << (s.mode == CtxMode::DualJoin ? " :: " : " : ")
         << show(s.remaining ? *s.remaining : s.type);
      first = false;
    }
    return os.str();
  }

  // ----- level side conditions -----

  static Name level_name(const Level& lv) {
    if (const int* n = std::get_if<int>(&lv)) return Name("%lv" + std::to_string(*n));
    return std::get<Name>(lv);
  }

  int resolve(const Level& lv) const {
    if (const int* n = std::get_if<int>(&lv)) return *n;
    const Name& c = std::get<Name>(lv);
    auto it = l_->find(c);
    if (it == l_->end())
      throw CheckError("MissingLevel", "no level for carrier " + c.str());
    return it->second;
  }

  static const Level* top_level(const WType& t) {
    return std::visit(
        [](const auto& n) -> const Level* {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, WTUnit>)
            return nullptr;
          else
            return &n.level;
        },
        t.node);
  }

  // name's own level must agree with the top level of its type
  void tie(const Name& x, const WType& t) {
    const Level* top = top_level(t);
    if (!top) return;
    if (collect_) {
      Name c = level_name(*top);
      if (!(c == x)) collect_->push_back(lc_eq(x, c));
      return;
    }
    auto it = l_->find(x);
    if (it == l_->end())
      throw CheckError("MissingLevel", "no level for " + x.str());
    if (it->second != resolve(*top))
      throw CheckError("LevelViolation",
                       "level of " + x.str() + " disagrees with its type " + show(t));
  }

  // l(x) = l(y2) side condition of Lin-In1 / Lin-Out
  void eq_names(const Name& x, const Name& y2, const WType& ty2) {
    if (collect_) {
      collect_->push_back(lc_eq(x, y2));
      return;
    }
    auto ix = l_->find(x), iy = l_->find(y2);
    if (iy == l_->end() && is_unit(ty2)) return;  // unit names are unconstrained
    if (ix == l_->end() || iy == l_->end())
      throw CheckError("MissingLevel",
                       "missing level for side condition l(" + x.str() + ") = l(" +
                           y2.str() + ")");
    if (ix->second != iy->second)
      throw CheckError("LevelViolation", "requires l(" + x.str() + ") = l(" +
                                             y2.str() + ")");
  }

  // server side condition: for active output subject b, l(b) < l(x)
  void lt_names(const Name& b, const Name& x) {
    if (collect_) {
      collect_->push_back(lc_lt(b, x));
      return;
    }
    auto ib = l_->find(b), ix = l_->find(x);
    if (ib == l_->end() || ix == l_->end())
      throw CheckError("MissingLevel",
                       "missing level for side condition l(" + b.str() + ") < l(" +
                           x.str() + ")");
    if (!(ib->second < ix->second))
      throw CheckError("LevelViolation", "server " + x.str() +
                                             " requires l(" + b.str() + ") < l(" +
                                             x.str() + ")");
  }

  void eq_levels(const Level& a, const Level& b) {
    if (collect_) {
      Name na = level_name(a), nb = level_name(b);
      if (!(na == nb)) collect_->push_back(lc_eq(na, nb));
      return;
    }
    if (resolve(a) != resolve(b))
      throw CheckError("TypeMismatch", "type level disagreement");
  }

  // structural type agreement; levels compared via eq_levels
  void unify(const WType& a, const WType& b) {
    if (a.node.index() != b.node.index())
      throw CheckError("TypeMismatch", show(a) + " vs " + show(b));
    std::visit(
        [&](const auto& na) {
          using T = std::decay_t<decltype(na)>;
          const auto& nb = std::get<T>(b.node);
          if constexpr (std::is_same_v<T, WTUnit>) {
          } else if constexpr (std::is_same_v<T, WTIn> || std::is_same_v<T, WTOut>) {
            eq_levels(na.level, nb.level);
            unify(*na.payload1, *nb.payload1);
            unify(*na.payload2, *nb.payload2);
          } else {
            eq_levels(na.level, nb.level);
            unify(*na.payload, *nb.payload);
          }
        },
        a.node);
  }

  // ----- subjects and values -----

  enum class Shape { In, Out, Srv, Cli };

  static bool has_shape(const WType& t, Shape s) {
    switch (s) {
      case Shape::In: return std::holds_alternative<WTIn>(t.node);
      case Shape::Out: return std::holds_alternative<WTOut>(t.node);
      case Shape::Srv: return std::holds_alternative<WTSrv>(t.node);
      case Shape::Cli: return std::holds_alternative<WTCli>(t.node);
    }
    return false;
  }

  // Reads the subject x at the given shape. Returns the concrete type seen
  // and whether the entry was a dual-join (Var2-style read). Consumes linear
  // material.
  std::pair<WType, bool> use_subject(const Name& x, Shape want) {
    Slot* s = find(x);
    if (!s) throw CheckError("UnknownName", x.str() + " not in context");
    if (s->mode == CtxMode::Plain) {
      if (!has_shape(s->type, want))
        throw CheckError("TypeMismatch", "subject " + x.str() + " : " +
                                             show(s->type) + " used at wrong shape");
      WType t = s->type;
      if (!un_pred(t)) kill(x);
      return {t, false};
    }
    // dual-join entry
    if (un_pred(s->type)) {
      WType cand = s->type;
      if (has_shape(cand, want)) return {cand, true};
      cand = comm_dual(s->type);
      if (has_shape(cand, want)) return {cand, true};
      throw CheckError("TypeMismatch", "subject " + x.str() + " :: " +
                                           show(s->type) + " used at wrong shape");
    }
    // linear dual-join: take one half
    if (s->remaining) {
      if (!has_shape(*s->remaining, want))
        throw CheckError("TypeMismatch",
                         "subject " + x.str() + " remaining half " +
                             show(*s->remaining) + " used at wrong shape");
      WType t = *s->remaining;
      kill(x);
      return {t, true};
    }
    for (const WType& cand : {s->type, comm_dual(s->type)}) {
      if (has_shape(cand, want)) {
        s->remaining = comm_dual(cand);
        return {cand, true};
      }
    }
    throw CheckError("TypeMismatch", "subject " + x.str() + " :: " + show(s->type) +
                                         " used at wrong shape");
  }

  // Value premise Γ, y:V ⊢ y:V.
  WRule use_value(const Name& y, const WType& expect) {
    Slot* s = find(y);
    if (!s) throw CheckError("UnknownName", y.str() + " not in context");
    if (s->mode == CtxMode::Plain) {
      unify(s->type, expect);
      if (!un_pred(s->type)) kill(y);
      return WRule::Var1;
    }
    if (un_pred(s->type)) {
      // try both orientations
      if (s->type.node.index() == expect.node.index())
        unify(s->type, expect);
      else
        unify(comm_dual(s->type), expect);
      return WRule::Var2;
    }
    const WType& half = s->remaining ? *s->remaining : s->type;
    if (half.node.index() == expect.node.index()) {
      unify(half, expect);
      if (s->remaining) {
        kill(y);
      } else {
        s->remaining = comm_dual(s->type);
      }
      return WRule::Var2;
    }
    if (!s->remaining) {
      WType other = comm_dual(s->type);
      if (other.node.index() == expect.node.index()) {
        unify(other, expect);
        s->remaining = s->type;
        return WRule::Var2;
      }
    }
    throw CheckError("TypeMismatch", "value " + y.str() + " does not have type " +
                                         show(expect));
  }

  // binder scope exit
  void drop_scoped(const Name& x) {
    Slot* s = find(x);
    if (!s) return;
    if (!slot_un(*s) && !(s->mode == CtxMode::DualJoin))
      throw CheckError("LeftoverLinear", "linear assumption " + x.str() + " unused");
    if (s->mode == CtxMode::DualJoin && !slot_un(*s))
      throw CheckError("LeftoverLinear",
                       "restricted channel " + x.str() + " has unused capability");
    kill(x);
  }

  WDerivPtr node(WRule r, std::string ctx, const std::string& concl,
                 std::vector<WDerivPtr> prem) {
    auto d = std::make_shared<WDerivation>();
    d->rule = r;
    d->ctx_text = std::move(ctx);
    d->conclusion = concl;
    d->premises = std::move(prem);
    return d;
  }

  WDerivPtr var_node(WRule r, const Name& x, const WType& t) {
    return node(r, env_text(), x.str() + " : " + show(t), {});
  }

  WDerivPtr go(const WProcPtr& p) {
    std::string here = env_text();
    return std::visit(
        [&](const auto& n) -> WDerivPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, WNil>) {
            return node(WRule::Nil, here, "0", {});
          } else if constexpr (std::is_same_v<T, WPar>) {
            WDerivPtr a = go(n.left);
            WDerivPtr b = go(n.right);
            return node(WRule::Par, here, show(p), {a, b});
          } else if constexpr (std::is_same_v<T, WRes>) {
            if (!n.ann)
              throw CheckError("MissingAnnotation",
                               "restriction " + n.name.str() + " has no type");
            Slot s;
            s.mode = CtxMode::DualJoin;
            s.type = canonical_half(*n.ann);
            insert(n.name, s);
            tie(n.name, s.type);
            WDerivPtr b = go(n.body);
            drop_scoped(n.name);
            return node(WRule::Res, here, show(p), {b});
          } else if constexpr (std::is_same_v<T, WInput>) {
            Slot* s0 = find(n.subject);
            if (!s0)
              throw CheckError("UnknownName", n.subject.str() + " not in context");
            bool srv_shape =
                std::holds_alternative<WTSrv>(s0->type.node) ||
                (s0->mode == CtxMode::DualJoin &&
                 std::holds_alternative<WTSrv>(canonical_half(s0->type).node));
            if (srv_shape) {
              auto [t, dj] = use_subject(n.subject, Shape::Srv);
              const auto& srv = std::get<WTSrv>(t.node);
              WDerivPtr vx = var_node(dj ? WRule::Var2 : WRule::Var1, n.subject, t);
              Slot b1;
              b1.type = *srv.payload;
              insert(n.binder1, b1);
              tie(n.binder1, b1.type);
              Slot b2;
              b2.type = wt_unit();
              insert(n.binder2, b2);
              WDerivPtr body = go(n.body);
              drop_scoped(n.binder1);
              drop_scoped(n.binder2);
              return node(dj ? WRule::LinIn3 : WRule::LinIn2, here, show(p),
                          {vx, body});
            }
            auto [t, dj] = use_subject(n.subject, Shape::In);
            const auto& in = std::get<WTIn>(t.node);
            WDerivPtr vx = var_node(dj ? WRule::Var2 : WRule::Var1, n.subject, t);
            Slot b1;
            b1.type = *in.payload1;
            insert(n.binder1, b1);
            tie(n.binder1, b1.type);
            Slot b2;
            b2.type = *in.payload2;
            insert(n.binder2, b2);
            tie(n.binder2, b2.type);
            eq_names(n.subject, n.binder2, *in.payload2);
            WDerivPtr body = go(n.body);
            drop_scoped(n.binder1);
            drop_scoped(n.binder2);
            return node(WRule::LinIn1, here, show(p), {vx, body});
          } else if constexpr (std::is_same_v<T, WServer>) {
            auto [t, dj] = use_subject(n.subject, Shape::Srv);
            const auto& srv = std::get<WTSrv>(t.node);
            WDerivPtr vx = var_node(dj ? WRule::Var2 : WRule::Var1, n.subject, t);
            // un(Γ): the body sees only the unrestricted part
            std::vector<std::pair<Name, Slot>> saved;
            std::vector<std::pair<Name, Slot>> visible;
            for (auto& e : env_) {
              if (!e.second.live || slot_un(e.second))
                visible.push_back(e);
              else
                saved.push_back(e);
            }
            std::swap(env_, visible);
            Slot b1;
            b1.type = *srv.payload;
            insert(n.binder1, b1);
            tie(n.binder1, b1.type);
            Slot b2;
            b2.type = wt_unit();
            insert(n.binder2, b2);
            WDerivPtr body = go(n.body);
            drop_scoped(n.binder1);
            drop_scoped(n.binder2);
            for (const Name& b : active_outputs(n.body)) lt_names(b, n.subject);
            for (auto& e : saved) env_.push_back(e);
            return node(dj ? WRule::UnIn2 : WRule::UnIn1, here, show(p), {vx, body});
          } else {  // WOutput
            Slot* s0 = find(n.subject);
            if (!s0)
              throw CheckError("UnknownName", n.subject.str() + " not in context");
            bool cli_shape =
                std::holds_alternative<WTCli>(s0->type.node) ||
                (s0->mode == CtxMode::DualJoin &&
                 std::holds_alternative<WTCli>(comm_dual(canonical_half(s0->type)).node) &&
                 un_pred(s0->type));
            if (cli_shape) {
              auto [t, dj] = use_subject(n.subject, Shape::Cli);
              const auto& cli = std::get<WTCli>(t.node);
              WDerivPtr vx = var_node(dj ? WRule::Var2 : WRule::Var1, n.subject, t);
              WRule vr = use_value(n.payload1, *cli.payload);
              WDerivPtr vv = var_node(vr, n.payload1, *cli.payload);
              Slot* s2 = find(n.payload2);
              if (!s2)
                throw CheckError("UnknownName",
                                 n.payload2.str() + " not in context");
              if (!is_unit(s2->type))
                throw CheckError("TypeMismatch",
                                 "second payload " + n.payload2.str() +
                                     " of an unrestricted output must be unit");
              WDerivPtr body = go(n.cont);
              return node(dj ? WRule::UnOut2 : WRule::UnOut1, here, show(p),
                          {vx, vv, body});
            }
            auto [t, dj] = use_subject(n.subject, Shape::Out);
            const auto& out = std::get<WTOut>(t.node);
            WDerivPtr vx = var_node(dj ? WRule::Var2 : WRule::Var1, n.subject, t);
            WRule vr = use_value(n.payload1, *out.payload1);
            WDerivPtr vv = var_node(vr, n.payload1, *out.payload1);
            // continuation name: a dual-join assumption consumed whole here,
            // the body sees the plain half
            eq_names(n.subject, n.payload2, *out.payload2);
            Slot* s2 = find(n.payload2);
            if (!s2)
              throw CheckError("UnknownName", n.payload2.str() + " not in context");
            if (is_unit(*out.payload2)) {
              if (!is_unit(s2->type))
                throw CheckError("TypeMismatch",
                                 "continuation " + n.payload2.str() + " must be unit");
              WDerivPtr body = go(n.cont);
              return node(WRule::LinOut, here, show(p), {vx, vv, body});
            }
            if (s2->mode != CtxMode::DualJoin)
              throw CheckError("ModeMismatch",
                               "continuation payload " + n.payload2.str() +
                                   " needs a dual-join assumption");
            if (!slot_un(*s2) && s2->remaining)
              throw CheckError("LeftoverLinear",
                               "continuation payload " + n.payload2.str() +
                                   " already partially used");
            WType stored = s2->type;
            WType v2 = stored.node.index() == out.payload2->node.index()
                           ? stored
                           : comm_dual(stored);
            unify(v2, *out.payload2);
            if (!slot_un(*s2)) {
              kill(n.payload2);
              Slot plain;
              plain.type = v2;
              insert(n.payload2, plain);
              WDerivPtr body = go(n.cont);
              drop_scoped(n.payload2);
              return node(WRule::LinOut, here, show(p), {vx, vv, body});
            }
            WDerivPtr body = go(n.cont);
            return node(WRule::LinOut, here, show(p), {vx, vv, body});
          }
        },
        p->node);
  }
};

}  // namespace

std::string show(const WDerivation& d) {
  std::ostringstream os;
  show_wderiv(d, 0, os);
  return os.str();
}

WDerivPtr check_w(const WCtx& g, const WProcPtr& p, const LevelAssignment& l) {
  WChecker c(g, &l, nullptr);
  return c.run(p);
}

std::vector<LevelConstraint> gen_constraints(const WCtx& g, const WProcPtr& p) {
  std::vector<LevelConstraint> cs;
  WChecker c(g, nullptr, &cs);
  c.run(p);
  // literal levels keep their relative order
  std::set<int> lits;
  auto scan = [&](const WType& t) {
    auto rec = [&](auto&& self, const WType& u) -> void {
      std::visit(
          [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (!std::is_same_v<T, WTUnit>) {
              if (const int* v = std::get_if<int>(&n.level)) lits.insert(*v);
              if constexpr (std::is_same_v<T, WTIn> || std::is_same_v<T, WTOut>) {
                self(self, *n.payload1);
                self(self, *n.payload2);
              } else {
                self(self, *n.payload);
              }
            }
          },
          u.node);
    };
    rec(rec, t);
  };
  for (const auto& [x, e] : g.entries) scan(e.type);
  int prev = 0;
  bool have = false;
  for (int v : lits) {
    if (have)
      cs.push_back(lc_lt(Name("%lv" + std::to_string(prev)),
                         Name("%lv" + std::to_string(v))));
    prev = v;
    have = true;
  }
  std::set<LevelConstraint> dedup(cs.begin(), cs.end());
  return std::vector<LevelConstraint>(dedup.begin(), dedup.end());
}

WType instantiate(const WType& t, const LevelAssignment& l) {
  auto lv = [&](const Level& v) -> Level {
    if (const int* n = std::get_if<int>(&v)) return *n;
    const Name& c = std::get<Name>(v);
    auto it = l.find(c);
    if (it == l.end())
      throw CheckError("MissingLevel", "no level for carrier " + c.str());
    return it->second;
  };
  return std::visit(
      [&](const auto& n) -> WType {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WTUnit>) {
          return wt_unit();
        } else if constexpr (std::is_same_v<T, WTIn>) {
          return wt_in(lv(n.level), instantiate(*n.payload1, l),
                       instantiate(*n.payload2, l));
        } else if constexpr (std::is_same_v<T, WTOut>) {
          return wt_out(lv(n.level), instantiate(*n.payload1, l),
                        instantiate(*n.payload2, l));
        } else if constexpr (std::is_same_v<T, WTSrv>) {
          return wt_srv(lv(n.level), instantiate(*n.payload, l));
        } else {
          return wt_cli(lv(n.level), instantiate(*n.payload, l));
        }
      },
      t.node);
}

namespace {

std::optional<int> top_level_int(const WType& t) {
  return std::visit(
      [](const auto& n) -> std::optional<int> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WTUnit>) {
          return std::nullopt;
        } else {
          if (const int* v = std::get_if<int>(&n.level)) return *v;
          return std::nullopt;
        }
      },
      t.node);
}

void derive_walk(const WProcPtr& p, std::map<Name, WType>& types,
                 LevelAssignment& l) {
  auto note = [&](const Name& x, const WType& t) {
    types[x] = t;
    if (auto v = top_level_int(t)) l[x] = *v;
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
        } else if constexpr (std::is_same_v<T, WOutput>) {
          derive_walk(n.cont, types, l);
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          auto it = types.find(n.subject);
          if (it != types.end()) {
            if (const auto* in = std::get_if<WTIn>(&it->second.node)) {
              note(n.binder1, *in->payload1);
              note(n.binder2, *in->payload2);
            } else if (const auto* srv = std::get_if<WTSrv>(&it->second.node)) {
              note(n.binder1, *srv->payload);
              note(n.binder2, wt_unit());
            }
          }
          derive_walk(n.body, types, l);
        } else if constexpr (std::is_same_v<T, WPar>) {
          derive_walk(n.left, types, l);
          derive_walk(n.right, types, l);
        } else {
          if (n.ann) note(n.name, canonical_half(*n.ann));
          derive_walk(n.body, types, l);
        }
      },
      p->node);
}

}  // namespace

LevelAssignment derive_levels(const WCtx& g, const WProcPtr& p) {
  std::map<Name, WType> types;
  LevelAssignment l;
  for (const auto& [x, e] : g.entries) {
    WType t = e.mode == CtxMode::DualJoin ? canonical_half(e.type) : e.type;
    types[x] = t;
    if (auto v = top_level_int(t)) l[x] = *v;
  }
  derive_walk(p, types, l);
  return l;
}

}  // namespace sessterm
