#include "sessterm/congruence.hpp"

#include "sessterm/detail/soup.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace sessterm {

namespace {

// ---------- alpha-invariant structural keys ----------
// Names bound inside the component and names restricted at the soup level
// print as a placeholder, so alpha-variants and restriction renamings get
// equal keys. Keys decide the component order only; final comparison is on
// the rebuilt concrete terms.

void key_name(const Name& n, const NameSet& local, std::ostringstream& os) {
  if (local.count(n))
    os << "~";
  else
    os << n.str();
}

void key_s(const SProcPtr& p, NameSet local, std::ostringstream& os) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SNil>) {
          os << "0";
        } else if constexpr (std::is_same_v<T, SOutput>) {
          os << "o(";
          key_name(n.subject, local, os);
          os << ",";
          key_name(n.value, local, os);
          os << ").";
          key_s(n.cont, local, os);
        } else if constexpr (std::is_same_v<T, SInput>) {
          os << (n.qual == Qual::Lin ? "il(" : "iu(");
          key_name(n.subject, local, os);
          os << ").";
          local.insert(n.binder);
          key_s(n.body, local, os);
        } else if constexpr (std::is_same_v<T, SPar>) {
          os << "(";
          key_s(n.left, local, os);
          os << "|";
          key_s(n.right, local, os);
          os << ")";
        } else {
          os << "nu.";
          local.insert(n.endpoint_a);
          local.insert(n.endpoint_b);
          key_s(n.body, local, os);
        }
      },
      p->node);
}

void key_w(const WProcPtr& p, NameSet local, std::ostringstream& os) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
          os << "0";
        } else if constexpr (std::is_same_v<T, WOutput>) {
          os << "o(";
          key_name(n.subject, local, os);
          os << ",";
          key_name(n.payload1, local, os);
          os << ",";
          key_name(n.payload2, local, os);
          os << ").";
          key_w(n.cont, local, os);
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          os << (std::is_same_v<T, WServer> ? "s(" : "i(");
          key_name(n.subject, local, os);
          os << ").";
          local.insert(n.binder1);
          local.insert(n.binder2);
          key_w(n.body, local, os);
        } else if constexpr (std::is_same_v<T, WPar>) {
          os << "(";
          key_w(n.left, local, os);
          os << "|";
          key_w(n.right, local, os);
          os << ")";
        } else {
          os << "nu.";
          local.insert(n.name);
          key_w(n.body, local, os);
        }
      },
      p->node);
}

void key_d(const DProcPtr& p, NameSet local, std::ostringstream& os) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DNil>) {
          os << "0";
        } else if constexpr (std::is_same_v<T, DBoundOut>) {
          os << "bo(";
          key_name(n.subject, local, os);
          os << ").";
          local.insert(n.binder);
          key_d(n.cont, local, os);
        } else if constexpr (std::is_same_v<T, DInput> ||
                             std::is_same_v<T, DServer>) {
          os << (std::is_same_v<T, DServer> ? "s(" : "i(");
          key_name(n.subject, local, os);
          os << ").";
          local.insert(n.binder);
          key_d(n.body, local, os);
        } else if constexpr (std::is_same_v<T, DPar>) {
          os << "(";
          key_d(n.left, local, os);
          os << "|";
          key_d(n.right, local, os);
          os << ")";
        } else if constexpr (std::is_same_v<T, DRes>) {
          os << "nu.";
          local.insert(n.name);
          key_d(n.body, local, os);
        } else if constexpr (std::is_same_v<T, DForward>) {
          os << "fwd(";
          key_name(n.from, local, os);
          os << ",";
          key_name(n.to, local, os);
          os << ")";
        } else if constexpr (std::is_same_v<T, DSelL>) {
          os << "inl(";
          key_name(n.subject, local, os);
          os << ").";
          key_d(n.cont, local, os);
        } else if constexpr (std::is_same_v<T, DSelR>) {
          os << "inr(";
          key_name(n.subject, local, os);
          os << ").";
          key_d(n.cont, local, os);
        } else {
          os << "case(";
          key_name(n.subject, local, os);
          os << ",";
          key_d(n.left, local, os);
          os << ",";
          key_d(n.right, local, os);
          os << ")";
        }
      },
      p->node);
}

template <class ProcPtr, class KeyFn>
std::string make_key(const ProcPtr& p, const NameSet& local, KeyFn key_fn) {
  std::ostringstream os;
  key_fn(p, local, os);
  return os.str();
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '%' ||
         c == '\'';
}

// First occurrence of `x` as a whole token inside a key string.
long token_pos(const std::string& s, const std::string& x) {
  size_t from = 0;
  while (true) {
    size_t f = s.find(x, from);
    if (f == std::string::npos) return -1;
    bool left_ok = f == 0 || !name_char(s[f - 1]);
    size_t end = f + x.size();
    bool right_ok = end >= s.size() || !name_char(s[end]);
    if (left_ok && right_ok) return static_cast<long>(f);
    from = f + 1;
  }
}

// ---------- πS ----------

SProcPtr canon_s_rec(const SProcPtr& p) {
  std::vector<detail::SRestriction> res;
  std::vector<SProcPtr> comps;
  detail::s_soup(p, res, comps);
  // canonicalize component continuations
  for (auto& c : comps) {
    c = std::visit(
        [&](const auto& n) -> SProcPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, SOutput>) {
            return s_out(n.subject, n.value, canon_s_rec(n.cont));
          } else if constexpr (std::is_same_v<T, SInput>) {
            return s_in(n.qual, n.subject, n.binder, canon_s_rec(n.body));
          } else {
            return c;
          }
        },
        c->node);
  }
  NameSet local;
  for (const auto& r : res) {
    local.insert(r.a);
    local.insert(r.b);
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [&](const SProcPtr& x, const SProcPtr& y) {
                     return make_key(x, local, key_s) < make_key(y, local, key_s);
                   });
  // free names of components, for restriction GC
  NameSet used;
  for (const auto& c : comps)
    for (const Name& x : free_names(c)) used.insert(x);
  std::vector<detail::SRestriction> kept;
  for (auto r : res) {
    bool ua = used.count(r.a), ub = used.count(r.b);
    if (!ua && !ub) continue;
    kept.push_back(r);
  }
  // orient each pair by first use, order restrictions by first use
  auto pos_of = [&](const Name& x) -> long {
    long base = 0;
    for (const auto& c : comps) {
      std::string s = make_key(c, NameSet{}, key_s);
      long f = token_pos(s, x.str());
      if (f >= 0) return base + f;
      base += 1000000;
    }
    return base + 999999999L;
  };
  for (auto& r : kept) {
    if (pos_of(r.b) < pos_of(r.a)) {
      std::swap(r.a, r.b);
      if (r.type_a) r.type_a = dual_s(*r.type_a);
    }
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [&](const detail::SRestriction& x, const detail::SRestriction& y) {
                     return std::min(pos_of(x.a), pos_of(x.b)) <
                            std::min(pos_of(y.a), pos_of(y.b));
                   });
  return detail::s_rebuild(kept, comps);
}

SProcPtr rename_canon_s(const SProcPtr& p, std::map<Name, Name>& ren, int& k) {
  auto fresh = [&](const Name& n) {
    Name out("%r" + std::to_string(k++), 0);
    ren[n] = out;
    return out;
  };
  auto look = [&](const Name& n) {
    auto it = ren.find(n);
    return it == ren.end() ? n : it->second;
  };
  return std::visit(
      [&](const auto& n) -> SProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, SOutput>) {
          Name s = look(n.subject), v = look(n.value);
          return s_out(s, v, rename_canon_s(n.cont, ren, k));
        } else if constexpr (std::is_same_v<T, SInput>) {
          Name s = look(n.subject);
          auto saved = ren;
          Name b = fresh(n.binder);
          SProcPtr body = rename_canon_s(n.body, ren, k);
          ren = saved;
          return s_in(n.qual, s, b, body);
        } else if constexpr (std::is_same_v<T, SPar>) {
          SProcPtr l = rename_canon_s(n.left, ren, k);
          SProcPtr r = rename_canon_s(n.right, ren, k);
          return s_par(l, r);
        } else {
          auto saved = ren;
          Name a = fresh(n.endpoint_a);
          Name b = fresh(n.endpoint_b);
          SProcPtr body = rename_canon_s(n.body, ren, k);
          ren = saved;
          return s_res(a, b, body, n.type_a);
        }
      },
      p->node);
}

// ---------- πW ----------

WProcPtr canon_w_rec(const WProcPtr& p) {
  std::vector<detail::WRestriction> res;
  std::vector<WProcPtr> comps;
  detail::w_soup(p, res, comps);
  for (auto& c : comps) {
    c = std::visit(
        [&](const auto& n) -> WProcPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, WOutput>) {
            return w_out(n.subject, n.payload1, n.payload2, canon_w_rec(n.cont));
          } else if constexpr (std::is_same_v<T, WInput>) {
            return w_in(n.subject, n.binder1, n.binder2, canon_w_rec(n.body));
          } else if constexpr (std::is_same_v<T, WServer>) {
            return w_srv(n.subject, n.binder1, n.binder2, canon_w_rec(n.body));
          } else {
            return c;
          }
        },
        c->node);
  }
  NameSet local;
  for (const auto& r : res) local.insert(r.x);
  std::stable_sort(comps.begin(), comps.end(),
                   [&](const WProcPtr& x, const WProcPtr& y) {
                     return make_key(x, local, key_w) < make_key(y, local, key_w);
                   });
  NameSet used;
  for (const auto& c : comps)
    for (const Name& x : free_names(c)) used.insert(x);
  std::vector<detail::WRestriction> kept;
  for (const auto& r : res)
    if (used.count(r.x)) kept.push_back(r);
  auto pos_of = [&](const Name& x) -> long {
    long base = 0;
    for (const auto& c : comps) {
      std::string s = make_key(c, NameSet{}, key_w);
      long f = token_pos(s, x.str());
      if (f >= 0) return base + f;
      base += 1000000;
    }
    return base + 999999999L;
  };
  std::stable_sort(kept.begin(), kept.end(),
                   [&](const detail::WRestriction& a, const detail::WRestriction& b) {
                     return pos_of(a.x) < pos_of(b.x);
                   });
  return detail::w_rebuild(kept, comps);
}

WProcPtr rename_canon_w(const WProcPtr& p, std::map<Name, Name>& ren, int& k) {
  auto fresh = [&](const Name& n) {
    Name out("%r" + std::to_string(k++), 0);
    ren[n] = out;
    return out;
  };
  auto look = [&](const Name& n) {
    auto it = ren.find(n);
    return it == ren.end() ? n : it->second;
  };
  return std::visit(
      [&](const auto& n) -> WProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, WOutput>) {
          Name s = look(n.subject), v1 = look(n.payload1), v2 = look(n.payload2);
          return w_out(s, v1, v2, rename_canon_w(n.cont, ren, k));
        } else if constexpr (std::is_same_v<T, WInput> ||
                             std::is_same_v<T, WServer>) {
          Name s = look(n.subject);
          auto saved = ren;
          Name b1 = fresh(n.binder1);
          Name b2 = fresh(n.binder2);
          WProcPtr body = rename_canon_w(n.body, ren, k);
          ren = saved;
          if constexpr (std::is_same_v<T, WInput>)
            return w_in(s, b1, b2, body);
          else
            return w_srv(s, b1, b2, body);
        } else if constexpr (std::is_same_v<T, WPar>) {
          WProcPtr l = rename_canon_w(n.left, ren, k);
          WProcPtr r = rename_canon_w(n.right, ren, k);
          return w_par(l, r);
        } else {
          auto saved = ren;
          Name x = fresh(n.name);
          WProcPtr body = rename_canon_w(n.body, ren, k);
          ren = saved;
          return w_res(x, body, n.ann);
        }
      },
      p->node);
}

// ---------- πDILL ----------

DProcPtr canon_d_rec(const DProcPtr& p) {
  std::vector<detail::DRestriction> res;
  std::vector<DProcPtr> comps;
  detail::d_soup(p, res, comps);
  for (auto& c : comps) {
    c = std::visit(
        [&](const auto& n) -> DProcPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DBoundOut>) {
            return d_bout(n.subject, n.binder, canon_d_rec(n.cont));
          } else if constexpr (std::is_same_v<T, DInput>) {
            return d_in(n.subject, n.binder, canon_d_rec(n.body));
          } else if constexpr (std::is_same_v<T, DServer>) {
            return d_srv(n.subject, n.binder, canon_d_rec(n.body));
          } else if constexpr (std::is_same_v<T, DSelL>) {
            return d_sell(n.subject, canon_d_rec(n.cont));
          } else if constexpr (std::is_same_v<T, DSelR>) {
            return d_selr(n.subject, canon_d_rec(n.cont));
          } else if constexpr (std::is_same_v<T, DCase>) {
            return d_case(n.subject, canon_d_rec(n.left), canon_d_rec(n.right));
          } else {
            return c;
          }
        },
        c->node);
  }
  NameSet local;
  for (const auto& r : res) local.insert(r.x);
  std::stable_sort(comps.begin(), comps.end(),
                   [&](const DProcPtr& x, const DProcPtr& y) {
                     return make_key(x, local, key_d) < make_key(y, local, key_d);
                   });
  NameSet used;
  for (const auto& c : comps)
    for (const Name& x : free_names(c)) used.insert(x);
  std::vector<detail::DRestriction> kept;
  for (const auto& r : res)
    if (used.count(r.x)) kept.push_back(r);
  auto pos_of = [&](const Name& x) -> long {
    long base = 0;
    for (const auto& c : comps) {
      std::string s = make_key(c, NameSet{}, key_d);
      long f = token_pos(s, x.str());
      if (f >= 0) return base + f;
      base += 1000000;
    }
    return base + 999999999L;
  };
  std::stable_sort(kept.begin(), kept.end(),
                   [&](const detail::DRestriction& a, const detail::DRestriction& b) {
                     return pos_of(a.x) < pos_of(b.x);
                   });
  return detail::d_rebuild(kept, comps);
}

DProcPtr rename_canon_d(const DProcPtr& p, std::map<Name, Name>& ren, int& k) {
  auto fresh = [&](const Name& n) {
    Name out("%r" + std::to_string(k++), 0);
    ren[n] = out;
    return out;
  };
  auto look = [&](const Name& n) {
    auto it = ren.find(n);
    return it == ren.end() ? n : it->second;
  };
  return std::visit(
      [&](const auto& n) -> DProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, DBoundOut>) {
          Name s = look(n.subject);
          auto saved = ren;
          Name b = fresh(n.binder);
          DProcPtr c = rename_canon_d(n.cont, ren, k);
          ren = saved;
          return d_bout(s, b, c);
        } else if constexpr (std::is_same_v<T, DInput> ||
                             std::is_same_v<T, DServer>) {
          Name s = look(n.subject);
          auto saved = ren;
          Name b = fresh(n.binder);
          DProcPtr body = rename_canon_d(n.body, ren, k);
          ren = saved;
          if constexpr (std::is_same_v<T, DInput>)
            return d_in(s, b, body);
          else
            return d_srv(s, b, body);
        } else if constexpr (std::is_same_v<T, DPar>) {
          DProcPtr l = rename_canon_d(n.left, ren, k);
          DProcPtr r = rename_canon_d(n.right, ren, k);
          return d_par(l, r);
        } else if constexpr (std::is_same_v<T, DRes>) {
          auto saved = ren;
          Name x = fresh(n.name);
          DProcPtr body = rename_canon_d(n.body, ren, k);
          ren = saved;
          return d_res(x, body, n.ann);
        } else if constexpr (std::is_same_v<T, DForward>) {
          return d_fwd(look(n.from), look(n.to));
        } else if constexpr (std::is_same_v<T, DSelL>) {
          return d_sell(look(n.subject), rename_canon_d(n.cont, ren, k));
        } else if constexpr (std::is_same_v<T, DSelR>) {
          return d_selr(look(n.subject), rename_canon_d(n.cont, ren, k));
        } else {
          return d_case(look(n.subject), rename_canon_d(n.left, ren, k),
                        rename_canon_d(n.right, ren, k));
        }
      },
      p->node);
}

}  // namespace

SProcPtr canonical_s(const SProcPtr& p) {
  std::map<Name, Name> ren;
  int k = 0;
  return rename_canon_s(canon_s_rec(normalize(p)), ren, k);
}
WProcPtr canonical_w(const WProcPtr& p) {
  std::map<Name, Name> ren;
  int k = 0;
  return rename_canon_w(canon_w_rec(normalize(p)), ren, k);
}
DProcPtr canonical_d(const DProcPtr& p) {
  std::map<Name, Name> ren;
  int k = 0;
  return rename_canon_d(canon_d_rec(normalize(p)), ren, k);
}

bool congruent_s(const SProcPtr& a, const SProcPtr& b) {
  return alpha_eq(canonical_s(a), canonical_s(b));
}
bool congruent_w(const WProcPtr& a, const WProcPtr& b) {
  return alpha_eq(canonical_w(a), canonical_w(b));
}
bool congruent_d(const DProcPtr& a, const DProcPtr& b) {
  return alpha_eq(canonical_d(a), canonical_d(b));
}

std::string canonical_key(const SProcPtr& p) { return show(canonical_s(p)); }
std::string canonical_key(const WProcPtr& p) { return show(canonical_w(p)); }
std::string canonical_key(const DProcPtr& p) { return show(canonical_d(p)); }

}  // namespace sessterm
