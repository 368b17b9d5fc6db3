#include "sessterm/types.hpp"

#include <sstream>

namespace sessterm {

SType dual_s(const SType& t) {
  return std::visit(
      [](const auto& n) -> SType {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, STEnd>) {
          return st_end();
        } else if constexpr (std::is_same_v<T, STLin>) {
          Dir d = n.dir == Dir::Recv ? Dir::Send : Dir::Recv;
          return SType{STLin{d, n.payload, Box<SType>(dual_s(*n.cont))}};
        } else if constexpr (std::is_same_v<T, STServer>) {
          return SType{STClient{n.payload}};
        } else {
          return SType{STServer{n.payload}};
        }
      },
      t.node);
}

bool un_pred(const SType& t) {
  return !std::holds_alternative<STLin>(t.node);
}

bool srv_pred(const SType& t) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, STEnd>) return false;
        else if constexpr (std::is_same_v<T, STLin>) return srv_pred(*n.cont);
        else if constexpr (std::is_same_v<T, STServer>) return true;
        else return srv_pred(*n.payload);  // *!T: srv(T)
      },
      t.node);
}

bool cli_pred(const SType& t) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, STEnd>) return false;
        else if constexpr (std::is_same_v<T, STLin>) return cli_pred(*n.cont);
        else if constexpr (std::is_same_v<T, STServer>) return cli_pred(*n.payload);
        else return true;  // *!T
      },
      t.node);
}

namespace {
// Payload atoms never contain a dot, so "lin ?A.B" stays unambiguous.
std::string show_atom(const SType& t) {
  if (std::holds_alternative<STLin>(t.node)) return "(" + show(t) + ")";
  return show(t);
}
}  // namespace

std::string show(const SType& t) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, STEnd>) {
          return "end";
        } else if constexpr (std::is_same_v<T, STLin>) {
          std::string d = n.dir == Dir::Recv ? "?" : "!";
          return "lin " + d + show_atom(*n.payload) + "." + show(*n.cont);
        } else if constexpr (std::is_same_v<T, STServer>) {
          return "srv " + show_atom(*n.payload);
        } else {
          return "cli " + show_atom(*n.payload);
        }
      },
      t.node);
}

std::string show(const Level& l) {
  if (const int* n = std::get_if<int>(&l)) return std::to_string(*n);
  return std::get<Name>(l).str();
}

WType dual_w(const WType& t) {
  return std::visit(
      [](const auto& n) -> WType {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WTUnit>) {
          return wt_unit();
        } else if constexpr (std::is_same_v<T, WTIn>) {
          return wt_out(n.level, dual_w(*n.payload1), dual_w(*n.payload2));
        } else if constexpr (std::is_same_v<T, WTOut>) {
          return wt_in(n.level, dual_w(*n.payload1), dual_w(*n.payload2));
        } else if constexpr (std::is_same_v<T, WTSrv>) {
          return wt_cli(n.level, dual_w(*n.payload));
        } else {
          return wt_srv(n.level, dual_w(*n.payload));
        }
      },
      t.node);
}

bool un_pred(const WType& t) {
  return !std::holds_alternative<WTIn>(t.node) &&
         !std::holds_alternative<WTOut>(t.node);
}

bool is_unit(const WType& t) { return std::holds_alternative<WTUnit>(t.node); }

std::string show(const WType& t) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WTUnit>) {
          return "unit";
        } else if constexpr (std::is_same_v<T, WTIn>) {
          return "in[" + show(n.level) + "](" + show(*n.payload1) + "," +
                 show(*n.payload2) + ")";
        } else if constexpr (std::is_same_v<T, WTOut>) {
          return "out[" + show(n.level) + "](" + show(*n.payload1) + "," +
                 show(*n.payload2) + ")";
        } else if constexpr (std::is_same_v<T, WTSrv>) {
          return "srv[" + show(n.level) + "](" + show(*n.payload) + ")";
        } else {
          return "cli[" + show(n.level) + "](" + show(*n.payload) + ")";
        }
      },
      t.node);
}

DType strip_bang(const DType& a) {
  if (const auto* b = std::get_if<DTBang>(&a.node)) return *b->inner;
  return a;
}

namespace {
std::string show_d_atom(const DType& t) {
  if (std::holds_alternative<DTOne>(t.node) ||
      std::holds_alternative<DTBang>(t.node))
    return show(t);
  return "(" + show(t) + ")";
}
}  // namespace

std::string show(const DType& t) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, DTOne>) {
          return "1";
        } else if constexpr (std::is_same_v<T, DTBang>) {
          return "!" + show_d_atom(*n.inner);
        } else if constexpr (std::is_same_v<T, DTLolli>) {
          return show_d_atom(*n.arg) + " -o " + show_d_atom(*n.res);
        } else if constexpr (std::is_same_v<T, DTTensor>) {
          return show_d_atom(*n.arg) + " * " + show_d_atom(*n.res);
        } else if constexpr (std::is_same_v<T, DTPlus>) {
          return show_d_atom(*n.left) + " (+) " + show_d_atom(*n.right);
        } else {
          return show_d_atom(*n.left) + " & " + show_d_atom(*n.right);
        }
      },
      t.node);
}

}  // namespace sessterm
