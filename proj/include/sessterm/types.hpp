#pragma once

#include <memory>
#include <string>
#include <variant>

#include "sessterm/names.hpp"

namespace sessterm {

// Value-semantic heap box with deep equality, for recursive type trees.
template <class T>
class Box {
 public:
  Box(T v) : p_(std::make_shared<const T>(std::move(v))) {}
  const T& operator*() const { return *p_; }
  const T* operator->() const { return p_.get(); }
  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::shared_ptr<const T> p_;
};

// ---------------- session types (πS) ----------------

enum class Qual { Lin, Un };
enum class Dir { Recv, Send };

struct SType;

struct STEnd {
  friend bool operator==(const STEnd&, const STEnd&) { return true; }
};
// lin ?T.S / lin !T.S
struct STLin {
  Dir dir;
  Box<SType> payload;
  Box<SType> cont;
  friend bool operator==(const STLin&, const STLin&) = default;
};
// *?T, the server type μa.un ?T.a
struct STServer {
  Box<SType> payload;
  friend bool operator==(const STServer&, const STServer&) = default;
};
// *!T, the client type μa.un !T.a
struct STClient {
  Box<SType> payload;
  friend bool operator==(const STClient&, const STClient&) = default;
};

struct SType {
  std::variant<STEnd, STLin, STServer, STClient> node;
  friend bool operator==(const SType&, const SType&) = default;
};

inline SType st_end() { return SType{STEnd{}}; }
inline SType st_recv(SType t, SType s) {
  return SType{STLin{Dir::Recv, Box<SType>(std::move(t)), Box<SType>(std::move(s))}};
}
inline SType st_send(SType t, SType s) {
  return SType{STLin{Dir::Send, Box<SType>(std::move(t)), Box<SType>(std::move(s))}};
}
inline SType st_server(SType t) { return SType{STServer{Box<SType>(std::move(t))}}; }
inline SType st_client(SType t) { return SType{STClient{Box<SType>(std::move(t))}}; }

SType dual_s(const SType& t);
bool un_pred(const SType& t);
inline bool lin_pred(const SType&) { return true; }
// Whether the protocol eventually behaves as a server / starts as a client.
bool srv_pred(const SType& t);
bool cli_pred(const SType& t);
std::string show(const SType& t);

// ---------------- link types (πW) ----------------

// A level slot: a concrete weight, or a symbolic carrier name to be fixed by
// a level assignment (used while constraints are still being solved).
using Level = std::variant<int, Name>;

std::string show(const Level& l);

struct WType;

struct WTUnit {
  friend bool operator==(const WTUnit&, const WTUnit&) { return true; }
};
struct WTIn {
  Level level;
  Box<WType> payload1;
  Box<WType> payload2;
  friend bool operator==(const WTIn&, const WTIn&) = default;
};
struct WTOut {
  Level level;
  Box<WType> payload1;
  Box<WType> payload2;
  friend bool operator==(const WTOut&, const WTOut&) = default;
};
struct WTSrv {
  Level level;
  Box<WType> payload;
  friend bool operator==(const WTSrv&, const WTSrv&) = default;
};
struct WTCli {
  Level level;
  Box<WType> payload;
  friend bool operator==(const WTCli&, const WTCli&) = default;
};

struct WType {
  std::variant<WTUnit, WTIn, WTOut, WTSrv, WTCli> node;
  friend bool operator==(const WType&, const WType&) = default;
};

inline WType wt_unit() { return WType{WTUnit{}}; }
inline WType wt_in(Level n, WType a, WType b) {
  return WType{WTIn{std::move(n), Box<WType>(std::move(a)), Box<WType>(std::move(b))}};
}
inline WType wt_out(Level n, WType a, WType b) {
  return WType{WTOut{std::move(n), Box<WType>(std::move(a)), Box<WType>(std::move(b))}};
}
inline WType wt_srv(Level n, WType a) {
  return WType{WTSrv{std::move(n), Box<WType>(std::move(a))}};
}
inline WType wt_cli(Level n, WType a) {
  return WType{WTCli{std::move(n), Box<WType>(std::move(a))}};
}

WType dual_w(const WType& t);
bool un_pred(const WType& t);
bool is_unit(const WType& t);
std::string show(const WType& t);

// ---------------- linear-logic propositions (πDILL) ----------------

struct DType;

struct DTOne {
  friend bool operator==(const DTOne&, const DTOne&) { return true; }
};
struct DTBang {
  Box<DType> inner;
  friend bool operator==(const DTBang&, const DTBang&) = default;
};
struct DTLolli {  // A -o B, receive
  Box<DType> arg;
  Box<DType> res;
  friend bool operator==(const DTLolli&, const DTLolli&) = default;
};
struct DTTensor {  // A * B, send
  Box<DType> arg;
  Box<DType> res;
  friend bool operator==(const DTTensor&, const DTTensor&) = default;
};
struct DTPlus {  // A (+) B, selection
  Box<DType> left;
  Box<DType> right;
  friend bool operator==(const DTPlus&, const DTPlus&) = default;
};
struct DTWith {  // A & B, branching
  Box<DType> left;
  Box<DType> right;
  friend bool operator==(const DTWith&, const DTWith&) = default;
};

struct DType {
  std::variant<DTOne, DTBang, DTLolli, DTTensor, DTPlus, DTWith> node;
  friend bool operator==(const DType&, const DType&) = default;
};

inline DType dt_one() { return DType{DTOne{}}; }
inline DType dt_bang(DType a) { return DType{DTBang{Box<DType>(std::move(a))}}; }
inline DType dt_lolli(DType a, DType b) {
  return DType{DTLolli{Box<DType>(std::move(a)), Box<DType>(std::move(b))}};
}
inline DType dt_tensor(DType a, DType b) {
  return DType{DTTensor{Box<DType>(std::move(a)), Box<DType>(std::move(b))}};
}
inline DType dt_plus(DType a, DType b) {
  return DType{DTPlus{Box<DType>(std::move(a)), Box<DType>(std::move(b))}};
}
inline DType dt_with(DType a, DType b) {
  return DType{DTWith{Box<DType>(std::move(a)), Box<DType>(std::move(b))}};
}

// Removes one top-level ! if present, identity otherwise.
DType strip_bang(const DType& a);
std::string show(const DType& t);

}  // namespace sessterm
