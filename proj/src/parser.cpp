#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "sessterm/source.hpp"

namespace sessterm {

std::string show(Calculus c) {
  switch (c) {
    case Calculus::S: return "s";
    case Calculus::W: return "w";
    default: return "dill";
  }
}

namespace {

enum class Tok {
  Ident, Number, Bang, Question, LParen, RParen, Dot, Pipe, Comma, Colon,
  DColon, LBrack, RBrack, Lolli, Star, PlusOp, Amp, Semi, Eof
};

struct Token {
  Tok kind;
  std::string text;
  int number = 0;
  int line = 1;
  int col = 1;
};

const char* kind_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Bang: return "'!'";
    case Tok::Question: return "'?'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Pipe: return "'|'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::DColon: return "'::'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Lolli: return "'-o'";
    case Tok::Star: return "'*'";
    case Tok::PlusOp: return "'(+)'";
    case Tok::Amp: return "'&'";
    case Tok::Semi: return "';'";
    default: return "end of input";
  }
}

bool is_reserved(const std::string& s) {
  static const char* words[] = {"calculus", "process", "types", "root", "new",
                                "lin",      "un",      "fwd",   "case", "inl",
                                "inr",      "end",     "srv",   "cli",  "unit",
                                "in",       "out"};
  return std::find(std::begin(words), std::end(words), s) != std::end(words);
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {  // line comment
      while (i < text.size() && text[i] != '\n') bump(text[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(c);
      ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    auto push1 = [&](Tok k) {
      t.kind = k;
      bump(c);
      ++i;
      out.push_back(t);
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::Number;
      t.text = text.substr(i, j - i);
      t.number = std::stoi(t.text);
      while (i < j) bump(text[i++]);
      out.push_back(t);
      continue;
    }
    if (c == '%' || std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      if (text[j] == '%') ++j;
      if (j >= text.size() ||
          !(std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        throw SyntaxError(line, col, "identifier", std::string(1, c));
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
              text[j] == '\''))
        ++j;
      // optional %<digits> index suffix
      if (j + 1 < text.size() && text[j] == '%' &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      t.kind = Tok::Ident;
      t.text = text.substr(i, j - i);
      while (i < j) bump(text[i++]);
      out.push_back(t);
      continue;
    }
    switch (c) {
      case '!': push1(Tok::Bang); break;
      case ')': push1(Tok::RParen); break;
      case '.': push1(Tok::Dot); break;
      case '|': push1(Tok::Pipe); break;
      case ',': push1(Tok::Comma); break;
      case '[': push1(Tok::LBrack); break;
      case ']': push1(Tok::RBrack); break;
      case '*': push1(Tok::Star); break;
      case '&': push1(Tok::Amp); break;
      case ';': push1(Tok::Semi); break;
      case '?': push1(Tok::Question); break;
      case '(':
        if (i + 2 < text.size() && text[i + 1] == '+' && text[i + 2] == ')') {
          t.kind = Tok::PlusOp;
          bump(text[i++]);
          bump(text[i++]);
          bump(text[i++]);
          out.push_back(t);
        } else {
          push1(Tok::LParen);
        }
        break;
      case ':':
        if (i + 1 < text.size() && text[i + 1] == ':') {
          t.kind = Tok::DColon;
          bump(text[i++]);
          bump(text[i++]);
          out.push_back(t);
        } else {
          push1(Tok::Colon);
        }
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == 'o') {
          t.kind = Tok::Lolli;
          bump(text[i++]);
          bump(text[i++]);
          out.push_back(t);
        } else {
          throw SyntaxError(line, col, "'-o'", "'-'");
        }
        break;
      default:
        throw SyntaxError(line, col, "token", std::string(1, c));
    }
  }
  Token eof;
  eof.kind = Tok::Eof;
  eof.line = line;
  eof.col = col;
  out.push_back(eof);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  const Token& peek(int k = 0) const {
    size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(const std::string& w) const {
    return at(Tok::Ident) && peek().text == w;
  }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    return next();
  }
  void expect_word(const std::string& w) {
    if (!at_word(w)) fail("'" + w + "'");
    next();
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::Ident || t.kind == Tok::Number
                          ? "'" + t.text + "'"
                          : kind_name(t.kind);
    throw SyntaxError(t.line, t.col, expected, got);
  }

  Name name() {
    if (!at(Tok::Ident)) fail("name");
    if (is_reserved(peek().text)) fail("name (not a keyword)");
    std::string s = next().text;
    // split optional %index suffix
    size_t cut = s.rfind('%');
    if (cut != std::string::npos && cut > 0 && cut + 1 < s.size() &&
        std::isdigit(static_cast<unsigned char>(s[cut + 1]))) {
      return Name(s.substr(0, cut), std::stoi(s.substr(cut + 1)));
    }
    return Name(s, 0);
  }

  bool zero() {
    if (at(Tok::Number) && peek().number == 0) {
      next();
      return true;
    }
    return false;
  }

  // ---------- πS ----------

  SProcPtr s_proc() {
    SProcPtr p = s_prefix();
    while (at(Tok::Pipe)) {
      next();
      p = s_par(p, s_prefix());
    }
    return p;
  }

  SProcPtr s_prefix() {
    if (zero()) return s_nil();
    if (at(Tok::LParen)) {
      next();
      SProcPtr p = s_proc();
      expect(Tok::RParen, "')'");
      return p;
    }
    if (at_word("new")) {
      next();
      Name a = name();
      Name b = name();
      expect(Tok::Dot, "'.'");
      return s_res(a, b, s_prefix());
    }
    if (at_word("lin") || at_word("un")) {
      Qual q = peek().text == "lin" ? Qual::Lin : Qual::Un;
      next();
      Name x = name();
      expect(Tok::LParen, "'('");
      Name y = name();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return s_in(q, x, y, s_prefix());
    }
    Name x = name();
    expect(Tok::Bang, "'!'");
    Name v = name();
    expect(Tok::Dot, "'.'");
    return s_out(x, v, s_prefix());
  }

  SType stype() {
    if (at_word("lin")) {
      next();
      Dir d;
      if (at(Tok::Question)) {
        d = Dir::Recv;
      } else if (at(Tok::Bang)) {
        d = Dir::Send;
      } else {
        fail("'?' or '!'");
      }
      next();
      SType payload = stype_atom();
      expect(Tok::Dot, "'.'");
      SType cont = stype();
      return d == Dir::Recv ? st_recv(payload, cont) : st_send(payload, cont);
    }
    return stype_atom();
  }

  SType stype_atom() {
    if (at_word("end")) {
      next();
      return st_end();
    }
    if (at_word("srv")) {
      next();
      return st_server(stype_atom());
    }
    if (at_word("cli")) {
      next();
      return st_client(stype_atom());
    }
    if (at(Tok::LParen)) {
      next();
      SType t = stype();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("session type");
  }

  // ---------- πW ----------

  WProcPtr w_proc() {
    WProcPtr p = w_prefix();
    while (at(Tok::Pipe)) {
      next();
      p = w_par(p, w_prefix());
    }
    return p;
  }

  WProcPtr w_prefix() {
    if (zero()) return w_nil();
    if (at(Tok::LParen)) {
      next();
      WProcPtr p = w_proc();
      expect(Tok::RParen, "')'");
      return p;
    }
    if (at_word("new")) {
      next();
      Name x = name();
      expect(Tok::Dot, "'.'");
      return w_res(x, w_prefix());
    }
    if (at(Tok::Bang)) {
      next();
      Name x = name();
      expect(Tok::LParen, "'('");
      Name y1 = name();
      expect(Tok::Comma, "','");
      Name y2 = name();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return w_srv(x, y1, y2, w_prefix());
    }
    Name x = name();
    if (at(Tok::Bang)) {
      next();
      expect(Tok::LParen, "'('");
      Name v1 = name();
      expect(Tok::Comma, "','");
      Name v2 = name();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return w_out(x, v1, v2, w_prefix());
    }
    expect(Tok::LParen, "'(' or '!'");
    Name y1 = name();
    expect(Tok::Comma, "','");
    Name y2 = name();
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    return w_in(x, y1, y2, w_prefix());
  }

  WType wtype() {
    if (at_word("unit")) {
      next();
      return wt_unit();
    }
    bool is_in = at_word("in"), is_out = at_word("out");
    if (is_in || is_out) {
      next();
      expect(Tok::LBrack, "'['");
      int n = expect(Tok::Number, "level").number;
      expect(Tok::RBrack, "']'");
      expect(Tok::LParen, "'('");
      WType a = wtype();
      expect(Tok::Comma, "','");
      WType b = wtype();
      expect(Tok::RParen, "')'");
      return is_in ? wt_in(n, a, b) : wt_out(n, a, b);
    }
    bool is_srv = at_word("srv"), is_cli = at_word("cli");
    if (is_srv || is_cli) {
      next();
      expect(Tok::LBrack, "'['");
      int n = expect(Tok::Number, "level").number;
      expect(Tok::RBrack, "']'");
      expect(Tok::LParen, "'('");
      WType a = wtype();
      expect(Tok::RParen, "')'");
      return is_srv ? wt_srv(n, a) : wt_cli(n, a);
    }
    if (at(Tok::LParen)) {
      next();
      WType t = wtype();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("link type");
  }

  // ---------- πDILL ----------

  DProcPtr d_proc() {
    DProcPtr p = d_prefix();
    while (at(Tok::Pipe)) {
      next();
      p = d_par(p, d_prefix());
    }
    return p;
  }

  DProcPtr d_prefix() {
    if (zero()) return d_nil();
    if (at(Tok::LParen)) {
      next();
      DProcPtr p = d_proc();
      expect(Tok::RParen, "')'");
      return p;
    }
    if (at_word("new")) {
      next();
      Name x = name();
      std::optional<DType> ann;
      if (at(Tok::Colon)) {
        next();
        ann = dtype();
      }
      expect(Tok::Dot, "'.'");
      return d_res(x, d_prefix(), ann);
    }
    if (at_word("fwd")) {
      next();
      Name x = name();
      Name y = name();
      return d_fwd(x, y);
    }
    if (at(Tok::Bang)) {
      next();
      Name x = name();
      expect(Tok::LParen, "'('");
      Name y = name();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return d_srv(x, y, d_prefix());
    }
    Name x = name();
    if (at(Tok::Bang)) {
      next();
      expect(Tok::LParen, "'('");
      Name z = name();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return d_bout(x, z, d_prefix());
    }
    if (at(Tok::LParen)) {
      next();
      Name y = name();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return d_in(x, y, d_prefix());
    }
    expect(Tok::Dot, "'.', '(' or '!'");
    if (at_word("inl")) {
      next();
      expect(Tok::Semi, "';'");
      return d_sell(x, d_prefix());
    }
    if (at_word("inr")) {
      next();
      expect(Tok::Semi, "';'");
      return d_selr(x, d_prefix());
    }
    if (at_word("case")) {
      next();
      expect(Tok::LParen, "'('");
      DProcPtr l = d_proc();
      expect(Tok::Comma, "','");
      DProcPtr r = d_proc();
      expect(Tok::RParen, "')'");
      return d_case(x, l, r);
    }
    fail("'inl', 'inr' or 'case'");
  }

  DType dtype() {
    DType lhs = dtype_atom();
    // binary operators share one precedence level and associate right
    if (at(Tok::Lolli)) {
      next();
      return dt_lolli(lhs, dtype());
    }
    if (at(Tok::Star)) {
      next();
      return dt_tensor(lhs, dtype());
    }
    if (at(Tok::PlusOp)) {
      next();
      return dt_plus(lhs, dtype());
    }
    if (at(Tok::Amp)) {
      next();
      return dt_with(lhs, dtype());
    }
    return lhs;
  }

  DType dtype_atom() {
    if (at(Tok::Number) && peek().number == 1) {
      next();
      return dt_one();
    }
    if (at(Tok::Bang)) {
      next();
      return dt_bang(dtype_atom());
    }
    if (at(Tok::LParen)) {
      next();
      DType t = dtype();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("proposition");
  }

  // ---------- file ----------

  SourceFile file() {
    SourceFile f;
    expect_word("calculus");
    if (at_word("s")) {
      f.calculus = Calculus::S;
    } else if (at_word("w")) {
      f.calculus = Calculus::W;
    } else if (at_word("dill")) {
      f.calculus = Calculus::Dill;
    } else {
      fail("'s', 'w' or 'dill'");
    }
    next();
    expect_word("process");
    switch (f.calculus) {
      case Calculus::S: f.sproc = s_proc(); break;
      case Calculus::W: f.wproc = w_proc(); break;
      case Calculus::Dill: f.dproc = d_proc(); break;
    }
    if (at_word("types")) {
      next();
      for (;;) {
        Name x = name();
        CtxMode mode = CtxMode::Plain;
        if (at(Tok::DColon)) {
          next();
          mode = CtxMode::DualJoin;
        } else {
          expect(Tok::Colon, "':'");
        }
        if (mode == CtxMode::DualJoin && f.calculus != Calculus::W)
          fail("':' (dual-join annotations are for calculus w)");
        switch (f.calculus) {
          case Calculus::S: f.s_types.emplace_back(x, stype()); break;
          case Calculus::W: f.w_types.emplace_back(x, std::make_pair(mode, wtype())); break;
          case Calculus::Dill: f.d_types.emplace_back(x, dtype()); break;
        }
        if (at(Tok::Comma)) {
          next();
          continue;
        }
        break;
      }
    }
    if (at_word("root")) {
      if (f.calculus != Calculus::Dill) fail("end of file (root is for dill)");
      next();
      Name u = name();
      expect(Tok::Colon, "':'");
      f.dill_root = std::make_pair(u, dtype());
    }
    expect(Tok::Eof, "end of file");
    return f;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

template <class T>
std::map<Name, T> to_map_checking_dups(const std::vector<std::pair<Name, T>>& v) {
  std::map<Name, T> m;
  for (const auto& [k, t] : v) {
    if (m.count(k))
      throw CheckError("DuplicateAnnotation", "name " + k.str() + " is annotated twice");
    m.emplace(k, t);
  }
  return m;
}

// Folds restriction-endpoint annotations into the Res nodes and drops them
// from the free list.
SProcPtr fold_s_res(const SProcPtr& p, const std::map<Name, SType>& ann,
                    NameSet& used) {
  return std::visit(
      [&](const auto& n) -> SProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, SOutput>) {
          return s_out(n.subject, n.value, fold_s_res(n.cont, ann, used));
        } else if constexpr (std::is_same_v<T, SInput>) {
          return s_in(n.qual, n.subject, n.binder, fold_s_res(n.body, ann, used));
        } else if constexpr (std::is_same_v<T, SPar>) {
          return s_par(fold_s_res(n.left, ann, used), fold_s_res(n.right, ann, used));
        } else {
          std::optional<SType> ta = n.type_a;
          auto ia = ann.find(n.endpoint_a);
          auto ib = ann.find(n.endpoint_b);
          if (ia != ann.end()) {
            used.insert(n.endpoint_a);
            ta = ia->second;
          }
          if (ib != ann.end()) {
            used.insert(n.endpoint_b);
            SType derived = dual_s(ib->second);
            if (ta && !(*ta == derived))
              throw CheckError("DualityViolation",
                               "annotations for co-variables " + n.endpoint_a.str() +
                                   " and " + n.endpoint_b.str() + " are not dual");
            ta = derived;
          }
          return s_res(n.endpoint_a, n.endpoint_b, fold_s_res(n.body, ann, used), ta);
        }
      },
      p->node);
}

WProcPtr fold_w_res(const WProcPtr& p,
                    const std::map<Name, std::pair<CtxMode, WType>>& ann,
                    NameSet& used) {
  return std::visit(
      [&](const auto& n) -> WProcPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WNil>) {
          return p;
        } else if constexpr (std::is_same_v<T, WOutput>) {
          return w_out(n.subject, n.payload1, n.payload2, fold_w_res(n.cont, ann, used));
        } else if constexpr (std::is_same_v<T, WInput>) {
          return w_in(n.subject, n.binder1, n.binder2, fold_w_res(n.body, ann, used));
        } else if constexpr (std::is_same_v<T, WServer>) {
          return w_srv(n.subject, n.binder1, n.binder2, fold_w_res(n.body, ann, used));
        } else if constexpr (std::is_same_v<T, WPar>) {
          return w_par(fold_w_res(n.left, ann, used), fold_w_res(n.right, ann, used));
        } else {
          std::optional<WType> a = n.ann;
          auto it = ann.find(n.name);
          if (it != ann.end()) {
            if (it->second.first != CtxMode::DualJoin)
              throw CheckError("ModeMismatch",
                               "restriction name " + n.name.str() +
                                   " needs a dual-join annotation (::)");
            used.insert(n.name);
            a = it->second.second;
          }
          return w_res(n.name, fold_w_res(n.body, ann, used), a);
        }
      },
      p->node);
}

NameSet bound_names_s(const SProcPtr& p) {
  NameSet all = all_names(p);
  for (const Name& n : free_names(p)) all.erase(n);
  return all;
}

}  // namespace

SourceFile parse(const std::string& text) {
  Parser parser(text);
  SourceFile f = parser.file();
  if (f.calculus == Calculus::S) {
    auto ann = to_map_checking_dups(f.s_types);
    NameSet used;
    f.sproc = fold_s_res(f.sproc, ann, used);
    NameSet free = free_names(f.sproc);
    NameSet bound = bound_names_s(f.sproc);
    std::vector<std::pair<Name, SType>> rest;
    for (auto& [k, t] : f.s_types) {
      if (used.count(k)) continue;
      if (!free.count(k)) {
        if (bound.count(k))
          throw CheckError("DanglingAnnotation",
                           "annotated name " + k.str() +
                               " is bound but not a restriction endpoint");
        throw CheckError("DanglingAnnotation",
                         "annotated name " + k.str() + " does not occur in the process");
      }
      rest.emplace_back(k, t);
    }
    f.s_types = std::move(rest);
    f.sproc = normalize(f.sproc);
  } else if (f.calculus == Calculus::W) {
    auto ann = to_map_checking_dups(f.w_types);
    NameSet used;
    f.wproc = fold_w_res(f.wproc, ann, used);
    NameSet free = free_names(f.wproc);
    std::vector<std::pair<Name, std::pair<CtxMode, WType>>> rest;
    for (auto& [k, t] : f.w_types) {
      if (used.count(k)) continue;
      if (!free.count(k))
        throw CheckError("DanglingAnnotation",
                         "annotated name " + k.str() + " is not free in the process");
      rest.emplace_back(k, t);
    }
    f.w_types = std::move(rest);
    f.wproc = normalize(f.wproc);
  } else {
    to_map_checking_dups(f.d_types);
    NameSet free = free_names(f.dproc);
    for (auto& [k, t] : f.d_types) {
      if (!free.count(k))
        throw CheckError("DanglingAnnotation",
                         "annotated name " + k.str() + " is not free in the process");
    }
    f.dproc = normalize(f.dproc);
  }
  return f;
}

SType parse_stype(const std::string& text) {
  Parser p(text);
  return p.stype();
}
WType parse_wtype(const std::string& text) {
  Parser p(text);
  return p.wtype();
}
DType parse_dtype(const std::string& text) {
  Parser p(text);
  return p.dtype();
}

namespace {

void harvest_s_res(const SProcPtr& p, std::vector<std::pair<Name, SType>>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SOutput>) {
          harvest_s_res(n.cont, out);
        } else if constexpr (std::is_same_v<T, SInput>) {
          harvest_s_res(n.body, out);
        } else if constexpr (std::is_same_v<T, SPar>) {
          harvest_s_res(n.left, out);
          harvest_s_res(n.right, out);
        } else if constexpr (std::is_same_v<T, SRes>) {
          if (n.type_a) out.emplace_back(n.endpoint_a, *n.type_a);
          harvest_s_res(n.body, out);
        }
      },
      p->node);
}

void harvest_w_res(const WProcPtr& p, std::vector<std::pair<Name, WType>>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, WOutput>) {
          harvest_w_res(n.cont, out);
        } else if constexpr (std::is_same_v<T, WInput> || std::is_same_v<T, WServer>) {
          harvest_w_res(n.body, out);
        } else if constexpr (std::is_same_v<T, WPar>) {
          harvest_w_res(n.left, out);
          harvest_w_res(n.right, out);
        } else if constexpr (std::is_same_v<T, WRes>) {
          if (n.ann) out.emplace_back(n.name, *n.ann);
          harvest_w_res(n.body, out);
        }
      },
      p->node);
}

}  // namespace

std::string print(const SourceFile& f) {
  std::ostringstream os;
  os << "calculus " << show(f.calculus) << "\n";
  os << "process ";
  std::vector<std::string> entries;
  if (f.calculus == Calculus::S) {
    os << show(f.sproc) << "\n";
    std::vector<std::pair<Name, SType>> anns = f.s_types;
    harvest_s_res(f.sproc, anns);
    std::sort(anns.begin(), anns.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [x, t] : anns) entries.push_back(x.str() + " : " + show(t));
  } else if (f.calculus == Calculus::W) {
    os << show(f.wproc) << "\n";
    std::vector<std::string> plain;
    std::vector<std::pair<Name, WType>> res;
    for (const auto& [x, mt] : f.w_types)
      plain.push_back(x.str() + (mt.first == CtxMode::DualJoin ? " :: " : " : ") +
                      show(mt.second));
    harvest_w_res(f.wproc, res);
    for (const auto& [x, t] : res) plain.push_back(x.str() + " :: " + show(t));
    std::sort(plain.begin(), plain.end());
    entries = plain;
  } else {
    os << show(f.dproc) << "\n";
    std::vector<std::pair<Name, DType>> anns = f.d_types;
    std::sort(anns.begin(), anns.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [x, t] : anns) entries.push_back(x.str() + " : " + show(t));
  }
  if (!entries.empty()) {
    os << "types ";
    for (size_t i = 0; i < entries.size(); ++i) {
      if (i) os << ", ";
      os << entries[i];
    }
    os << "\n";
  }
  if (f.dill_root)
    os << "root " << f.dill_root->first.str() << " : " << show(f.dill_root->second)
       << "\n";
  return os.str();
}

}  // namespace sessterm
