#pragma once

// Operator trees for univariate mathematical expressions, their Polish
// (prefix) token form, and numeric evaluation on the positive real line.

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace equivec {

using BigInt = boost::multiprecision::cpp_int;

enum class Op : std::uint8_t {
  Add, Mul, Div, Pow,
  Neg, Abs, Sqrt,
  Sin, Cos, Tan, Cot, Sec, Csc,
  Asin, Acos, Atan,
  Sinh, Cosh, Tanh, Coth,
  Asinh, Acosh, Atanh,
  Ln, Exp,
};

inline constexpr int kOpCount = 25;

struct OpInfo {
  std::string_view name;
  int arity;
};

inline constexpr std::array<OpInfo, kOpCount> kOpTable{{
    {"add", 2},   {"mul", 2},   {"div", 2},  {"pow", 2},  {"neg", 1},
    {"abs", 1},   {"sqrt", 1},  {"sin", 1},  {"cos", 1},  {"tan", 1},
    {"cot", 1},   {"sec", 1},   {"csc", 1},  {"asin", 1}, {"acos", 1},
    {"atan", 1},  {"sinh", 1},  {"cosh", 1}, {"tanh", 1}, {"coth", 1},
    {"asinh", 1}, {"acosh", 1}, {"atanh", 1}, {"ln", 1},  {"exp", 1},
}};

inline constexpr std::string_view op_name(Op op) {
  return kOpTable[static_cast<std::size_t>(op)].name;
}

inline constexpr int op_arity(Op op) {
  return kOpTable[static_cast<std::size_t>(op)].arity;
}

inline std::optional<Op> op_from_name(std::string_view name) {
  for (int i = 0; i < kOpCount; ++i) {
    if (kOpTable[static_cast<std::size_t>(i)].name == name) {
      return static_cast<Op>(i);
    }
  }
  return std::nullopt;
}

enum class NodeKind : std::uint8_t { Var, IntConst, NamedConst, OpNode };

enum class NamedConst : std::uint8_t { Pi, Euler };

inline std::string_view named_const_token(NamedConst c) {
  return c == NamedConst::Pi ? "pi" : "euler";
}

// Immutable expression tree. Copies share structure; all accessors are
// const, so Expr values may be used freely across threads.
class Expr {
 public:
  static Expr var() { return Expr(std::make_shared<Node>(Node::var_tag{})); }

  static Expr integer(BigInt value) {
    return Expr(std::make_shared<Node>(std::move(value)));
  }

  static Expr named(NamedConst c) { return Expr(std::make_shared<Node>(c)); }

  // Does not enforce arity; validate() reports violations.
  static Expr make(Op op, std::vector<Expr> children) {
    return Expr(std::make_shared<Node>(op, std::move(children)));
  }

  NodeKind kind() const { return node_->kind; }
  Op op() const { return node_->op; }
  const BigInt& int_value() const { return node_->value; }
  NamedConst named_const() const { return node_->named; }
  const std::vector<Expr>& children() const { return node_->children; }
  const Expr& child(std::size_t i) const { return node_->children[i]; }

  bool is_var() const { return node_->kind == NodeKind::Var; }
  bool is_int() const { return node_->kind == NodeKind::IntConst; }
  bool is_named() const { return node_->kind == NodeKind::NamedConst; }
  bool is_op() const { return node_->kind == NodeKind::OpNode; }
  bool is_op(Op o) const { return is_op() && node_->op == o; }
  bool is_int(long long v) const { return is_int() && node_->value == v; }

  bool same_node(const Expr& other) const { return node_ == other.node_; }

 private:
  struct Node {
    struct var_tag {};
    explicit Node(var_tag) : kind(NodeKind::Var) {}
    explicit Node(BigInt v) : kind(NodeKind::IntConst), value(std::move(v)) {}
    explicit Node(NamedConst c) : kind(NodeKind::NamedConst), named(c) {}
    Node(Op o, std::vector<Expr> ch)
        : kind(NodeKind::OpNode), op(o), children(std::move(ch)) {}

    NodeKind kind;
    Op op = Op::Add;
    BigInt value;
    NamedConst named = NamedConst::Pi;
    std::vector<Expr> children;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline bool operator==(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::Var:
      return true;
    case NodeKind::IntConst:
      return a.int_value() == b.int_value();
    case NodeKind::NamedConst:
      return a.named_const() == b.named_const();
    case NodeKind::OpNode: {
      if (a.op() != b.op()) return false;
      const auto& ca = a.children();
      const auto& cb = b.children();
      if (ca.size() != cb.size()) return false;
      for (std::size_t i = 0; i < ca.size(); ++i) {
        if (!(ca[i] == cb[i])) return false;
      }
      return true;
    }
  }
  return false;
}

inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

// Builders. Arity is fixed here, so expressions built through these are
// structurally valid by construction.
inline Expr x() { return Expr::var(); }
inline Expr num(long long v) { return Expr::integer(BigInt(v)); }
inline Expr num(BigInt v) { return Expr::integer(std::move(v)); }
inline Expr pi() { return Expr::named(NamedConst::Pi); }
inline Expr euler() { return Expr::named(NamedConst::Euler); }

inline Expr add(Expr a, Expr b) {
  return Expr::make(Op::Add, {std::move(a), std::move(b)});
}
inline Expr mul(Expr a, Expr b) {
  return Expr::make(Op::Mul, {std::move(a), std::move(b)});
}
inline Expr div(Expr a, Expr b) {
  return Expr::make(Op::Div, {std::move(a), std::move(b)});
}
inline Expr pow(Expr a, Expr b) {
  return Expr::make(Op::Pow, {std::move(a), std::move(b)});
}
inline Expr neg(Expr a) { return Expr::make(Op::Neg, {std::move(a)}); }
inline Expr abs(Expr a) { return Expr::make(Op::Abs, {std::move(a)}); }
inline Expr sqrt(Expr a) { return Expr::make(Op::Sqrt, {std::move(a)}); }
inline Expr sin(Expr a) { return Expr::make(Op::Sin, {std::move(a)}); }
inline Expr cos(Expr a) { return Expr::make(Op::Cos, {std::move(a)}); }
inline Expr tan(Expr a) { return Expr::make(Op::Tan, {std::move(a)}); }
inline Expr cot(Expr a) { return Expr::make(Op::Cot, {std::move(a)}); }
inline Expr sec(Expr a) { return Expr::make(Op::Sec, {std::move(a)}); }
inline Expr csc(Expr a) { return Expr::make(Op::Csc, {std::move(a)}); }
inline Expr asin(Expr a) { return Expr::make(Op::Asin, {std::move(a)}); }
inline Expr acos(Expr a) { return Expr::make(Op::Acos, {std::move(a)}); }
inline Expr atan(Expr a) { return Expr::make(Op::Atan, {std::move(a)}); }
inline Expr sinh(Expr a) { return Expr::make(Op::Sinh, {std::move(a)}); }
inline Expr cosh(Expr a) { return Expr::make(Op::Cosh, {std::move(a)}); }
inline Expr tanh(Expr a) { return Expr::make(Op::Tanh, {std::move(a)}); }
inline Expr coth(Expr a) { return Expr::make(Op::Coth, {std::move(a)}); }
inline Expr asinh(Expr a) { return Expr::make(Op::Asinh, {std::move(a)}); }
inline Expr acosh(Expr a) { return Expr::make(Op::Acosh, {std::move(a)}); }
inline Expr atanh(Expr a) { return Expr::make(Op::Atanh, {std::move(a)}); }
inline Expr ln(Expr a) { return Expr::make(Op::Ln, {std::move(a)}); }
inline Expr exp(Expr a) { return Expr::make(Op::Exp, {std::move(a)}); }

// x - y is represented as x + (-y); subtraction is not an operator.
inline Expr sub(Expr a, Expr b) { return add(std::move(a), neg(std::move(b))); }

using TokenSeq = std::vector<std::string>;

inline constexpr std::string_view kVarToken = "x";
inline constexpr std::string_view kIntPlusToken = "INT+";
inline constexpr std::string_view kIntMinusToken = "INT-";

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Truncated, TrailingTokens, UnknownToken, MalformedInteger };

  ParseError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline void emit_prefix(const Expr& e, TokenSeq& out) {
  switch (e.kind()) {
    case NodeKind::Var:
      out.emplace_back(kVarToken);
      return;
    case NodeKind::NamedConst:
      out.emplace_back(named_const_token(e.named_const()));
      return;
    case NodeKind::IntConst: {
      const BigInt& v = e.int_value();
      out.emplace_back(v < 0 ? kIntMinusToken : kIntPlusToken);
      const BigInt magnitude = v < 0 ? BigInt(-v) : v;
      for (char d : magnitude.str()) out.emplace_back(1, d);
      return;
    }
    case NodeKind::OpNode:
      out.emplace_back(op_name(e.op()));
      for (const Expr& c : e.children()) emit_prefix(c, out);
      return;
  }
}

}  // namespace detail

inline TokenSeq to_prefix(const Expr& e) {
  TokenSeq out;
  detail::emit_prefix(e, out);
  return out;
}

inline std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

inline TokenSeq split_tokens(std::string_view text) {
  TokenSeq out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Canonical on-disk form: prefix tokens joined by single spaces.
inline std::string to_prefix_string(const Expr& e) {
  return join_tokens(to_prefix(e));
}

namespace detail {

inline bool is_digit_token(const std::string& t) {
  return t.size() == 1 && t[0] >= '0' && t[0] <= '9';
}

inline Expr parse_prefix_impl(const TokenSeq& tokens, std::size_t& pos) {
  if (pos >= tokens.size()) {
    throw ParseError(ParseError::Kind::Truncated,
                     "prefix sequence ended before the tree was complete");
  }
  const std::string& t = tokens[pos++];
  if (t == kVarToken) return x();
  if (t == "pi") return pi();
  if (t == "euler") return euler();
  if (t == kIntPlusToken || t == kIntMinusToken) {
    const bool negative = (t == kIntMinusToken);
    std::string digits;
    while (pos < tokens.size() && is_digit_token(tokens[pos])) {
      digits += tokens[pos++][0];
    }
    if (digits.empty()) {
      throw ParseError(ParseError::Kind::MalformedInteger,
                       "integer sign token not followed by digits");
    }
    BigInt v(digits);
    if (negative) v = -v;
    return num(std::move(v));
  }
  if (auto op = op_from_name(t)) {
    std::vector<Expr> children;
    const int arity = op_arity(*op);
    children.reserve(static_cast<std::size_t>(arity));
    for (int i = 0; i < arity; ++i) {
      children.push_back(parse_prefix_impl(tokens, pos));
    }
    return Expr::make(*op, std::move(children));
  }
  throw ParseError(ParseError::Kind::UnknownToken, "unknown token '" + t + "'");
}

}  // namespace detail

inline Expr parse_prefix(const TokenSeq& tokens) {
  std::size_t pos = 0;
  Expr e = detail::parse_prefix_impl(tokens, pos);
  if (pos != tokens.size()) {
    throw ParseError(ParseError::Kind::TrailingTokens,
                     "tokens remain after a complete tree");
  }
  return e;
}

inline Expr parse_prefix_string(std::string_view text) {
  return parse_prefix(split_tokens(text));
}

inline std::ostream& operator<<(std::ostream& os, const Expr& e) {
  return os << to_prefix_string(e);
}

// IEEE-style evaluation at x > 0. Any NaN/infinity or domain violation in a
// subterm makes the whole result Undefined (nullopt); Undefined is absorbing.
inline std::optional<double> eval_numeric(const Expr& e, double x_value) {
  auto finite = [](double v) -> std::optional<double> {
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  };
  switch (e.kind()) {
    case NodeKind::Var:
      return finite(x_value);
    case NodeKind::IntConst:
      return finite(e.int_value().convert_to<double>());
    case NodeKind::NamedConst:
      return e.named_const() == NamedConst::Pi ? std::numbers::pi
                                               : std::numbers::e;
    case NodeKind::OpNode:
      break;
  }

  const auto& ch = e.children();
  std::vector<double> v;
  v.reserve(ch.size());
  for (const Expr& c : ch) {
    auto r = eval_numeric(c, x_value);
    if (!r) return std::nullopt;
    v.push_back(*r);
  }
  if (static_cast<int>(v.size()) != op_arity(e.op())) return std::nullopt;

  double r = 0.0;
  switch (e.op()) {
    case Op::Add: r = v[0] + v[1]; break;
    case Op::Mul: r = v[0] * v[1]; break;
    case Op::Div:
      if (v[1] == 0.0) return std::nullopt;
      r = v[0] / v[1];
      break;
    case Op::Pow: r = std::pow(v[0], v[1]); break;
    case Op::Neg: r = -v[0]; break;
    case Op::Abs: r = std::fabs(v[0]); break;
    case Op::Sqrt: r = std::sqrt(v[0]); break;
    case Op::Sin: r = std::sin(v[0]); break;
    case Op::Cos: r = std::cos(v[0]); break;
    case Op::Tan: r = std::tan(v[0]); break;
    case Op::Cot: {
      const double s = std::sin(v[0]);
      if (s == 0.0) return std::nullopt;
      r = std::cos(v[0]) / s;
      break;
    }
    case Op::Sec: {
      const double c = std::cos(v[0]);
      if (c == 0.0) return std::nullopt;
      r = 1.0 / c;
      break;
    }
    case Op::Csc: {
      const double s = std::sin(v[0]);
      if (s == 0.0) return std::nullopt;
      r = 1.0 / s;
      break;
    }
    case Op::Asin: r = std::asin(v[0]); break;
    case Op::Acos: r = std::acos(v[0]); break;
    case Op::Atan: r = std::atan(v[0]); break;
    case Op::Sinh: r = std::sinh(v[0]); break;
    case Op::Cosh: r = std::cosh(v[0]); break;
    case Op::Tanh: r = std::tanh(v[0]); break;
    case Op::Coth: {
      const double s = std::sinh(v[0]);
      if (s == 0.0) return std::nullopt;
      r = std::cosh(v[0]) / s;
      break;
    }
    case Op::Asinh: r = std::asinh(v[0]); break;
    case Op::Acosh: r = std::acosh(v[0]); break;
    case Op::Atanh: r = std::atanh(v[0]); break;
    case Op::Ln: r = std::log(v[0]); break;
    case Op::Exp: r = std::exp(v[0]); break;
  }
  return finite(r);
}

// Number of Op nodes. A neg that merely signs a numeric literal (neg over
// IntConst or NamedConst) is printing, not mathematical structure, and is
// not counted.
inline int count_operators(const Expr& e) {
  if (!e.is_op()) return 0;
  int n = 0;
  const bool literal_sign =
      e.op() == Op::Neg && (e.child(0).is_int() || e.child(0).is_named());
  if (!literal_sign) n = 1;
  for (const Expr& c : e.children()) n += count_operators(c);
  return n;
}

inline bool is_constant(const Expr& e) {
  if (e.is_var()) return false;
  if (e.is_op()) {
    for (const Expr& c : e.children()) {
      if (!is_constant(c)) return false;
    }
  }
  return true;
}

inline int node_count(const Expr& e) {
  int n = 1;
  if (e.is_op()) {
    for (const Expr& c : e.children()) n += node_count(c);
  }
  return n;
}

inline int depth(const Expr& e) {
  int d = 0;
  if (e.is_op()) {
    for (const Expr& c : e.children()) d = std::max(d, depth(c));
  }
  return d + 1;
}

struct Violation {
  enum class Kind { Arity, Length };
  Kind kind;
  std::string detail;
};

// Structural validation: arity everywhere, and an optional cap on the
// serialized token count (the training pipeline uses 256).
inline std::vector<Violation> validate(const Expr& e,
                                       std::optional<int> max_tokens = {}) {
  std::vector<Violation> out;
  auto walk = [&out](auto&& self, const Expr& n) -> void {
    if (n.is_op()) {
      const int want = op_arity(n.op());
      if (static_cast<int>(n.children().size()) != want) {
        std::ostringstream msg;
        msg << op_name(n.op()) << " has " << n.children().size()
            << " children, expected " << want;
        out.push_back({Violation::Kind::Arity, msg.str()});
      }
      for (const Expr& c : n.children()) self(self, c);
    }
  };
  walk(walk, e);
  if (max_tokens && out.empty()) {
    const int len = static_cast<int>(to_prefix(e).size());
    if (len > *max_tokens) {
      std::ostringstream msg;
      msg << "serializes to " << len << " tokens, cap is " << *max_tokens;
      out.push_back({Violation::Kind::Length, msg.str()});
    }
  }
  return out;
}

inline bool is_valid(const Expr& e, std::optional<int> max_tokens = {}) {
  return validate(e, max_tokens).empty();
}

// Prefix arity balance: starting from 1, each operator of arity a adds
// (a - 1) and each complete atom subtracts 1; a valid serialization reaches
// 0 exactly at the final token.
inline bool prefix_balance_ok(const TokenSeq& tokens) {
  long long need = 1;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (need <= 0) return false;
    const std::string& t = tokens[i];
    if (auto op = op_from_name(t)) {
      need += op_arity(*op) - 1;
      ++i;
    } else if (t == kVarToken || t == "pi" || t == "euler") {
      need -= 1;
      ++i;
    } else if (t == kIntPlusToken || t == kIntMinusToken) {
      std::size_t j = i + 1;
      while (j < tokens.size() && detail::is_digit_token(tokens[j])) ++j;
      if (j == i + 1) return false;
      need -= 1;
      i = j;
    } else {
      return false;
    }
  }
  return need == 0 && !tokens.empty();
}

}  // namespace equivec
