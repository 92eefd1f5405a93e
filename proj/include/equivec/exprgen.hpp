#pragma once

// Seeded random expression sampler. Used to synthesize source corpora for
// data generation and as the generator behind property tests.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "equivec/expr.hpp"
#include "equivec/rng.hpp"

namespace equivec {

struct GenGrammar {
  int max_depth = 6;
  int max_operators = 5;
  // weights for leaf choice: variable / small integer / named constant
  int var_weight = 5;
  int int_weight = 3;
  int named_weight = 1;
  long long int_min = 1;
  long long int_max = 10;
  bool allow_all_unary = true;  // false restricts to {neg, sqrt, sin, cos, ln, exp}
};

namespace detail {

inline const std::vector<Op>& unary_pool(bool all) {
  static const std::vector<Op> full{
      Op::Neg,  Op::Abs,  Op::Sqrt,  Op::Sin,   Op::Cos,   Op::Tan,
      Op::Cot,  Op::Sec,  Op::Csc,   Op::Asin,  Op::Acos,  Op::Atan,
      Op::Sinh, Op::Cosh, Op::Tanh,  Op::Coth,  Op::Asinh, Op::Acosh,
      Op::Atanh, Op::Ln,  Op::Exp};
  static const std::vector<Op> small{Op::Neg, Op::Sqrt, Op::Sin,
                                     Op::Cos, Op::Ln,   Op::Exp};
  return all ? full : small;
}

inline Expr random_leaf(Rng& rng, const GenGrammar& g, bool force_var) {
  if (force_var) return x();
  const int total = g.var_weight + g.int_weight + g.named_weight;
  const long long pick = next_int(rng, 0, total - 1);
  if (pick < g.var_weight) return x();
  if (pick < g.var_weight + g.int_weight) {
    return num(next_int(rng, g.int_min, g.int_max));
  }
  return next_index(rng, 2) == 0 ? pi() : euler();
}

inline Expr random_expr_impl(Rng& rng, const GenGrammar& g, int depth,
                             int& ops_left) {
  const bool must_leaf = depth >= g.max_depth || ops_left <= 0;
  if (must_leaf || next_double(rng) < 0.35) {
    return random_leaf(rng, g, false);
  }
  // binary nodes get a slight preference so trees branch out
  const bool binary = ops_left >= 2 && next_double(rng) < 0.55;
  if (binary) {
    ops_left -= 1;
    static const std::vector<Op> binary_ops{Op::Add, Op::Mul, Op::Div, Op::Pow};
    const Op op = binary_ops[next_index(rng, binary_ops.size())];
    Expr lhs = random_expr_impl(rng, g, depth + 1, ops_left);
    if (op == Op::Pow) {
      // keep exponents small integers so evaluation stays in range
      return pow(std::move(lhs), num(next_int(rng, 2, 4)));
    }
    Expr rhs = random_expr_impl(rng, g, depth + 1, ops_left);
    return Expr::make(op, {std::move(lhs), std::move(rhs)});
  }
  ops_left -= 1;
  const auto& pool = unary_pool(g.allow_all_unary);
  const Op op = pool[next_index(rng, pool.size())];
  return Expr::make(op, {random_expr_impl(rng, g, depth + 1, ops_left)});
}

}  // namespace detail

// Draws one expression containing the variable, with at most
// g.max_operators operators. Rejection keeps only expressions that are
// defined somewhere on (0.1, 10).
inline Expr random_expr(Rng& rng, const GenGrammar& g = {}) {
  for (;;) {
    int ops_left = g.max_operators;
    Expr e = detail::random_expr_impl(rng, g, 0, ops_left);
    if (is_constant(e)) {
      e = add(std::move(e), x());
    }
    if (count_operators(e) > g.max_operators) continue;
    bool defined_somewhere = false;
    for (int i = 0; i < 8; ++i) {
      if (eval_numeric(e, 0.37 + 1.21 * i)) {
        defined_somewhere = true;
        break;
      }
    }
    if (defined_somewhere) return e;
  }
}

inline std::vector<Expr> random_exprs(std::uint64_t seed, int count,
                                      const GenGrammar& g = {}) {
  std::vector<Expr> out;
  out.reserve(static_cast<std::size_t>(count));
  std::set<std::string> seen;
  Rng rng(seed);
  while (static_cast<int>(out.size()) < count) {
    Expr e = random_expr(rng, g);
    if (!seen.insert(to_prefix_string(e)).second) continue;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace equivec
