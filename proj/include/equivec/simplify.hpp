#pragma once

// Bounded local simplification: integer constant folding, identity
// elements, sign normalization, like-term/like-factor collection over
// flattened add/mul chains, and the syntactic Pythagorean collapse.
// Equivalence on x > 0 is preserved by every rule; node count never grows.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equivec/expr.hpp"

namespace equivec {
namespace detail {

inline bool small_int(const BigInt& v, long long limit) {
  return v >= -limit && v <= limit;
}

// coeff * base^exp factors of a product, first-appearance order
struct FactorEntry {
  Expr base;
  long long exp;
  std::string key;
};

struct ProductForm {
  BigInt coeff{1};
  std::vector<FactorEntry> factors;
};

inline void product_push(ProductForm& form, Expr base, long long exp) {
  std::string key = to_prefix_string(base);
  for (auto& f : form.factors) {
    if (f.key == key) {
      f.exp += exp;
      return;
    }
  }
  form.factors.push_back({std::move(base), exp, std::move(key)});
}

inline void collect_product(const Expr& e, ProductForm& form) {
  if (e.is_op(Op::Mul)) {
    collect_product(e.child(0), form);
    collect_product(e.child(1), form);
    return;
  }
  if (e.is_op(Op::Neg)) {
    form.coeff = -form.coeff;
    collect_product(e.child(0), form);
    return;
  }
  if (e.is_int()) {
    form.coeff *= e.int_value();
    return;
  }
  if (e.is_op(Op::Pow) && e.child(1).is_int() &&
      small_int(e.child(1).int_value(), 16)) {
    const long long k = e.child(1).int_value().convert_to<long long>();
    if (k != 0) {
      product_push(form, e.child(0), k);
      return;
    }
    // pow(u, 0) folds to 1 elsewhere; contribute nothing
    return;
  }
  product_push(form, e, 1);
}

inline Expr build_power(const Expr& base, long long exp) {
  if (exp == 1) return base;
  return pow(base, num(exp));
}

// coeff * ordered factors -> tree; constants lead products
inline Expr build_term(const BigInt& coeff, const std::vector<FactorEntry>& factors) {
  std::optional<Expr> prod;
  for (const auto& f : factors) {
    if (f.exp == 0) continue;
    Expr piece = build_power(f.base, f.exp);
    prod = prod ? mul(std::move(*prod), std::move(piece)) : std::move(piece);
  }
  if (!prod) return num(coeff);
  if (coeff == 1) return *prod;
  if (coeff == -1) return neg(std::move(*prod));
  return mul(num(coeff), std::move(*prod));
}

inline Expr rebuild_product(const ProductForm& form) {
  if (form.coeff == 0) return num(0);
  return build_term(form.coeff, form.factors);
}

struct SumTerm {
  BigInt coeff;
  Expr payload;  // never a bare constant; constants fold separately
  std::string key;
};

struct SumForm {
  BigInt constant{0};
  std::vector<SumTerm> terms;
};

inline void sum_push(SumForm& form, const BigInt& coeff, Expr payload) {
  std::string key = to_prefix_string(payload);
  for (auto& t : form.terms) {
    if (t.key == key) {
      t.coeff += coeff;
      return;
    }
  }
  form.terms.push_back({coeff, std::move(payload), std::move(key)});
}

inline void collect_sum(const Expr& e, bool negate, SumForm& form) {
  if (e.is_op(Op::Add)) {
    collect_sum(e.child(0), negate, form);
    collect_sum(e.child(1), negate, form);
    return;
  }
  if (e.is_op(Op::Neg)) {
    collect_sum(e.child(0), !negate, form);
    return;
  }
  ProductForm prod;
  collect_product(e, prod);
  BigInt coeff = negate ? BigInt(-prod.coeff) : prod.coeff;
  if (prod.factors.empty()) {
    form.constant += coeff;
    return;
  }
  // re-canonicalize the payload so equal terms share a key
  Expr payload = build_term(BigInt(1), prod.factors);
  sum_push(form, coeff, std::move(payload));
}

// c*sin(u)^2 + c*cos(u)^2 -> c, matched syntactically
inline void apply_pythagorean(SumForm& form) {
  auto squared_arg = [](const Expr& payload, Op fn) -> std::optional<std::string> {
    if (payload.is_op(Op::Pow) && payload.child(1).is_int(2) &&
        payload.child(0).is_op(fn)) {
      return to_prefix_string(payload.child(0).child(0));
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < form.terms.size(); ++i) {
    auto sin_arg = squared_arg(form.terms[i].payload, Op::Sin);
    if (!sin_arg || form.terms[i].coeff == 0) continue;
    for (std::size_t j = 0; j < form.terms.size(); ++j) {
      if (i == j) continue;
      auto cos_arg = squared_arg(form.terms[j].payload, Op::Cos);
      if (cos_arg && *cos_arg == *sin_arg &&
          form.terms[j].coeff == form.terms[i].coeff) {
        form.constant += form.terms[i].coeff;
        form.terms[i].coeff = 0;
        form.terms[j].coeff = 0;
        break;
      }
    }
  }
}

inline Expr rebuild_sum(const SumForm& form) {
  std::optional<Expr> acc;
  for (const auto& t : form.terms) {
    if (t.coeff == 0) continue;
    Expr piece = t.coeff == 1    ? t.payload
                 : t.coeff == -1 ? neg(t.payload)
                                 : mul(num(t.coeff), t.payload);
    acc = acc ? add(std::move(*acc), std::move(piece)) : std::move(piece);
  }
  if (!acc) return num(form.constant);
  if (form.constant != 0) {
    return add(std::move(*acc), num(form.constant));
  }
  return *acc;
}

inline BigInt int_pow(const BigInt& base, long long exp) {
  BigInt r{1};
  for (long long i = 0; i < exp; ++i) r *= base;
  return r;
}

// One local step; children are already simplified.
inline Expr simplify_node(const Expr& e) {
  if (!e.is_op()) return e;
  switch (e.op()) {
    case Op::Add: {
      SumForm form;
      collect_sum(e, false, form);
      apply_pythagorean(form);
      return rebuild_sum(form);
    }
    case Op::Mul: {
      ProductForm form;
      collect_product(e, form);
      return rebuild_product(form);
    }
    case Op::Neg: {
      const Expr& c = e.child(0);
      if (c.is_int()) return num(BigInt(-c.int_value()));
      if (c.is_op(Op::Neg)) return c.child(0);
      if (c.is_op(Op::Mul)) {
        ProductForm form;
        collect_product(e, form);
        return rebuild_product(form);
      }
      return e;
    }
    case Op::Abs:
      if (e.child(0).is_int()) {
        const BigInt& v = e.child(0).int_value();
        return num(v < 0 ? BigInt(-v) : v);
      }
      return e;
    case Op::Div: {
      const Expr& n = e.child(0);
      const Expr& d = e.child(1);
      if (d.is_int(1)) return n;
      if (d.is_int() && d.int_value() == -1) return neg(n);
      if (n.is_int() && d.is_int() && d.int_value() != 0 &&
          n.int_value() % d.int_value() == 0) {
        return num(BigInt(n.int_value() / d.int_value()));
      }
      return e;
    }
    case Op::Pow: {
      const Expr& b = e.child(0);
      const Expr& k = e.child(1);
      if (k.is_int(0)) return num(1);
      if (k.is_int(1)) return b;
      if (b.is_int() && k.is_int() && k.int_value() > 0 &&
          small_int(k.int_value(), 32) && small_int(b.int_value(), 1 << 20)) {
        return num(int_pow(b.int_value(), k.int_value().convert_to<long long>()));
      }
      return e;
    }
    case Op::Ln:
      if (e.child(0).is_int(1)) return num(0);
      return e;
    case Op::Exp:
      if (e.child(0).is_int(0)) return num(1);
      return e;
    default:
      return e;
  }
}

inline Expr simplify_pass(const Expr& e) {
  if (!e.is_op()) return e;
  std::vector<Expr> children;
  children.reserve(e.children().size());
  bool changed = false;
  for (const Expr& c : e.children()) {
    Expr s = simplify_pass(c);
    if (s != c) changed = true;
    children.push_back(std::move(s));
  }
  Expr rebuilt = changed ? Expr::make(e.op(), std::move(children)) : e;
  return simplify_node(rebuilt);
}

}  // namespace detail

// Fixed point of the local rule set, bounded by max_passes full-tree passes.
inline Expr simplify_basic(const Expr& e, int max_passes = 200) {
  Expr cur = e;
  for (int i = 0; i < max_passes; ++i) {
    Expr next = detail::simplify_pass(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  return cur;
}

}  // namespace equivec
