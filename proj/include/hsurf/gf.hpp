#pragma once
// Arithmetic in the field tower F_p subset F_q subset F_{q^2} (and F_{q^4}),
// with q = p^a.
//
// A FieldCtx owns exp/log tables over a deterministically chosen irreducible
// modulus of degree 2a (quadratic level) or 4a (quartic level) over F_p.
// Elements are indices in [0, p^degree); the base-p digits of an index are
// the coefficients of the residue polynomial, digit i = coefficient of x^i.
// Enumeration by index is the canonical element order everywhere.
//
// F_q is not a separate context: it lives inside the context as the fixed
// set of the relative Frobenius x -> x^q, and cross-level equality is via
// that embedding.

#include <cstdint>
#include <span>
#include <vector>

#include "hsurf/error.hpp"

namespace hsurf {

enum class FieldLevel { quadratic, quartic };

class FieldCtx;

struct FieldElem {
  uint32_t v = 0;
  const FieldCtx* F = nullptr;

  bool is_zero() const { return v == 0; }
  friend bool operator==(FieldElem a, FieldElem b) { return a.v == b.v && a.F == b.F; }
  friend bool operator!=(FieldElem a, FieldElem b) { return !(a == b); }
  // Index order; total within one context.
  friend bool operator<(FieldElem a, FieldElem b) { return a.v < b.v; }
};

class FieldCtx {
 public:
  // Throws errc::non_prime, errc::too_large (table cap HSURF_TABLE_CAP,
  // default 2^24 elements), std::invalid_argument for a < 1.
  FieldCtx(uint32_t p, uint32_t a, FieldLevel level);

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  uint32_t p() const { return p_; }
  uint32_t a() const { return a_; }
  FieldLevel level() const { return level_; }
  uint64_t q() const { return q_; }
  uint32_t degree() const { return degree_; }
  uint32_t size() const { return n_; }
  // Monic modulus, degree+1 coefficients, low degree first.
  std::span<const uint32_t> modulus() const { return modulus_; }

  FieldElem zero() const { return {0, this}; }
  FieldElem one() const { return {1, this}; }
  // The residue class of x (index p).
  FieldElem gen() const { return {p_, this}; }
  FieldElem elem(uint32_t index) const;
  FieldElem scalar(uint64_t c) const { return {static_cast<uint32_t>(c % p_), this}; }
  FieldElem from_coeffs(std::span<const uint32_t> coeffs) const;
  std::vector<uint32_t> coeffs(uint32_t index) const;

  // Raw index arithmetic.
  uint32_t add(uint32_t x, uint32_t y) const;
  uint32_t neg(uint32_t x) const { return neg_[x]; }
  uint32_t sub(uint32_t x, uint32_t y) const { return add(x, neg_[y]); }
  uint32_t mul(uint32_t x, uint32_t y) const {
    if (x == 0 || y == 0) return 0;
    uint64_t s = static_cast<uint64_t>(log_[x]) + log_[y];
    if (s >= group_order_) s -= group_order_;
    return exp_[s];
  }
  uint32_t inv(uint32_t x) const {
    if (x == 0) raise(errc::division_by_zero, "inverse of zero");
    uint32_t l = log_[x];
    return exp_[l == 0 ? 0 : group_order_ - l];
  }
  uint32_t pow(uint32_t x, uint64_t e) const;  // square-and-multiply; 0^0 = 1
  uint32_t frob_q(uint32_t x) const { return frob_q_[x]; }

  bool in_base(uint32_t x) const { return frob_q_[x] == x; }        // x in F_q
  bool in_quadratic(uint32_t x) const { return frob_q_[frob_q_[x]] == x; }  // x in F_{q^2}

  // F_q inside this context, sorted by index; size q.
  const std::vector<uint32_t>& base_field() const { return base_field_; }
  // V = {x : x^q = -x} = ker(Tr_{F_{q^2}/F_q}), sorted; size q. Quadratic level only.
  const std::vector<uint32_t>& trace_zero_set() const;
  // All x with x^q - x = c; size q when c is in V, else empty. Quadratic level only.
  std::span<const uint32_t> solve_additive(uint32_t c) const;

  // Independent of the exp/log path; used to build the tables and by oracles.
  uint32_t mul_poly(uint32_t x, uint32_t y) const;

 private:
  void build_tables();

  uint32_t p_ = 0, a_ = 0;
  FieldLevel level_ = FieldLevel::quadratic;
  uint64_t q_ = 0;
  uint32_t degree_ = 0, n_ = 0, group_order_ = 0;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> exp_, log_, neg_, frob_q_;
  std::vector<uint32_t> base_field_;
  std::vector<uint32_t> trace_zero_;
  std::vector<int32_t> additive_bucket_;             // element -> bucket id or -1
  std::vector<std::vector<uint32_t>> additive_sol_;  // bucket id -> sorted solutions
  std::vector<uint32_t> pow_p_;                      // p^i place values
};

inline FieldElem operator+(FieldElem a, FieldElem b) {
  check_internal(a.F == b.F, "field element context mismatch");
  return {a.F->add(a.v, b.v), a.F};
}
inline FieldElem operator-(FieldElem a) { return {a.F->neg(a.v), a.F}; }
inline FieldElem operator-(FieldElem a, FieldElem b) {
  check_internal(a.F == b.F, "field element context mismatch");
  return {a.F->sub(a.v, b.v), a.F};
}
inline FieldElem operator*(FieldElem a, FieldElem b) {
  check_internal(a.F == b.F, "field element context mismatch");
  return {a.F->mul(a.v, b.v), a.F};
}
inline FieldElem inv(FieldElem a) { return {a.F->inv(a.v), a.F}; }
inline FieldElem operator/(FieldElem a, FieldElem b) {
  check_internal(a.F == b.F, "field element context mismatch");
  return {a.F->mul(a.v, b.F->inv(b.v)), a.F};
}
inline FieldElem pow(FieldElem a, uint64_t e) { return {a.F->pow(a.v, e), a.F}; }
inline FieldElem frob_q(FieldElem a) { return {a.F->frob_q(a.v), a.F}; }
inline bool in_base(FieldElem a) { return a.F->in_base(a.v); }

// Field homomorphism from a subfield context into an extension context,
// matching the subfield modulus to its lexicographically least root.
struct Embedding {
  const FieldCtx* from = nullptr;
  const FieldCtx* to = nullptr;
  std::vector<uint32_t> map;

  FieldElem operator()(FieldElem x) const {
    check_internal(x.F == from, "embedding applied to foreign element");
    return {map[x.v], to};
  }
};

Embedding make_embedding(const FieldCtx& subfield, const FieldCtx& extension);

}  // namespace hsurf
