#include "hsurf/gf.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace hsurf {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_prime: return "NonPrime";
    case errc::too_large: return "TooLarge";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::zero_vector: return "ZeroVector";
    case errc::equal_points: return "EqualPoints";
    case errc::not_base_rational: return "NotBaseRational";
    case errc::not_on_surface: return "NotOnSurface";
    case errc::inconsistent_level: return "InconsistentLevel";
    case errc::not_a_configuration: return "NotAConfiguration";
    case errc::bad_lambda: return "BadLambda";
    case errc::degenerate_parameter: return "DegenerateParameter";
    case errc::line_not_on_surface: return "LineNotOnSurface";
    case errc::hyperplane_misses_line: return "HyperplaneMissesLine";
    case errc::wrong_characteristic: return "WrongCharacteristic";
    case errc::non_unitary_generator: return "NonUnitaryGenerator";
    case errc::internal_check: return "InternalCheck";
  }
  return "Unknown";
}

uint64_t env_cap(const char* name, uint64_t fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  return std::strtoull(s, nullptr, 10);
}

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, low degree first, not necessarily normalized.
using Poly = std::vector<uint32_t>;

int poly_deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

Poly poly_mul(const Poly& f, const Poly& g, uint32_t p) {
  Poly r(f.size() + g.size(), 0);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (size_t j = 0; j < g.size(); ++j)
      r[i + j] = (r[i + j] + static_cast<uint64_t>(f[i]) * g[j]) % p;
  }
  return r;
}

// f mod g, g monic of degree >= 1.
Poly poly_mod(Poly f, const Poly& g, uint32_t p) {
  int dg = poly_deg(g);
  for (int i = poly_deg(f); i >= dg; --i) {
    uint32_t c = f[i];
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) {
      uint64_t t = static_cast<uint64_t>(c) * g[j] % p;
      f[i - dg + j] = (f[i - dg + j] + p - static_cast<uint32_t>(t)) % p;
    }
  }
  f.resize(dg);
  return f;
}

Poly decode(uint32_t idx, uint32_t p, uint32_t degree) {
  Poly f(degree, 0);
  for (uint32_t i = 0; i < degree && idx; ++i, idx /= p) f[i] = idx % p;
  return f;
}

uint32_t encode(const Poly& f, uint32_t p) {
  uint32_t idx = 0;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) idx = idx * p + f[i];
  return idx;
}

// Irreducible over F_p iff no monic divisor of degree 1..deg/2.
bool is_irreducible(const Poly& f, uint32_t p) {
  int d = poly_deg(f);
  for (int dg = 1; dg <= d / 2; ++dg) {
    uint64_t count = 1;
    for (int i = 0; i < dg; ++i) count *= p;
    for (uint64_t low = 0; low < count; ++low) {
      Poly g = decode(static_cast<uint32_t>(low), p, dg);
      g.resize(dg + 1, 0);
      g[dg] = 1;
      if (poly_deg(poly_mod(f, g, p)) < 0) return false;
    }
  }
  return true;
}

std::vector<uint32_t> prime_factors(uint64_t n) {
  std::vector<uint32_t> fs;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(static_cast<uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(static_cast<uint32_t>(n));
  return fs;
}

}  // namespace

FieldCtx::FieldCtx(uint32_t p, uint32_t a, FieldLevel level) : p_(p), a_(a), level_(level) {
  if (!is_prime(p)) raise(errc::non_prime, "p = " + std::to_string(p) + " is not prime");
  if (a < 1) throw std::invalid_argument("extension degree a must be >= 1");
  degree_ = (level == FieldLevel::quadratic ? 2 : 4) * a;

  const uint64_t cap = env_cap("HSURF_TABLE_CAP", uint64_t{1} << 24);
  uint64_t n = 1;
  q_ = 1;
  for (uint32_t i = 0; i < degree_; ++i) {
    n *= p;
    if (n > cap)
      raise(errc::too_large, "field with p^" + std::to_string(degree_) +
                                 " elements exceeds table cap " + std::to_string(cap));
  }
  for (uint32_t i = 0; i < a; ++i) q_ *= p;
  n_ = static_cast<uint32_t>(n);
  group_order_ = n_ - 1;

  pow_p_.resize(degree_);
  pow_p_[0] = 1;
  for (uint32_t i = 1; i < degree_; ++i) pow_p_[i] = pow_p_[i - 1] * p;

  // Lowest encoded irreducible monic modulus x^degree + (lower part).
  for (uint32_t low = 0;; ++low) {
    check_internal(low < n_, "irreducible modulus search must succeed");
    Poly f = decode(low, p, degree_);
    f.resize(degree_ + 1, 0);
    f[degree_] = 1;
    if (is_irreducible(f, p)) {
      modulus_ = f;
      break;
    }
  }

  build_tables();
}

void FieldCtx::build_tables() {
  // Negation and addition are digit-wise; negation is table-backed.
  neg_.resize(n_);
  for (uint32_t x = 0; x < n_; ++x) {
    uint32_t r = 0;
    for (uint32_t i = 0, rem = x; i < degree_; ++i, rem /= p_) {
      uint32_t d = rem % p_;
      r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    }
    neg_[x] = r;
  }

  // Find the least-index generator of the multiplicative group, then lay
  // out exp/log. Order tests and the exp walk use polynomial arithmetic so
  // the tables never feed their own construction.
  auto poly_pow = [&](uint32_t base, uint64_t e) {
    uint32_t r = 1, b = base;
    while (e) {
      if (e & 1) r = mul_poly(r, b);
      b = mul_poly(b, b);
      e >>= 1;
    }
    return r;
  };
  const auto factors = prime_factors(group_order_);
  uint32_t g = 0;
  for (uint32_t cand = 2; cand < n_; ++cand) {
    bool ok = true;
    for (uint32_t f : factors)
      if (poly_pow(cand, group_order_ / f) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      g = cand;
      break;
    }
  }
  check_internal(g != 0 || n_ == 2, "multiplicative generator must exist");

  exp_.resize(group_order_);
  log_.assign(n_, 0);
  uint32_t acc = 1;
  for (uint32_t k = 0; k < group_order_; ++k) {
    exp_[k] = acc;
    log_[acc] = k;
    acc = mul_poly(acc, g);
  }
  check_internal(acc == 1, "generator order must equal the group order");
  // Every nonzero element must appear exactly once.
  std::vector<bool> seen(n_, false);
  for (uint32_t e : exp_) {
    check_internal(!seen[e] && e != 0, "exp table must enumerate the full group");
    seen[e] = true;
  }

  frob_q_.resize(n_);
  frob_q_[0] = 0;
  for (uint32_t x = 1; x < n_; ++x)
    frob_q_[x] = exp_[static_cast<uint64_t>(log_[x]) * (q_ % group_order_) % group_order_];

  for (uint32_t x = 0; x < n_; ++x)
    if (frob_q_[x] == x) base_field_.push_back(x);
  check_internal(base_field_.size() == q_, "fixed field of x->x^q must have q elements");

  if (level_ == FieldLevel::quadratic) {
    for (uint32_t x = 0; x < n_; ++x)
      if (frob_q_[x] == neg_[x]) trace_zero_.push_back(x);
    check_internal(trace_zero_.size() == q_, "trace-zero set must have q elements");

    // Fibers of x -> x^q - x partition the field over the trace-zero values.
    additive_bucket_.assign(n_, -1);
    for (uint32_t i = 0; i < trace_zero_.size(); ++i) additive_bucket_[trace_zero_[i]] = static_cast<int32_t>(i);
    additive_sol_.resize(trace_zero_.size());
    for (uint32_t x = 0; x < n_; ++x) {
      uint32_t c = add(frob_q_[x], neg_[x]);
      check_internal(additive_bucket_[c] >= 0, "image of Frobenius minus identity must be trace-zero");
      additive_sol_[additive_bucket_[c]].push_back(x);
    }
    for (auto& bucket : additive_sol_)
      check_internal(bucket.size() == q_, "each additive fiber must have q solutions");
  }
}

uint32_t FieldCtx::add(uint32_t x, uint32_t y) const {
  if (p_ == 2) return x ^ y;
  uint32_t r = 0;
  for (uint32_t i = 0; i < degree_; ++i) {
    uint32_t dx = x % p_, dy = y % p_;
    uint32_t s = dx + dy;
    if (s >= p_) s -= p_;
    r += s * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return r;
}

uint32_t FieldCtx::mul_poly(uint32_t x, uint32_t y) const {
  Poly f = decode(x, p_, degree_), g = decode(y, p_, degree_);
  return encode(poly_mod(poly_mul(f, g, p_), modulus_, p_), p_);
}

uint32_t FieldCtx::pow(uint32_t x, uint64_t e) const {
  uint32_t r = 1, b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::elem(uint32_t index) const {
  check_internal(index < n_, "element index out of range");
  return {index, this};
}

FieldElem FieldCtx::from_coeffs(std::span<const uint32_t> coeffs) const {
  check_internal(coeffs.size() <= degree_, "too many coefficients");
  uint32_t idx = 0;
  for (size_t i = 0; i < coeffs.size(); ++i) idx += (coeffs[i] % p_) * pow_p_[i];
  return {idx, this};
}

std::vector<uint32_t> FieldCtx::coeffs(uint32_t index) const { return decode(index, p_, degree_); }

const std::vector<uint32_t>& FieldCtx::trace_zero_set() const {
  check_internal(level_ == FieldLevel::quadratic, "trace-zero set is a quadratic-level notion");
  return trace_zero_;
}

std::span<const uint32_t> FieldCtx::solve_additive(uint32_t c) const {
  check_internal(level_ == FieldLevel::quadratic, "solve_additive is a quadratic-level operation");
  int32_t b = additive_bucket_[c];
  if (b < 0) return {};
  return additive_sol_[b];
}

Embedding make_embedding(const FieldCtx& subfield, const FieldCtx& extension) {
  check_internal(subfield.p() == extension.p() && subfield.degree() < extension.degree() &&
                     extension.degree() % subfield.degree() == 0,
                 "no embedding between these contexts");
  // Least root of the subfield modulus inside the extension.
  const auto mod = subfield.modulus();
  uint32_t root = 0;
  bool found = false;
  for (uint32_t r = 0; r < extension.size(); ++r) {
    uint32_t acc = 0;
    for (int i = static_cast<int>(mod.size()) - 1; i >= 0; --i)
      acc = extension.add(extension.mul(acc, r), mod[i] % extension.p());
    if (acc == 0) {
      root = r;
      found = true;
      break;
    }
  }
  check_internal(found, "subfield modulus must split in the extension");

  Embedding e{&subfield, &extension, std::vector<uint32_t>(subfield.size())};
  for (uint32_t x = 0; x < subfield.size(); ++x) {
    const auto cs = subfield.coeffs(x);
    uint32_t acc = 0;
    for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i)
      acc = extension.add(extension.mul(acc, root), cs[i]);
    e.map[x] = acc;
  }

  // Ring-homomorphism sanity: exhaustive on small fields, sampled otherwise.
  const uint32_t n = subfield.size();
  const uint32_t step = n <= 4096 ? 1 : n / 1024;
  for (uint32_t x = 0; x < n; x += step)
    for (uint32_t y = 0; y < n; y += step) {
      check_internal(e.map[subfield.add(x, y)] == extension.add(e.map[x], e.map[y]),
                     "embedding must preserve addition");
      check_internal(e.map[subfield.mul(x, y)] == extension.mul(e.map[x], e.map[y]),
                     "embedding must preserve multiplication");
    }
  check_internal(e.map[1] == 1, "embedding must preserve one");
  return e;
}

}  // namespace hsurf
