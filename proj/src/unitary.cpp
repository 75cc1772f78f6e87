#include "hsurf/unitary.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace hsurf {

Mat2 mat2_identity(const FieldCtx& F) {
  Mat2 m{&F, {}};
  m.v = {1, 0, 0, 1};
  return m;
}

Mat4 mat4_identity(const FieldCtx& F) {
  Mat4 m{&F, {}};
  for (int i = 0; i < 4; ++i) m.v[4 * i + i] = 1;
  return m;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  check_internal(a.F == b.F, "matrix context mismatch");
  const FieldCtx& F = *a.F;
  Mat2 r{&F, {}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      uint32_t s = 0;
      for (int k = 0; k < 2; ++k) s = F.add(s, F.mul(a.v[2 * i + k], b.v[2 * k + j]));
      r.v[2 * i + j] = s;
    }
  return r;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  check_internal(a.F == b.F, "matrix context mismatch");
  const FieldCtx& F = *a.F;
  Mat4 r{&F, {}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      uint32_t s = 0;
      for (int k = 0; k < 4; ++k) s = F.add(s, F.mul(a.v[4 * i + k], b.v[4 * k + j]));
      r.v[4 * i + j] = s;
    }
  return r;
}

Mat2 operator-(const Mat2& a) {
  Mat2 r = a;
  for (auto& e : r.v) e = a.F->neg(e);
  return r;
}

Mat2 conjugate_transpose(const Mat2& a) {
  Mat2 r{a.F, {}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.v[2 * i + j] = a.F->frob_q(a.v[2 * j + i]);
  return r;
}

Mat4 conjugate_transpose(const Mat4& a) {
  Mat4 r{a.F, {}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.v[4 * i + j] = a.F->frob_q(a.v[4 * j + i]);
  return r;
}

FieldElem det(const Mat2& a) { return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0); }

Mat2 inverse(const Mat2& a) {
  FieldElem d = det(a);
  if (d.is_zero()) raise(errc::division_by_zero, "singular 2x2 matrix");
  FieldElem di = inv(d);
  Mat2 r{a.F, {}};
  r.set(0, 0, a.at(1, 1) * di);
  r.set(0, 1, -(a.at(0, 1) * di));
  r.set(1, 0, -(a.at(1, 0) * di));
  r.set(1, 1, a.at(0, 0) * di);
  return r;
}

Mat4 inverse(const Mat4& a) {
  const FieldCtx& F = *a.F;
  // Gauss-Jordan on [a | I].
  FieldElem w[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      w[i][j] = a.at(i, j);
      w[i][4 + j] = i == j ? F.one() : F.zero();
    }
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (!w[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) raise(errc::division_by_zero, "singular 4x4 matrix");
    if (piv != col)
      for (int j = 0; j < 8; ++j) std::swap(w[piv][j], w[col][j]);
    FieldElem s = inv(w[col][col]);
    for (int j = 0; j < 8; ++j) w[col][j] = w[col][j] * s;
    for (int r = 0; r < 4; ++r) {
      if (r == col || w[r][col].is_zero()) continue;
      FieldElem f = w[r][col];
      for (int j = 0; j < 8; ++j) w[r][j] = w[r][j] - f * w[col][j];
    }
  }
  Mat4 out{&F, {}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.set(i, j, w[i][4 + j]);
  return out;
}

Mat4 from_blocks(const Mat2& a1, const Mat2& a2, const Mat2& a3, const Mat2& a4) {
  Mat4 m{a1.F, {}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m.v[4 * i + j] = a1.v[2 * i + j];
      m.v[4 * i + (j + 2)] = a2.v[2 * i + j];
      m.v[4 * (i + 2) + j] = a3.v[2 * i + j];
      m.v[4 * (i + 2) + (j + 2)] = a4.v[2 * i + j];
    }
  return m;
}

ProjPoint transform_point(const Mat4& a, const ProjPoint& p) {
  const FieldCtx& F = *a.F;
  std::array<FieldElem, 4> y;
  for (int i = 0; i < 4; ++i) {
    FieldElem s = F.zero();
    for (int j = 0; j < 4; ++j) s = s + a.at(i, j) * p.x[j];
    y[i] = s;
  }
  return normalize_point(y);
}

ProjLine transform_line(const Mat4& a, const ProjLine& l) {
  const FieldCtx& F = *a.F;
  std::array<FieldElem, 4> r0, r1;
  for (int i = 0; i < 4; ++i) {
    FieldElem s0 = F.zero(), s1 = F.zero();
    for (int j = 0; j < 4; ++j) {
      s0 = s0 + a.at(i, j) * l.basis[j];
      s1 = s1 + a.at(i, j) * l.basis[4 + j];
    }
    r0[i] = s0;
    r1[i] = s1;
  }
  return make_line(r0, r1);
}

HermitianCtx::HermitianCtx(const FieldCtx& F) : F_(&F) {
  if (F.level() != FieldLevel::quadratic)
    throw std::invalid_argument("Hermitian context needs a quadratic-level field");
  J_ = Mat4{&F, {}};
  J_.v[4 * 0 + 2] = 1;
  J_.v[4 * 1 + 3] = 1;
  J_.v[4 * 2 + 0] = 1;
  J_.v[4 * 3 + 1] = 1;
  check_internal(J_ * J_ == mat4_identity(F), "J squared must be the identity");

  const FieldElem zero = F.zero(), one = F.one();
  ell_ = make_line({zero, zero, one, zero}, {zero, zero, zero, one});

  // The form through J agrees with the explicit Hermitian expression, on a
  // bounded but coefficient-complete grid of quadruples.
  const uint32_t m = std::min<uint32_t>(F.size(), 8);
  for (uint32_t i0 = 0; i0 < m; ++i0)
    for (uint32_t i1 = 0; i1 < m; ++i1)
      for (uint32_t i2 = 0; i2 < m; ++i2)
        for (uint32_t i3 = 0; i3 < m; ++i3) {
          const std::array<FieldElem, 4> x{F.elem(i0), F.elem(i1), F.elem(i2), F.elem(i3)};
          FieldElem via_j = zero;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) via_j = via_j + x[i] * J_.at(i, j) * frob_q(x[j]);
          check_internal(via_j == sprime_form(x), "J must represent the Hermitian form");
        }
}

std::vector<ProjPoint> HermitianCtx::surface_points() const {
  std::vector<ProjPoint> pts;
  for (const auto& p : all_points_p3(*F_))
    if (sprime_form(p.x).is_zero()) pts.push_back(p);
  return pts;
}

bool is_unitary(const HermitianCtx& H, const Mat4& a) {
  return a * H.J() * conjugate_transpose(a) == H.J();
}

std::vector<Mat2> anti_hermitian_enum(const HermitianCtx& H) {
  const FieldCtx& F = H.field();
  // ct(X) = -X forces a = -a^q, d = -d^q on the diagonal and b = -c^q off it.
  std::vector<Mat2> out;
  const auto& v = F.trace_zero_set();
  out.reserve(v.size() * v.size() * F.size());
  for (uint32_t a : v)
    for (uint32_t d : v)
      for (uint32_t c = 0; c < F.size(); ++c) {
        Mat2 x{&F, {a, F.neg(F.frob_q(c)), c, d}};
        out.push_back(x);
      }
  std::sort(out.begin(), out.end(), [](const Mat2& l, const Mat2& r) { return l.v < r.v; });
  return out;
}

namespace {

// Visit the stabilizer family: A4 over GL2(q^2) in index order, X over the
// anti-Hermitian family.
template <class Fn>
void for_each_stabilizer(const HermitianCtx& H, Fn&& fn) {
  const FieldCtx& F = H.field();
  const auto xs = anti_hermitian_enum(H);
  const uint32_t n = F.size();
  Mat2 a4{&F, {}};
  for (uint32_t e0 = 0; e0 < n; ++e0)
    for (uint32_t e1 = 0; e1 < n; ++e1)
      for (uint32_t e2 = 0; e2 < n; ++e2)
        for (uint32_t e3 = 0; e3 < n; ++e3) {
          a4.v = {e0, e1, e2, e3};
          if (det(a4).is_zero()) continue;
          const Mat2 a1 = inverse(conjugate_transpose(a4));
          for (const auto& x : xs) fn(a1, x * a1, a4);
        }
}

Mat2 mat2_zero(const FieldCtx& F) { return Mat2{&F, {}}; }

struct Mat4KeyHash {
  size_t operator()(const std::array<uint32_t, 16>& k) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t w : k) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace

std::vector<Mat4> stabilizer_enum(const HermitianCtx& H) {
  const FieldCtx& F = H.field();
  if (F.q() > 3) raise(errc::too_large, "full stabilizer enumeration is capped at q = 3");
  std::vector<Mat4> out;
  const Mat2 zero = mat2_zero(F);
  for_each_stabilizer(H, [&](const Mat2& a1, const Mat2& a3, const Mat2& a4) {
    Mat4 m = from_blocks(a1, zero, a3, a4);
    check_internal(is_unitary(H, m), "stabilizer family member must be unitary");
    check_internal(transform_line(m, H.ell_prime()) == H.ell_prime(),
                   "stabilizer family member must fix the reference line");
    out.push_back(m);
  });
  return out;
}

uint64_t stabilizer_count_streaming(const HermitianCtx& H) {
  const FieldCtx& F = H.field();
  if (F.q() > 4) raise(errc::too_large, "streaming stabilizer count is capped at q = 4");
  const Mat2 zero = mat2_zero(F);
  uint64_t count = 0;
  for_each_stabilizer(H, [&](const Mat2& a1, const Mat2& a3, const Mat2& a4) {
    Mat4 m = from_blocks(a1, zero, a3, a4);
    check_internal(is_unitary(H, m), "stabilizer family member must be unitary");
    check_internal(transform_line(m, H.ell_prime()) == H.ell_prime(),
                   "stabilizer family member must fix the reference line");
    ++count;
  });
  return count;
}

uint64_t gu_order(uint64_t q) {
  const unsigned __int128 factors[] = {q + 1, q * q * q * q * q * q, q * q * q * q - 1,
                                       q * q * q + 1, q * q - 1};
  unsigned __int128 acc = 1;
  for (auto f : factors) {
    acc *= f;
    if (acc > static_cast<unsigned __int128>(UINT64_MAX))
      raise(errc::too_large, "unitary group order overflows 64 bits");
  }
  return static_cast<uint64_t>(acc);
}

std::vector<Mat4> default_generators(const HermitianCtx& H) {
  const FieldCtx& F = H.field();
  const Mat2 e = mat2_identity(F), zero = mat2_zero(F);
  std::vector<Mat4> gens;
  for (const auto& x : anti_hermitian_enum(H)) {
    gens.push_back(from_blocks(e, zero, x, e));
    gens.push_back(from_blocks(e, x, zero, e));
  }
  const uint32_t n = F.size();
  Mat2 a{&F, {}};
  for (uint32_t e0 = 0; e0 < n; ++e0)
    for (uint32_t e1 = 0; e1 < n; ++e1)
      for (uint32_t e2 = 0; e2 < n; ++e2)
        for (uint32_t e3 = 0; e3 < n; ++e3) {
          a.v = {e0, e1, e2, e3};
          if (det(a).is_zero()) continue;
          gens.push_back(from_blocks(a, zero, zero, inverse(conjugate_transpose(a))));
        }
  gens.push_back(H.J());
  return gens;
}

std::vector<ProjLine> line_orbit(const HermitianCtx& H, std::span<const Mat4> generators) {
  for (const auto& g : generators)
    if (!is_unitary(H, g)) raise(errc::non_unitary_generator, "orbit generators must be unitary");

  std::unordered_map<LineKey, ProjLine, KeyHash> visited;
  std::vector<const ProjLine*> frontier;
  const ProjLine& start = H.ell_prime();
  frontier.push_back(&visited.emplace(key(start), start).first->second);
  while (!frontier.empty()) {
    std::vector<const ProjLine*> next;
    for (const ProjLine* l : frontier)
      for (const auto& g : generators) {
        ProjLine img = transform_line(g, *l);
        auto [it, inserted] = visited.emplace(key(img), img);
        if (inserted) next.push_back(&it->second);
      }
    frontier = std::move(next);
  }

  std::vector<ProjLine> out;
  out.reserve(visited.size());
  for (auto& [k, l] : visited) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

bool group_closed_exhaustive(std::span<const Mat4> g) {
  if (g.empty()) return false;
  std::unordered_set<std::array<uint32_t, 16>, Mat4KeyHash> keys;
  keys.reserve(g.size() * 2);
  for (const auto& m : g) keys.insert(m.v);
  if (keys.count(mat4_identity(*g[0].F).v) == 0) return false;
  for (const auto& x : g)
    for (const auto& y : g)
      if (keys.count((x * y).v) == 0) return false;
  return true;
}

bool group_closed_sampled(std::span<const Mat4> g, size_t pairs, uint64_t seed) {
  if (g.empty()) return false;
  std::unordered_set<std::array<uint32_t, 16>, Mat4KeyHash> keys;
  keys.reserve(g.size() * 2);
  for (const auto& m : g) keys.insert(m.v);
  if (keys.count(mat4_identity(*g[0].F).v) == 0) return false;
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < pairs; ++i) {
    const Mat4& x = g[rng() % g.size()];
    const Mat4& y = g[rng() % g.size()];
    if (keys.count((x * y).v) == 0) return false;
  }
  return true;
}

bool group_contains_inverses(std::span<const Mat4> g) {
  if (g.empty()) return false;
  std::unordered_set<std::array<uint32_t, 16>, Mat4KeyHash> keys;
  keys.reserve(g.size() * 2);
  for (const auto& m : g) keys.insert(m.v);
  for (const auto& m : g)
    if (keys.count(inverse(m).v) == 0) return false;
  return true;
}

}  // namespace hsurf
