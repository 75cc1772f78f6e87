#include "hsurf/geom.hpp"

#include <algorithm>

namespace hsurf {

namespace {

using Row = std::array<FieldElem, 4>;

int first_nonzero(const Row& r) {
  for (int i = 0; i < 4; ++i)
    if (!r[i].is_zero()) return i;
  return -1;
}

void scale_row(Row& r, FieldElem c) {
  for (auto& e : r) e = e * c;
}

// r -= c * s
void eliminate(Row& r, FieldElem c, const Row& s) {
  for (int i = 0; i < 4; ++i) r[i] = r[i] - c * s[i];
}

// Reduced row echelon form of two rows; returns pivot columns, or {-1,-1}
// when the rank is below 2.
std::array<int, 2> rref2(Row& r0, Row& r1) {
  int j0 = first_nonzero(r0);
  int j1 = first_nonzero(r1);
  if (j0 < 0 || (j1 >= 0 && j1 < j0)) {
    std::swap(r0, r1);
    std::swap(j0, j1);
  }
  if (j0 < 0) return {-1, -1};
  scale_row(r0, inv(r0[j0]));
  eliminate(r1, r1[j0], r0);
  int k = first_nonzero(r1);
  if (k < 0) return {-1, -1};
  scale_row(r1, inv(r1[k]));
  eliminate(r0, r0[k], r1);
  return {j0, k};
}

}  // namespace

PointKey key(const ProjPoint& p) { return {p.x[0].v, p.x[1].v, p.x[2].v, p.x[3].v}; }
PointKey key(const Hyperplane& h) { return {h.c[0].v, h.c[1].v, h.c[2].v, h.c[3].v}; }
LineKey key(const ProjLine& l) {
  LineKey k;
  for (int i = 0; i < 8; ++i) k[i] = l.basis[i].v;
  return k;
}

ProjPoint normalize_point(std::array<FieldElem, 4> raw) {
  int j = first_nonzero(raw);
  if (j < 0) raise(errc::zero_vector, "projective point needs a nonzero coordinate");
  FieldElem s = inv(raw[j]);
  for (auto& e : raw) e = e * s;
  return {raw};
}

Hyperplane make_hyperplane(std::array<FieldElem, 4> coeffs) {
  return {normalize_point(coeffs).x};
}

FieldElem eval(const Hyperplane& h, const ProjPoint& p) {
  FieldElem s = h.c[0] * p.x[0];
  for (int i = 1; i < 4; ++i) s = s + h.c[i] * p.x[i];
  return s;
}

ProjLine make_line(std::array<FieldElem, 4> r0, std::array<FieldElem, 4> r1) {
  auto pivots = rref2(r0, r1);
  if (pivots[0] < 0) raise(errc::equal_points, "rows do not span a line");

  // Annihilator: for each free column f, the vector with 1 at f and
  // -row_i[f] at pivot column i solves both equations; RREF canonicalizes.
  Row k0{}, k1{};
  Row* ks[2] = {&k0, &k1};
  const FieldCtx& F = *r0[0].F;
  int nk = 0;
  for (int f = 0; f < 4; ++f) {
    if (f == pivots[0] || f == pivots[1]) continue;
    Row& k = *ks[nk++];
    for (int i = 0; i < 4; ++i) k[i] = F.zero();
    k[f] = F.one();
    k[pivots[0]] = -r0[f];
    k[pivots[1]] = -r1[f];
  }
  auto dp = rref2(k0, k1);
  check_internal(dp[0] >= 0, "line annihilator must have rank 2");

  ProjLine l;
  for (int i = 0; i < 4; ++i) {
    l.basis[i] = r0[i];
    l.basis[4 + i] = r1[i];
    l.dual[i] = k0[i];
    l.dual[4 + i] = k1[i];
  }
  bool br = true;
  for (const auto& e : l.basis) br = br && in_base(e);
  l.base_rational = br;
  return l;
}

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
  if (p == q) raise(errc::equal_points, "need two distinct points to span a line");
  return make_line(p.x, q.x);
}

bool contains(const ProjLine& l, const ProjPoint& p) {
  for (int r = 0; r < 2; ++r) {
    FieldElem s = l.dual[4 * r] * p.x[0];
    for (int i = 1; i < 4; ++i) s = s + l.dual[4 * r + i] * p.x[i];
    if (!s.is_zero()) return false;
  }
  return true;
}

std::vector<ProjPoint> points_on_line(const ProjLine& l, Level level) {
  const FieldCtx& F = l.field();
  if (level == Level::base && !l.base_rational)
    raise(errc::not_base_rational, "line has no base-rational canonical basis");

  std::vector<ProjPoint> pts;
  auto at = [&](FieldElem t) {
    std::array<FieldElem, 4> r;
    for (int i = 0; i < 4; ++i) r[i] = l.basis[i] + t * l.basis[4 + i];
    return normalize_point(r);
  };
  if (level == Level::quadratic) {
    pts.reserve(F.size() + 1);
    for (uint32_t t = 0; t < F.size(); ++t) pts.push_back(at(F.elem(t)));
  } else {
    pts.reserve(F.q() + 1);
    for (uint32_t t : F.base_field()) pts.push_back(at(F.elem(t)));
  }
  pts.push_back(normalize_point({l.basis[4], l.basis[5], l.basis[6], l.basis[7]}));
  std::sort(pts.begin(), pts.end());
  return pts;
}

bool is_base_rational(const ProjPoint& p) {
  for (const auto& e : p.x)
    if (!in_base(e)) return false;
  return true;
}

bool is_base_rational(const Hyperplane& h) {
  for (const auto& e : h.c)
    if (!in_base(e)) return false;
  return true;
}

bool is_base_rational(const ProjLine& l) { return l.base_rational; }

Hyperplane LinePencil::member(FieldElem lam, FieldElem mu) const {
  std::array<FieldElem, 4> c;
  for (int i = 0; i < 4; ++i) c[i] = lam * rows[0][i] + mu * rows[1][i];
  return make_hyperplane(c);
}

std::vector<PencilParam> LinePencil::params() const {
  const FieldCtx& F = *rows[0][0].F;
  std::vector<PencilParam> ps;
  ps.reserve(F.size() + 1);
  ps.push_back({F.zero(), F.one()});
  for (uint32_t t = 0; t < F.size(); ++t) ps.push_back({F.one(), F.elem(t)});
  return ps;
}

LinePencil pencil_through_line(const ProjLine& l) {
  LinePencil p;
  for (int i = 0; i < 4; ++i) {
    p.rows[0][i] = l.dual[i];
    p.rows[1][i] = l.dual[4 + i];
  }
  return p;
}

ProjPoint embed_point(const Embedding& e, const ProjPoint& p) {
  return {{e(p.x[0]), e(p.x[1]), e(p.x[2]), e(p.x[3])}};
}

Hyperplane embed_hyperplane(const Embedding& e, const Hyperplane& h) {
  return {{e(h.c[0]), e(h.c[1]), e(h.c[2]), e(h.c[3])}};
}

ProjLine embed_line(const Embedding& e, const ProjLine& l) {
  // Entry-wise embedding preserves the RREF shape, so re-canonicalizing via
  // make_line reproduces the embedded matrix; going through make_line also
  // rebuilds the dual and the rationality flag in the new context.
  std::array<FieldElem, 4> r0, r1;
  for (int i = 0; i < 4; ++i) {
    r0[i] = e(l.basis[i]);
    r1[i] = e(l.basis[4 + i]);
  }
  return make_line(r0, r1);
}

std::vector<ProjPoint> all_points_p3(const FieldCtx& F) {
  std::vector<ProjPoint> pts;
  const uint64_t n = F.size();
  pts.reserve(n * n * n + n * n + n + 1);
  const FieldElem zero = F.zero(), one = F.one();
  pts.push_back({{zero, zero, zero, one}});
  for (uint32_t t = 0; t < n; ++t) pts.push_back({{zero, zero, one, F.elem(t)}});
  for (uint32_t s = 0; s < n; ++s)
    for (uint32_t t = 0; t < n; ++t) pts.push_back({{zero, one, F.elem(s), F.elem(t)}});
  for (uint32_t r = 0; r < n; ++r)
    for (uint32_t s = 0; s < n; ++s)
      for (uint32_t t = 0; t < n; ++t) pts.push_back({{one, F.elem(r), F.elem(s), F.elem(t)}});
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::array<std::array<FieldElem, 4>, 3> hyperplane_basis(const Hyperplane& h) {
  const FieldCtx& F = *h.c[0].F;
  int j = 0;
  while (h.c[j].is_zero()) ++j;  // normalized: h.c[j] == 1
  std::array<std::array<FieldElem, 4>, 3> rows;
  int n = 0;
  for (int f = 0; f < 4; ++f) {
    if (f == j) continue;
    auto& r = rows[n++];
    for (int i = 0; i < 4; ++i) r[i] = F.zero();
    r[f] = F.one();
    r[j] = -h.c[f];
  }
  return rows;
}

}  // namespace hsurf
