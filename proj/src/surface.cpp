#include "hsurf/surface.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace hsurf {

FieldElem pair_form(const std::array<FieldElem, 4>& u, const std::array<FieldElem, 4>& v) {
  return u[0] * frob_q(v[1]) - u[1] * frob_q(v[0]) + u[2] * frob_q(v[3]) - u[3] * frob_q(v[2]);
}

FieldElem surface_form(const std::array<FieldElem, 4>& x) { return pair_form(x, x); }

FieldElem sprime_form(const std::array<FieldElem, 4>& y) {
  return y[0] * frob_q(y[2]) + y[2] * frob_q(y[0]) + y[1] * frob_q(y[3]) + y[3] * frob_q(y[1]);
}

std::array<FieldElem, 4> surface_gradient(const std::array<FieldElem, 4>& x) {
  return {frob_q(x[1]), -frob_q(x[0]), frob_q(x[3]), -frob_q(x[2])};
}

SurfaceCtx::SurfaceCtx(const FieldCtx& F) : F_(&F) {
  if (F.level() != FieldLevel::quadratic)
    throw std::invalid_argument("surface context needs a quadratic-level field");
  const uint32_t n = F.size();
  const FieldElem zero = F.zero(), one = F.one();

  const uint64_t q = F.q();
  const uint64_t expected = (q * q * q + 1) * (q * q + 1);
  if (expected > env_cap("HSURF_TABLE_CAP", uint64_t{1} << 24))
    raise(errc::too_large, "surface point cache exceeds HSURF_TABLE_CAP");
  quad_.reserve(expected);

  // x0 = 1: q solutions x1 of x1^q - x1 = x3*x2^q - x2*x3^q per (x2, x3).
  for (uint32_t i2 = 0; i2 < n; ++i2)
    for (uint32_t i3 = 0; i3 < n; ++i3) {
      FieldElem x2 = F.elem(i2), x3 = F.elem(i3);
      FieldElem c = x3 * frob_q(x2) - x2 * frob_q(x3);
      for (uint32_t s : F.solve_additive(c.v)) {
        quad_.push_back({{one, F.elem(s), x2, x3}});
        ++chart_.affine;
      }
    }

  // x0 = 0 boundary, already in normalized form per case.
  quad_.push_back({{zero, one, zero, zero}});
  ++chart_.origin;
  for (uint32_t t = 1; t < n; ++t) {
    quad_.push_back({{zero, one, zero, F.elem(t)}});
    ++chart_.x2_zero;
  }
  quad_.push_back({{zero, zero, zero, one}});
  ++chart_.x2_zero;
  for (uint32_t t = 1; t < n; ++t) {
    quad_.push_back({{zero, one, F.elem(t), zero}});
    ++chart_.x3_zero;
  }
  quad_.push_back({{zero, zero, one, zero}});
  ++chart_.x3_zero;
  for (uint32_t a : F.base_field()) {
    if (a == 0) continue;
    quad_.push_back({{zero, zero, one, F.elem(a)}});
    ++chart_.b_zero;
    for (uint32_t al = 1; al < n; ++al) {
      FieldElem alpha = F.elem(al);
      quad_.push_back({{zero, one, alpha, F.elem(a) * alpha}});
      ++chart_.general;
    }
  }

  std::sort(quad_.begin(), quad_.end());
  for (const auto& p : quad_)
    check_internal(on_surface(p), "every cached surface point must satisfy the form");

  for (const auto& p : quad_)
    if (is_base_rational(p)) base_.push_back(p);
}

Hyperplane SurfaceCtx::tangent_plane(const ProjPoint& p) const {
  if (!on_surface(p)) raise(errc::not_on_surface, "tangent plane needs a surface point");
  return make_hyperplane(surface_gradient(p.x));
}

std::vector<ProjLine> SurfaceCtx::tangent_cone_lines(const ProjPoint& p) const {
  const Hyperplane h = tangent_plane(p);
  const auto rows = hyperplane_basis(h);

  // F_{q^2}-points of S in the tangent plane.
  std::vector<ProjPoint> cone;
  std::unordered_set<PointKey, KeyHash> cone_keys;
  for_each_p2(*F_, [&](FieldElem u0, FieldElem u1, FieldElem u2) {
    std::array<FieldElem, 4> x;
    for (int i = 0; i < 4; ++i) x[i] = u0 * rows[0][i] + u1 * rows[1][i] + u2 * rows[2][i];
    if (!surface_form(x).is_zero()) return;
    ProjPoint pt = normalize_point(x);
    if (cone_keys.insert(key(pt)).second) cone.push_back(pt);
  });

  std::map<LineKey, ProjLine> lines;
  const PointKey pk = key(p);
  for (const auto& q : cone) {
    if (key(q) == pk) continue;
    ProjLine l = line_through(p, q);
    lines.emplace(key(l), l);
  }

  const uint64_t q = F_->q();
  check_internal(lines.size() == q + 1, "tangent section must split into q+1 lines");
  size_t covered = 0;
  for (const auto& [k, l] : lines) {
    for (const auto& pt : points_on_line(l, Level::quadratic))
      check_internal(cone_keys.count(key(pt)) > 0, "tangent-cone line must lie in the section");
    covered += F_->size();  // q^2 points besides the common point p
  }
  check_internal(covered + 1 == cone.size(), "tangent-cone lines must cover the section");

  std::vector<ProjLine> out;
  out.reserve(lines.size());
  for (auto& [k, l] : lines) out.push_back(l);
  return out;
}

bool SurfaceCtx::smoothness_check() const {
  for (const auto& p : quad_) {
    const auto g = surface_gradient(p.x);
    if (g[0].is_zero() && g[1].is_zero() && g[2].is_zero() && g[3].is_zero()) return false;
  }
  return true;
}

std::array<FieldElem, 4> ModelMap::apply_raw(const std::array<FieldElem, 4>& x) const {
  return {lambda * x[0], lambda * x[2], x[1], x[3]};
}

std::array<FieldElem, 4> ModelMap::invert_raw(const std::array<FieldElem, 4>& y) const {
  FieldElem li = inv(lambda);
  return {li * y[0], y[2], li * y[1], y[3]};
}

ProjLine ModelMap::apply_line(const ProjLine& l) const {
  return make_line(apply_raw({l.basis[0], l.basis[1], l.basis[2], l.basis[3]}),
                   apply_raw({l.basis[4], l.basis[5], l.basis[6], l.basis[7]}));
}

ModelMap hermitian_model_map(const FieldCtx& F, FieldElem lambda) {
  if (lambda.is_zero() || F.frob_q(lambda.v) != F.neg(lambda.v))
    raise(errc::bad_lambda, "lambda must be nonzero with lambda^q = -lambda");
  return {lambda};
}

ModelMap hermitian_model_map(const FieldCtx& F) {
  for (uint32_t v : F.trace_zero_set())
    if (v != 0) return {F.elem(v)};
  raise(errc::bad_lambda, "no nonzero trace-zero element");  // unreachable: |V| = q >= 2
}

}  // namespace hsurf
