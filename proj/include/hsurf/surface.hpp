#pragma once
// The hypersurface S: x0*x1^q - x1*x0^q + x2*x3^q - x3*x2^q = 0.
//
// Point enumeration works chart by chart: on x0 = 1 the equation reads
// x1^q - x1 = x3*x2^q - x2*x3^q, so each (x2, x3) contributes the q
// solutions of an additive equation; the x0 = 0 boundary factors as
// x2*x3*prod_{a in Fq*}(x3 - a*x2) and is enumerated case by case.

#include <cstdint>
#include <vector>

#include "hsurf/geom.hpp"

namespace hsurf {

// T(u, v) = u0 v1^q - u1 v0^q + u2 v3^q - u3 v2^q, the pairing underlying the
// surface form (F(x) = T(x, x)), the chord condition (T(P, Q) = 0) and the
// tangent plane at P ({x : T(x, P) = 0}).
FieldElem pair_form(const std::array<FieldElem, 4>& u, const std::array<FieldElem, 4>& v);

FieldElem surface_form(const std::array<FieldElem, 4>& x);
// The Hermitian-model form y1*conj(y3) + y3*conj(y1) + y2*conj(y4) + y4*conj(y2)
// in 0-indexed coordinates.
FieldElem sprime_form(const std::array<FieldElem, 4>& y);

std::array<FieldElem, 4> surface_gradient(const std::array<FieldElem, 4>& x);

// Per-case rational point counts of the affine decomposition over F_{q^2}.
struct ChartCounts {
  uint64_t affine = 0;   // x0 != 0
  uint64_t origin = 0;   // x0 = 0, x2 = x3 = 0
  uint64_t x2_zero = 0;  // x0 = 0, x2 = 0, x3 != 0
  uint64_t x3_zero = 0;  // x0 = 0, x2 != 0, x3 = 0
  uint64_t b_zero = 0;   // x0 = 0, x2,x3 != 0, x1 = 0
  uint64_t general = 0;  // x0 = 0, x2,x3 != 0, x1 != 0
};

class SurfaceCtx {
 public:
  explicit SurfaceCtx(const FieldCtx& F);  // quadratic-level context

  const FieldCtx& field() const { return *F_; }

  bool on_surface(const ProjPoint& p) const { return surface_form(p.x).is_zero(); }

  // Sorted, cached; |quadratic| = (q^3+1)(q^2+1), |base| = q^3+q^2+q+1.
  const std::vector<ProjPoint>& points(Level level) const {
    return level == Level::quadratic ? quad_ : base_;
  }
  const ChartCounts& chart_counts() const { return chart_; }

  // Throws NotOnSurface.
  Hyperplane tangent_plane(const ProjPoint& p) const;

  // The q+1 lines through p whose union is S intersected with the tangent
  // plane at p; sorted by key. Throws NotOnSurface.
  std::vector<ProjLine> tangent_cone_lines(const ProjPoint& p) const;

  // Gradient nonzero at every cached F_{q^2}-point.
  bool smoothness_check() const;

 private:
  const FieldCtx* F_;
  std::vector<ProjPoint> quad_, base_;
  ChartCounts chart_;
};

// The linear change of coordinates (x0,x1,x2,x3) -> (l*x0, l*x2, x1, x3)
// carrying S onto the Hermitian model S'; defined for l != 0 with l^q = -l.
struct ModelMap {
  FieldElem lambda;

  std::array<FieldElem, 4> apply_raw(const std::array<FieldElem, 4>& x) const;
  std::array<FieldElem, 4> invert_raw(const std::array<FieldElem, 4>& y) const;
  ProjPoint apply(const ProjPoint& p) const { return normalize_point(apply_raw(p.x)); }
  ProjPoint invert(const ProjPoint& p) const { return normalize_point(invert_raw(p.x)); }
  ProjLine apply_line(const ProjLine& l) const;
};

// Throws BadLambda unless lambda is a nonzero trace-zero element.
ModelMap hermitian_model_map(const FieldCtx& F, FieldElem lambda);
// The deterministic default: least nonzero trace-zero element.
ModelMap hermitian_model_map(const FieldCtx& F);

}  // namespace hsurf
