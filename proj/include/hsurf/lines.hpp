#pragma once
// Lines lying on the surface: the chord condition, full enumeration at both
// rationality levels, and the per-point line star.

#include <vector>

#include "hsurf/surface.hpp"

namespace hsurf {

// True iff the line PQ lies on S; equivalently P lies on the tangent plane
// at Q. Throws NotOnSurface / EqualPoints.
bool chord_condition(const SurfaceCtx& S, const ProjPoint& p, const ProjPoint& q);

// Canonical, deduplicated, sorted. |quadratic| = (q^3+1)(q+1),
// |base| = q^3+q^2+q+1; the base list is the quadratic list filtered by
// base rationality.
std::vector<ProjLine> enumerate_lines(const SurfaceCtx& S, Level level);

// The q+1 lines of S through p. Throws NotOnSurface.
std::vector<ProjLine> lines_through(const SurfaceCtx& S, const ProjPoint& p);

}  // namespace hsurf
