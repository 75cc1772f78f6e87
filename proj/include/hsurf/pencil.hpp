#pragma once
// The Lefschetz pencil through a line of the surface.
//
// For an axis line with canonical basis rows a, b and a pencil member H
// containing it, pick c in H off the axis; then in plane coordinates
// x = al*a + be*b + ga*c the section S∩H factors as ga * R with
//
//   R(al, be, ga) = ga^{q-1}(al*T(a,c) + be*T(b,c))
//                 + al^q*T(c,a) + be^q*T(c,b) + ga^q*T(c,c),
//
// the degree-q residual curve (the fiber). Everything below is pointwise
// work on R: fiber point sets, reducibility into q concurrent lines, and
// gradient-degenerate (singular) points.

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hsurf/lines.hpp"

namespace hsurf {

enum class FiberLevel { quadratic, quartic };

struct FiberParam {
  FiberLevel level;
  FieldElem lam, mu;  // elements of the member's field context
};

struct ReducibleFiber {
  std::vector<ProjLine> components;  // q lines, sorted by key
  ProjPoint apex;                    // their common point, on the axis
};

struct IrreducibleFiber {
  std::vector<ProjPoint> singular_points;  // gradient-degenerate points of R
};

struct PencilFiber {
  FiberParam param;
  Hyperplane hyperplane;               // in the param's field context
  std::vector<ProjPoint> residual;     // fiber points off the axis, sorted
  std::vector<ProjPoint> axis_points;  // fiber points on the axis, sorted
  std::variant<ReducibleFiber, IrreducibleFiber> cls;

  bool reducible() const { return std::holds_alternative<ReducibleFiber>(cls); }
  size_t point_count() const { return residual.size() + axis_points.size(); }
};

struct PencilSummary {
  uint64_t members_quadratic = 0;
  uint64_t reducible_fibers = 0;
  uint64_t irreducible_sampled = 0;
  uint64_t components_per_fiber = 0;  // 0 when not uniform
  uint64_t fiber_line_count = 0;      // distinct component lines
  uint64_t section_count = 0;
  bool apex_bijection = false;  // apex map hits the axis points exactly once each
  bool partition_ok = false;    // residual sets partition S minus the axis
};

struct PencilReport {
  ProjLine axis;
  std::vector<PencilFiber> fibers;  // quadratic members first, then quartic samples
  std::vector<ProjLine> sections;   // sorted
  PencilSummary summary;
};

// Owns the degree-4a context used for general-fiber checks.
struct QuarticEnv {
  std::unique_ptr<FieldCtx> F4;
  Embedding emb;  // quadratic -> quartic
};
QuarticEnv make_quartic_env(const FieldCtx& quad);

struct PencilOptions {
  uint32_t quartic_samples = 3;        // least base parameters outside F_{q^2}
  bool all_quartic = false;
  const QuarticEnv* quartic = nullptr;  // null skips general-fiber checks
};

// Fiber classification over F_{q^2}. Throws HyperplaneMissesLine,
// LineNotOnSurface.
PencilFiber classify_fiber(const SurfaceCtx& S, const ProjLine& axis, const Hyperplane& h);
// Same over F_{q^4}; the hyperplane lives in the quartic context.
PencilFiber classify_fiber_quartic(const SurfaceCtx& S, const ProjLine& axis,
                                   const QuarticEnv& env, const Hyperplane& h4);

// One fiber per member of the pencil through the axis over F_{q^2}, plus the
// configured sample of members over F_{q^4} \ F_{q^2}. all_lines is the full
// quadratic-level line list of S. Throws LineNotOnSurface.
PencilReport build_pencil(const SurfaceCtx& S, std::span<const ProjLine> all_lines,
                          const ProjLine& axis, const PencilOptions& opt = {});

std::vector<const PencilFiber*> singular_fibers(const PencilReport& report);

// One report per axis, in the order given; independent builds are spread
// over the worker threads, so the result does not depend on worker count.
std::vector<PencilReport> pencil_sweep(const SurfaceCtx& S, std::span<const ProjLine> all_lines,
                                       const PencilOptions& opt, unsigned workers);

// Sections are disjoint from the axis and meet every singular fiber in one
// point on exactly one component.
bool sections_valid(const PencilReport& report);

// The point (x0, 1, s^q, x3) with x3 = (y^q - y)/(s - s^{q^2}) and
// x0 = y + s*x3, on the surface for every valid parameter pair.
// Throws DegenerateParameter when s lies in F_{q^2}.
ProjPoint unirational_point(const FieldCtx& F4, FieldElem s, FieldElem y);

struct QuasiEllipticSummary {
  uint64_t total_lines = 0;
  uint64_t singular_fibers = 0;
  uint64_t components_each = 0;
  uint64_t fiber_lines = 0;
  uint64_t cusp_locus = 1;  // the axis itself
  uint64_t sections = 0;
};

// Characteristic-3 summary (p = 3, a = 1); throws WrongCharacteristic.
QuasiEllipticSummary quasi_elliptic_report(const SurfaceCtx& S,
                                           std::span<const ProjLine> all_lines,
                                           const ProjLine& axis,
                                           const PencilOptions& opt = {});

// Canonical document: fibers ordered by base parameter, components by key.
nlohmann::json to_json(const PencilReport& report);

}  // namespace hsurf
