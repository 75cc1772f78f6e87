#include "hsurf/pencil.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_set>

namespace hsurf {

namespace {

using Row = std::array<FieldElem, 4>;

FieldElem dot(const Hyperplane& h, const Row& r) {
  return h.c[0] * r[0] + h.c[1] * r[1] + h.c[2] * r[2] + h.c[3] * r[3];
}

// Plane coordinates for one pencil member: a, b span the axis, c completes.
struct FiberChart {
  const FieldCtx* F;
  uint64_t q;
  Row a, b, c;
  FieldElem t_ac, t_bc, t_ca, t_cb, t_cc;

  Row to_p3(FieldElem al, FieldElem be, FieldElem ga) const {
    Row x;
    for (int i = 0; i < 4; ++i) x[i] = al * a[i] + be * b[i] + ga * c[i];
    return x;
  }
  FieldElem residual(FieldElem al, FieldElem be, FieldElem ga) const {
    FieldElem lin = al * t_ac + be * t_bc;
    return pow(ga, q - 1) * lin + frob_q(al) * t_ca + frob_q(be) * t_cb + pow(ga, q) * t_cc;
  }
  std::array<FieldElem, 3> gradient(FieldElem al, FieldElem be, FieldElem ga) const {
    FieldElem gq1 = pow(ga, q - 1);
    FieldElem lin = al * t_ac + be * t_bc;
    return {gq1 * t_ac, gq1 * t_bc, -(pow(ga, q - 2) * lin)};
  }
};

FiberChart make_chart(const ProjLine& axis, const Hyperplane& h) {
  const FieldCtx& F = axis.field();
  FiberChart ch;
  ch.F = &F;
  ch.q = F.q();
  for (int i = 0; i < 4; ++i) {
    ch.a[i] = axis.basis[i];
    ch.b[i] = axis.basis[4 + i];
  }
  if (!dot(h, ch.a).is_zero() || !dot(h, ch.b).is_zero())
    raise(errc::hyperplane_misses_line, "pencil member must contain the axis");
  if (!pair_form(ch.a, ch.a).is_zero() || !pair_form(ch.b, ch.b).is_zero() ||
      !pair_form(ch.a, ch.b).is_zero() || !pair_form(ch.b, ch.a).is_zero())
    raise(errc::line_not_on_surface, "axis must lie on the surface");

  // Free columns of the axis RREF; c = h[f1]*e_f0 - h[f0]*e_f1 lies in h,
  // off the axis.
  int p0 = 0, p1 = 0;
  while (ch.a[p0].is_zero()) ++p0;
  while (ch.b[p1].is_zero()) ++p1;
  int f[2], nf = 0;
  for (int i = 0; i < 4; ++i)
    if (i != p0 && i != p1) f[nf++] = i;
  check_internal(!h.c[f[0]].is_zero() || !h.c[f[1]].is_zero(),
                 "member through the axis cannot vanish on both free columns");
  for (int i = 0; i < 4; ++i) ch.c[i] = F.zero();
  ch.c[f[0]] = h.c[f[1]];
  ch.c[f[1]] = -h.c[f[0]];

  ch.t_ac = pair_form(ch.a, ch.c);
  ch.t_bc = pair_form(ch.b, ch.c);
  ch.t_ca = pair_form(ch.c, ch.a);
  ch.t_cb = pair_form(ch.c, ch.b);
  ch.t_cc = pair_form(ch.c, ch.c);
  return ch;
}

struct PlanePoint {
  FieldElem u0, u1, u2;
  ProjPoint p;
};

// Multiplicity of r as a root of the polynomial with coefficients c (low
// degree first): repeated synthetic division by (x - r).
uint64_t root_multiplicity(std::vector<FieldElem> c, FieldElem r) {
  uint64_t m = 0;
  while (c.size() > 1) {
    std::vector<FieldElem> quot(c.size() - 1);
    FieldElem acc = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
      quot[i] = acc;
      acc = c[i] + r * acc;
    }
    if (!acc.is_zero()) break;  // remainder
    ++m;
    c = std::move(quot);
  }
  return m;
}

// Contact multiplicity of the fiber with the axis at the axis point
// (al0 : be0 : 0): the root multiplicity of rho = R(al, be, 0)
// = t_ca*al^q + t_cb*be^q, a q-th power of a linear form, so a genuine
// axis contact always has multiplicity >= 2. These contacts are where the
// purely inseparable fibration fails to be smooth: for q >= 3 they carry
// the cusp of the residual curve (the gradient vanishes there too); at
// q = 2 the residual is a smooth conic tangent to the axis and the contact
// is the trace of the generic fiber's non-smooth point.
uint64_t axis_contact_multiplicity(const FieldCtx& F, uint64_t q, FieldElem t_ca,
                                   FieldElem t_cb, FieldElem al0, FieldElem be0) {
  std::vector<FieldElem> c(q + 1, F.zero());
  if (!be0.is_zero()) {
    c[q] = t_ca;
    c[0] = t_cb;
    return root_multiplicity(std::move(c), al0 / be0);
  }
  c[q] = t_cb;
  c[0] = t_ca;
  return root_multiplicity(std::move(c), F.zero());
}

// All full-field points of the line inside the key set.
bool line_inside(const ProjLine& l, const std::unordered_set<PointKey, KeyHash>& keys) {
  const FieldCtx& F = l.field();
  Row r0{l.basis[0], l.basis[1], l.basis[2], l.basis[3]};
  Row r1{l.basis[4], l.basis[5], l.basis[6], l.basis[7]};
  for (uint32_t t = 0; t < F.size(); ++t) {
    Row x;
    FieldElem te = F.elem(t);
    for (int i = 0; i < 4; ++i) x[i] = r0[i] + te * r1[i];
    if (keys.count(key(normalize_point(x))) == 0) return false;
  }
  return keys.count(key(normalize_point(r1))) > 0;
}

std::unordered_set<PointKey, KeyHash> line_keys(const ProjLine& l) {
  std::unordered_set<PointKey, KeyHash> ks;
  for (const auto& p : points_on_line(l, Level::quadratic)) ks.insert(key(p));
  return ks;
}

// cone != nullptr enables the tangent-plane shortcut (quadratic level only).
PencilFiber classify_impl(const SurfaceCtx* cone, const ProjLine& axis, const Hyperplane& h) {
  const FieldCtx& W = axis.field();
  const FiberChart ch = make_chart(axis, h);

  std::vector<PlanePoint> fiber;
  std::unordered_set<PointKey, KeyHash> fiber_keys;
  for_each_p2(W, [&](FieldElem u0, FieldElem u1, FieldElem u2) {
    FieldElem r = ch.residual(u0, u1, u2);
    Row x = ch.to_p3(u0, u1, u2);
    check_internal(surface_form(x) == u2 * r, "plane section must factor as ga * residual");
    if (!r.is_zero()) return;
    PlanePoint pp{u0, u1, u2, normalize_point(x)};
    fiber_keys.insert(key(pp.p));
    fiber.push_back(std::move(pp));
  });

  PencilFiber out;
  out.hyperplane = h;
  for (const auto& pp : fiber)
    (pp.u2.is_zero() ? out.axis_points : out.residual).push_back(pp.p);
  std::sort(out.residual.begin(), out.residual.end());
  std::sort(out.axis_points.begin(), out.axis_points.end());

  const uint64_t q = W.q();
  const LineKey axis_key = key(axis);

  auto finish_reducible = [&](std::vector<ProjLine> comps, const ProjPoint& apex) -> bool {
    if (comps.size() != q) return false;
    if (out.axis_points.size() != 1 || !(out.axis_points[0] == apex)) return false;
    if (!contains(axis, apex)) return false;
    std::unordered_set<PointKey, KeyHash> covered;
    for (const auto& l : comps) {
      if (!contains(l, apex)) return false;
      for (const auto& p : points_on_line(l, Level::quadratic)) {
        if (fiber_keys.count(key(p)) == 0) return false;
        covered.insert(key(p));
      }
    }
    if (covered.size() != fiber_keys.size()) return false;
    std::sort(comps.begin(), comps.end());
    out.cls = ReducibleFiber{std::move(comps), apex};
    return true;
  };

  if (cone) {
    // Canonical structure of a rational member: it is the tangent plane at a
    // unique axis point, and the fiber is the tangent cone there minus the
    // axis.
    for (const auto& p : points_on_line(axis, Level::quadratic)) {
      if (!(cone->tangent_plane(p) == h)) continue;
      std::vector<ProjLine> comps;
      bool saw_axis = false;
      for (auto& l : cone->tangent_cone_lines(p)) {
        if (key(l) == axis_key)
          saw_axis = true;
        else
          comps.push_back(std::move(l));
      }
      check_internal(saw_axis, "axis must be a tangent-cone line at its own points");
      if (finish_reducible(std::move(comps), p)) return out;
      break;
    }
  }

  // Generic route: collect full lines inside the fiber point set.
  std::map<LineKey, ProjLine> comps;
  std::unordered_set<LineKey, KeyHash> tested;
  for (size_t i = 0; i < fiber.size(); ++i)
    for (size_t j = i + 1; j < fiber.size(); ++j) {
      ProjLine l = line_through(fiber[i].p, fiber[j].p);
      if (!tested.insert(key(l)).second) continue;
      if (line_inside(l, fiber_keys)) comps.emplace(key(l), l);
    }

  if (!comps.empty()) {
    check_internal(comps.size() >= 2, "a split fiber has at least two line components");
    std::vector<ProjLine> cs;
    cs.reserve(comps.size());
    for (auto& [k, l] : comps) cs.push_back(l);
    // Common point of the components.
    const ProjPoint* apex = nullptr;
    const auto ks1 = line_keys(cs[1]);
    const auto pts0 = points_on_line(cs[0], Level::quadratic);
    for (const auto& p : pts0)
      if (ks1.count(key(p))) {
        apex = &p;
        break;
      }
    check_internal(apex != nullptr, "fiber components must meet");
    check_internal(finish_reducible(std::move(cs), *apex), "split fiber must be q concurrent lines");
    return out;
  }

  // Singular points of the fiber: gradient-degenerate points of the
  // residual form on the curve, together with axis contacts of
  // multiplicity >= 2 (the non-smooth locus of the inseparable fibration).
  IrreducibleFiber irr;
  for (const auto& pp : fiber) {
    const auto g = ch.gradient(pp.u0, pp.u1, pp.u2);
    bool singular = g[0].is_zero() && g[1].is_zero() && g[2].is_zero();
    if (!singular && pp.u2.is_zero())
      singular = axis_contact_multiplicity(W, q, ch.t_ca, ch.t_cb, pp.u0, pp.u1) >= 2;
    if (singular) irr.singular_points.push_back(pp.p);
  }
  std::sort(irr.singular_points.begin(), irr.singular_points.end());
  out.cls = std::move(irr);
  return out;
}

}  // namespace

PencilFiber classify_fiber(const SurfaceCtx& S, const ProjLine& axis, const Hyperplane& h) {
  check_internal(&axis.field() == &S.field(), "axis must live in the surface field");
  PencilFiber f = classify_impl(&S, axis, h);
  f.param = {FiberLevel::quadratic, S.field().zero(), S.field().zero()};
  return f;
}

PencilFiber classify_fiber_quartic(const SurfaceCtx& S, const ProjLine& axis,
                                   const QuarticEnv& env, const Hyperplane& h4) {
  check_internal(&axis.field() == &S.field(), "axis must live in the surface field");
  ProjLine axis4 = embed_line(env.emb, axis);
  PencilFiber f = classify_impl(nullptr, axis4, h4);
  f.param = {FiberLevel::quartic, env.F4->zero(), env.F4->zero()};
  return f;
}

QuarticEnv make_quartic_env(const FieldCtx& quad) {
  check_internal(quad.level() == FieldLevel::quadratic, "quartic env extends a quadratic context");
  auto F4 = std::make_unique<FieldCtx>(quad.p(), quad.a(), FieldLevel::quartic);
  Embedding emb = make_embedding(quad, *F4);
  return {std::move(F4), std::move(emb)};
}

PencilReport build_pencil(const SurfaceCtx& S, std::span<const ProjLine> all_lines,
                          const ProjLine& axis, const PencilOptions& opt) {
  const FieldCtx& F = S.field();
  check_internal(&axis.field() == &F, "axis must live in the surface field");
  {
    Row a{axis.basis[0], axis.basis[1], axis.basis[2], axis.basis[3]};
    Row b{axis.basis[4], axis.basis[5], axis.basis[6], axis.basis[7]};
    if (!pair_form(a, a).is_zero() || !pair_form(b, b).is_zero() ||
        !pair_form(a, b).is_zero() || !pair_form(b, a).is_zero())
      raise(errc::line_not_on_surface, "pencil axis must lie on the surface");
  }

  PencilReport rep;
  rep.axis = axis;
  const LinePencil pencil = pencil_through_line(axis);
  for (const auto& t : pencil.params()) {
    PencilFiber f = classify_impl(&S, axis, pencil.member(t));
    f.param = {FiberLevel::quadratic, t.lam, t.mu};
    rep.fibers.push_back(std::move(f));
  }

  if (opt.quartic && (opt.quartic_samples > 0 || opt.all_quartic)) {
    const QuarticEnv& env = *opt.quartic;
    const FieldCtx& F4 = *env.F4;
    ProjLine axis4 = embed_line(env.emb, axis);
    LinePencil pencil4;
    for (int r = 0; r < 2; ++r)
      for (int i = 0; i < 4; ++i) pencil4.rows[r][i] = env.emb(pencil.rows[r][i]);
    uint64_t taken = 0;
    for (uint32_t t4 = 0; t4 < F4.size(); ++t4) {
      if (F4.in_quadratic(t4)) continue;  // already covered by an F_{q^2} member
      PencilFiber f = classify_impl(nullptr, axis4, pencil4.member(F4.one(), F4.elem(t4)));
      f.param = {FiberLevel::quartic, F4.one(), F4.elem(t4)};
      rep.fibers.push_back(std::move(f));
      if (!opt.all_quartic && ++taken >= opt.quartic_samples) break;
    }
  }

  // Sections: lines that are neither the axis nor components of rational
  // members.
  std::unordered_set<LineKey, KeyHash> used;
  used.insert(key(axis));
  for (const auto& f : rep.fibers) {
    if (f.param.level != FiberLevel::quadratic || !f.reducible()) continue;
    for (const auto& c : std::get<ReducibleFiber>(f.cls).components) used.insert(key(c));
  }
  for (const auto& l : all_lines)
    if (used.count(key(l)) == 0) rep.sections.push_back(l);

  // Summary.
  PencilSummary& s = rep.summary;
  std::unordered_set<PointKey, KeyHash> apex_keys;
  std::unordered_set<PointKey, KeyHash> residual_keys;
  uint64_t residual_total = 0;
  bool comps_uniform = true;
  uint64_t comps_each = 0;
  for (const auto& f : rep.fibers) {
    if (f.param.level != FiberLevel::quadratic) {
      if (!f.reducible()) ++s.irreducible_sampled;
      continue;
    }
    ++s.members_quadratic;
    residual_total += f.residual.size();
    for (const auto& p : f.residual) residual_keys.insert(key(p));
    if (f.reducible()) {
      ++s.reducible_fibers;
      const auto& red = std::get<ReducibleFiber>(f.cls);
      apex_keys.insert(key(red.apex));
      if (comps_each == 0)
        comps_each = red.components.size();
      else if (comps_each != red.components.size())
        comps_uniform = false;
    }
  }
  s.components_per_fiber = comps_uniform ? comps_each : 0;
  s.fiber_line_count = used.size() - 1;
  s.section_count = rep.sections.size();
  const uint64_t axis_pts = F.size() + 1;
  s.apex_bijection = s.reducible_fibers == axis_pts && apex_keys.size() == axis_pts;
  s.partition_ok = residual_keys.size() == residual_total &&
                   residual_total == S.points(Level::quadratic).size() - axis_pts;
  return rep;
}

std::vector<const PencilFiber*> singular_fibers(const PencilReport& report) {
  std::vector<const PencilFiber*> out;
  for (const auto& f : report.fibers)
    if (f.reducible()) out.push_back(&f);
  return out;
}

std::vector<PencilReport> pencil_sweep(const SurfaceCtx& S, std::span<const ProjLine> all_lines,
                                       const PencilOptions& opt, unsigned workers) {
  std::vector<PencilReport> out(all_lines.size());
  if (workers < 2 || all_lines.size() < 2) {
    for (size_t i = 0; i < all_lines.size(); ++i)
      out[i] = build_pencil(S, all_lines, all_lines[i], opt);
    return out;
  }
  workers = std::min<size_t>(workers, all_lines.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < all_lines.size(); i += workers)
        out[i] = build_pencil(S, all_lines, all_lines[i], opt);
    });
  for (auto& t : pool) t.join();
  return out;
}

bool sections_valid(const PencilReport& report) {
  for (const auto& sec : report.sections) {
    const auto pts = points_on_line(sec, Level::quadratic);
    for (const auto& p : pts)
      if (contains(report.axis, p)) return false;
    for (const auto& f : report.fibers) {
      if (f.param.level != FiberLevel::quadratic || !f.reducible()) continue;
      const ProjPoint* hit = nullptr;
      for (const auto& p : pts)
        if (contains(f.hyperplane, p)) {
          if (hit) return false;  // a line meets a hyperplane off it exactly once
          hit = &p;
        }
      if (!hit) return false;
      uint32_t on_components = 0;
      for (const auto& c : std::get<ReducibleFiber>(f.cls).components)
        if (contains(c, *hit)) ++on_components;
      if (on_components != 1) return false;
    }
  }
  return true;
}

ProjPoint unirational_point(const FieldCtx& F4, FieldElem s, FieldElem y) {
  check_internal(F4.level() == FieldLevel::quartic && s.F == &F4 && y.F == &F4,
                 "unirational parametrization lives in the quartic context");
  if (F4.in_quadratic(s.v))
    raise(errc::degenerate_parameter, "parameter s must lie outside F_{q^2}");
  FieldElem sq2 = frob_q(frob_q(s));
  FieldElem x3 = (frob_q(y) - y) / (s - sq2);
  FieldElem x0 = y + s * x3;
  return normalize_point({x0, F4.one(), frob_q(s), x3});
}

QuasiEllipticSummary quasi_elliptic_report(const SurfaceCtx& S,
                                           std::span<const ProjLine> all_lines,
                                           const ProjLine& axis, const PencilOptions& opt) {
  if (S.field().p() != 3 || S.field().a() != 1)
    raise(errc::wrong_characteristic, "quasi-elliptic summary is the q = 3 case");
  PencilReport rep = build_pencil(S, all_lines, axis, opt);
  QuasiEllipticSummary qe;
  qe.total_lines = all_lines.size();
  qe.singular_fibers = rep.summary.reducible_fibers;
  qe.components_each = rep.summary.components_per_fiber;
  qe.fiber_lines = rep.summary.fiber_line_count;
  qe.sections = rep.summary.section_count;
  return qe;
}

namespace {

nlohmann::json point_json(const ProjPoint& p) { return key(p); }
nlohmann::json line_json(const ProjLine& l) { return key(l); }

}  // namespace

nlohmann::json to_json(const PencilReport& report) {
  nlohmann::json j;
  j["axis"] = line_json(report.axis);
  auto fibers = nlohmann::json::array();
  for (const auto& f : report.fibers) {
    nlohmann::json fj;
    fj["param"] = {{"level", f.param.level == FiberLevel::quadratic ? "quadratic" : "quartic"},
                   {"lam", f.param.lam.v},
                   {"mu", f.param.mu.v}};
    fj["hyperplane"] = key(f.hyperplane);
    fj["residual_count"] = f.residual.size();
    auto ax = nlohmann::json::array();
    for (const auto& p : f.axis_points) ax.push_back(point_json(p));
    fj["axis_points"] = std::move(ax);
    if (f.reducible()) {
      const auto& red = std::get<ReducibleFiber>(f.cls);
      fj["kind"] = "reducible";
      fj["apex"] = point_json(red.apex);
      auto cs = nlohmann::json::array();
      for (const auto& c : red.components) cs.push_back(line_json(c));
      fj["components"] = std::move(cs);
    } else {
      const auto& irr = std::get<IrreducibleFiber>(f.cls);
      fj["kind"] = "irreducible";
      auto sp = nlohmann::json::array();
      for (const auto& p : irr.singular_points) sp.push_back(point_json(p));
      fj["singular_points"] = std::move(sp);
    }
    fibers.push_back(std::move(fj));
  }
  j["fibers"] = std::move(fibers);
  auto secs = nlohmann::json::array();
  for (const auto& l : report.sections) secs.push_back(line_json(l));
  j["sections"] = std::move(secs);
  j["summary"] = {{"members_quadratic", report.summary.members_quadratic},
                  {"reducible_fibers", report.summary.reducible_fibers},
                  {"irreducible_sampled", report.summary.irreducible_sampled},
                  {"components_per_fiber", report.summary.components_per_fiber},
                  {"fiber_line_count", report.summary.fiber_line_count},
                  {"section_count", report.summary.section_count},
                  {"apex_bijection", report.summary.apex_bijection},
                  {"partition_ok", report.summary.partition_ok}};
  return j;
}

}  // namespace hsurf
