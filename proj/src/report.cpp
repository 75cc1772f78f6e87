#include "hsurf/report.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

namespace hsurf {

namespace {

using nlohmann::json;

struct Claims {
  json list = json::array();
  bool all_ok = true;

  void add(const std::string& id, const std::string& desc, json expected, json actual) {
    const bool ok = expected == actual;
    all_ok = all_ok && ok;
    list.push_back({{"id", id},
                    {"description", desc},
                    {"expected", std::move(expected)},
                    {"actual", std::move(actual)},
                    {"ok", ok}});
  }
};

struct Formulas {
  uint64_t q;
  uint64_t points_quad() const { return (q * q * q + 1) * (q * q + 1); }
  uint64_t points_base() const { return q * q * q + q * q + q + 1; }
  uint64_t lines_quad() const { return (q * q * q + 1) * (q + 1); }
  uint64_t lines_base() const { return points_base(); }
  uint64_t sections() const { return q * q * q * q; }
  uint64_t fiber_lines() const { return q * (q * q + 1); }
  uint64_t stabilizer() const {
    return q * q * q * q * q * q * (q * q * q * q - 1) * (q * q - 1);
  }
  uint64_t orbit() const { return (q + 1) * (q * q * q + 1); }
};

const char* level_name(Level level) { return level == Level::base ? "base" : "quadratic"; }

json params_json(const RunConfig& cfg, const FieldCtx& F) {
  return {{"p", cfg.p}, {"a", cfg.a}, {"q", F.q()}, {"level", level_name(cfg.level)}};
}

json keys_json(const std::vector<ProjPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(key(p));
  return a;
}

json keys_json(const std::vector<ProjLine>& ls) {
  json a = json::array();
  for (const auto& l : ls) a.push_back(key(l));
  return a;
}

CommandResult finish(const char* command, const RunConfig& cfg, const FieldCtx& F, Claims&& c,
                     json data) {
  CommandResult r;
  r.command = command;
  r.all_ok = c.all_ok;
  r.verification = {{"params", params_json(cfg, F)},
                    {"claims", std::move(c.list)},
                    {"data", std::move(data)}};
  return r;
}

const ProjLine& select_line(const std::vector<ProjLine>& lines, const std::string& sel) {
  if (sel.empty()) return lines.front();
  if (sel.find(',') != std::string::npos) {
    LineKey k{};
    std::stringstream ss(sel);
    std::string tok;
    size_t i = 0;
    while (std::getline(ss, tok, ',') && i < 8) k[i++] = std::stoul(tok);
    if (i != 8) throw std::invalid_argument("--line key needs eight comma-separated indices");
    for (const auto& l : lines)
      if (key(l) == k) return l;
    throw std::invalid_argument("--line key does not match a line of the surface");
  }
  size_t idx = std::stoul(sel);
  if (idx >= lines.size()) throw std::invalid_argument("--line index out of range");
  return lines[idx];
}

void points_claims(Claims& c, const SurfaceCtx& S, Level level) {
  const Formulas f{S.field().q()};
  if (level == Level::quadratic) {
    c.add("points.count.quadratic", "surface has (q^3+1)(q^2+1) points over F_{q^2}",
          f.points_quad(), S.points(Level::quadratic).size());
    c.add("points.count.base", "surface has q^3+q^2+q+1 points over F_q", f.points_base(),
          S.points(Level::base).size());
    const ChartCounts& ch = S.chart_counts();
    const uint64_t q = f.q;
    c.add("points.chart.affine", "the x0 != 0 chart holds q^5 points", q * q * q * q * q,
          ch.affine);
    c.add("points.chart.boundary",
          "the x0 = 0 cases hold 1, q^2, q^2, q-1, (q-1)(q^2-1) points",
          json::array({1, q * q, q * q, q - 1, (q - 1) * (q * q - 1)}),
          json::array({ch.origin, ch.x2_zero, ch.x3_zero, ch.b_zero, ch.general}));
  } else {
    c.add("points.count.base", "surface has q^3+q^2+q+1 points over F_q", f.points_base(),
          S.points(Level::base).size());
  }
}

void lines_claims(Claims& c, const SurfaceCtx& S, const std::vector<ProjLine>& quad_lines,
                  Level level) {
  const Formulas f{S.field().q()};
  if (level == Level::quadratic) {
    c.add("lines.count.quadratic", "surface carries (q^3+1)(q+1) lines over F_{q^2}",
          f.lines_quad(), quad_lines.size());
    uint64_t base = 0;
    for (const auto& l : quad_lines)
      if (l.base_rational) ++base;
    c.add("lines.count.base", "surface carries q^3+q^2+q+1 lines over F_q", f.lines_base(),
          base);
  } else {
    c.add("lines.count.base", "surface carries q^3+q^2+q+1 lines over F_q", f.lines_base(),
          quad_lines.size());
  }
}

bool blocks_pairwise_meet_le1(const IncidenceStructure& inc) {
  std::vector<std::vector<uint32_t>> by_block(inc.b());
  for (const auto& [p, b] : inc.incidence) by_block[b].push_back(p);
  for (size_t i = 0; i < by_block.size(); ++i)
    for (size_t j = i + 1; j < by_block.size(); ++j) {
      size_t common = 0;
      auto ai = by_block[i].begin();
      auto bi = by_block[j].begin();
      while (ai != by_block[i].end() && bi != by_block[j].end()) {
        if (*ai < *bi)
          ++ai;
        else if (*bi < *ai)
          ++bi;
        else {
          ++common;
          ++ai;
          ++bi;
        }
      }
      if (common > 1) return false;
    }
  return true;
}

void config_claims(Claims& c, const SurfaceCtx& S, const IncidenceStructure& inc, Level level) {
  const Formulas f{S.field().q()};
  const uint64_t q = f.q;
  json expected_params, actual_params;
  if (level == Level::quadratic)
    expected_params = {{"v", f.points_quad()}, {"k", q + 1}, {"b", f.lines_quad()},
                       {"r", q * q + 1}};
  else
    expected_params = {{"v", f.points_base()}, {"k", q + 1}, {"b", f.lines_base()},
                       {"r", q + 1}};
  auto cp = configuration_params(inc);
  if (cp)
    actual_params = {{"v", cp->v}, {"k", cp->k}, {"b", cp->b}, {"r", cp->r}};
  else
    actual_params = "not a configuration";
  const std::string suffix = std::string(".") + level_name(level);
  c.add("config.params" + suffix, "incidence structure is a (v_k, b_r)-configuration",
        expected_params, actual_params);
  c.add("config.symmetric" + suffix, "the configuration is symmetric exactly at base level",
        level == Level::base, cp ? json(is_symmetric(inc)) : json("not a configuration"));
  c.add("config.design_t1" + suffix, "1-design with every point on q+1 blocks", true,
        verify_design(inc, 1, q + 1));
  c.add("config.blocks_meet" + suffix, "two distinct blocks share at most one point", true,
        blocks_pairwise_meet_le1(inc));
}

struct PencilExpectations {
  bool structure_ok = true;   // every rational member reducible with uniform shape
  bool general_ok = true;     // sampled quartic fibers: one singular point on the
                              // axis, q^4+1 points, irreducible
  uint64_t reducible = 0;
  uint64_t components = 0;
  uint64_t sections = 0;
  uint64_t fiber_lines = 0;
};

PencilExpectations inspect_report(const PencilReport& rep, uint64_t q) {
  PencilExpectations e;
  e.reducible = rep.summary.reducible_fibers;
  e.components = rep.summary.components_per_fiber;
  e.sections = rep.summary.section_count;
  e.fiber_lines = rep.summary.fiber_line_count;
  e.structure_ok = rep.summary.apex_bijection && rep.summary.partition_ok &&
                   rep.summary.reducible_fibers == rep.summary.members_quadratic;
  for (const auto& f : rep.fibers) {
    if (f.param.level == FiberLevel::quadratic) {
      if (!f.reducible() || f.point_count() != q * q * q + 1) e.structure_ok = false;
      continue;
    }
    if (f.reducible()) {
      e.general_ok = false;
      continue;
    }
    const auto& irr = std::get<IrreducibleFiber>(f.cls);
    const bool one_singular_on_axis =
        irr.singular_points.size() == 1 && f.axis_points.size() == 1 &&
        irr.singular_points[0] == f.axis_points[0];
    if (!one_singular_on_axis || f.point_count() != q * q * q * q + 1) e.general_ok = false;
  }
  return e;
}

}  // namespace

uint64_t unirational_on_surface_count(const FieldCtx& F4, uint64_t count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  uint64_t on = 0;
  for (uint64_t i = 0; i < count; ++i) {
    uint32_t s;
    do {
      s = static_cast<uint32_t>(rng() % F4.size());
    } while (F4.in_quadratic(s));
    const uint32_t y = static_cast<uint32_t>(rng() % F4.size());
    const ProjPoint p = unirational_point(F4, F4.elem(s), F4.elem(y));
    if (surface_form(p.x).is_zero()) ++on;
  }
  return on;
}

CommandResult run_points(const RunConfig& cfg) {
  FieldCtx F(cfg.p, cfg.a, FieldLevel::quadratic);
  SurfaceCtx S(F);
  Claims c;
  points_claims(c, S, cfg.level);
  const Formulas f{F.q()};
  const auto& pts = S.points(cfg.level);
  json data = {{"count", pts.size()},
               {"expected", cfg.level == Level::quadratic ? f.points_quad() : f.points_base()},
               {"ok", c.all_ok},
               {"points", keys_json(pts)}};
  return finish("points", cfg, F, std::move(c), std::move(data));
}

CommandResult run_lines(const RunConfig& cfg) {
  FieldCtx F(cfg.p, cfg.a, FieldLevel::quadratic);
  SurfaceCtx S(F);
  const auto lines = enumerate_lines(S, cfg.level);
  Claims c;
  if (cfg.level == Level::quadratic) {
    lines_claims(c, S, lines, Level::quadratic);
  } else {
    lines_claims(c, S, lines, Level::base);
  }
  json data = {{"count", lines.size()}, {"lines", keys_json(lines)}};
  return finish("lines", cfg, F, std::move(c), std::move(data));
}

CommandResult run_config_cmd(const RunConfig& cfg) {
  FieldCtx F(cfg.p, cfg.a, FieldLevel::quadratic);
  SurfaceCtx S(F);
  const auto lines = enumerate_lines(S, cfg.level);
  const auto inc = build_incidence(S.points(cfg.level), lines, cfg.level);
  Claims c;
  config_claims(c, S, inc, cfg.level);
  json data = {{"incidence", to_json(inc)},
               {"design_1", verify_design(inc, 1, F.q() + 1)}};
  if (auto cp = configuration_params(inc)) {
    data["v"] = cp->v;
    data["k"] = cp->k;
    data["b"] = cp->b;
    data["r"] = cp->r;
    data["symmetric"] = cp->v == cp->b;
  }
  return finish("config", cfg, F, std::move(c), std::move(data));
}

CommandResult run_pencil(const RunConfig& cfg) {
  FieldCtx F(cfg.p, cfg.a, FieldLevel::quadratic);
  SurfaceCtx S(F);
  const Formulas f{F.q()};
  const uint64_t q = f.q;
  const auto lines = enumerate_lines(S, Level::quadratic);
  const ProjLine& axis = select_line(lines, cfg.line_selector);

  QuarticEnv env;
  PencilOptions opt;
  opt.quartic_samples = cfg.sample;
  opt.all_quartic = cfg.all_quartic;
  if (cfg.pencil_quartic) {
    env = make_quartic_env(F);
    opt.quartic = &env;
  }
  const PencilReport rep = build_pencil(S, lines, axis, opt);
  const PencilExpectations got = inspect_report(rep, q);

  Claims c;
  c.add("pencil.singular_fibers", "the pencil has q^2+1 singular fibers", q * q + 1,
        got.reducible);
  c.add("pencil.structure",
        "every rational member splits into q lines concurrent at an axis point; apexes "
        "biject onto the axis and residuals partition the off-axis points",
        true, got.structure_ok);
  c.add("pencil.components_each", "each singular fiber has q line components", q,
        got.components);
  c.add("pencil.fiber_lines", "the singular fibers carry q(q^2+1) distinct lines",
        f.fiber_lines(), got.fiber_lines);
  c.add("pencil.sections", "the pencil has q^4 sections", f.sections(), got.sections);
  c.add("pencil.section_identity", "sections + fiber lines + axis exhaust the line count",
        f.lines_quad(), got.sections + got.fiber_lines + 1);
  c.add("pencil.sections_valid",
        "sections avoid the axis and meet each singular fiber once, on one component", true,
        sections_valid(rep));
  if (cfg.pencil_quartic) {
    const uint64_t available = q * q * q * q - q * q;
    const uint64_t expected_samples =
        cfg.all_quartic ? available : std::min<uint64_t>(cfg.sample, available);
    c.add("pencil.general_fibers",
          "sampled general fibers are irreducible rational curves: one singular point, on "
          "the axis, with q^4+1 points",
          json::array({expected_samples, true}),
          json::array({rep.summary.irreducible_sampled, got.general_ok}));
    c.add("pencil.unirational", "fixed-seed parameter pairs land on the surface", 1000,
          unirational_on_surface_count(*env.F4, 1000, kUnirationalSeed));
  }
  if (F.p() == 3 && F.a() == 1) {
    const QuasiEllipticSummary qe{lines.size(),        got.reducible, got.components,
                                  got.fiber_lines,     1,             got.sections};
    c.add("pencil.quasi_elliptic",
          "q = 3: 112 lines split as 10 fibers x 3 components + the axis + 81 sections",
          json::array({112, 10, 3, 30, 1, 81}),
          json::array({qe.total_lines, qe.singular_fibers, qe.components_each, qe.fiber_lines,
                       qe.cusp_locus, qe.sections}));
  }
  const json rep_json = to_json(rep);
  json data = {{"singular_fibers", got.reducible},
               {"components_each", got.components},
               {"sections", got.sections},
               {"summary", rep_json["summary"]},
               {"report", rep_json}};
  return finish("pencil", cfg, F, std::move(c), std::move(data));
}

namespace {

bool stab_member_structural(const HermitianCtx& H, const Mat4& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j)
      if (m.v[4 * i + j] != 0) return false;
  return is_unitary(H, m);
}

// Sampled product/inverse closure using the structural membership test, so
// no materialized set is needed.
bool sampled_closure_structural(const HermitianCtx& H, uint64_t samples, uint64_t seed) {
  const FieldCtx& F = H.field();
  const auto xs = anti_hermitian_enum(H);
  std::mt19937_64 rng(seed);
  const Mat2 zero{&F, {}};
  auto random_member = [&] {
    Mat2 a4{&F, {}};
    do {
      for (auto& e : a4.v) e = static_cast<uint32_t>(rng() % F.size());
    } while (det(a4).is_zero());
    const Mat2 a1 = inverse(conjugate_transpose(a4));
    const Mat2& x = xs[rng() % xs.size()];
    return from_blocks(a1, zero, x * a1, a4);
  };
  for (uint64_t i = 0; i < samples; ++i) {
    const Mat4 a = random_member(), b = random_member();
    if (!stab_member_structural(H, a * b)) return false;
    if (!stab_member_structural(H, inverse(a))) return false;
  }
  return true;
}

}  // namespace

CommandResult run_stabilizer(const RunConfig& cfg) {
  FieldCtx F(cfg.p, cfg.a, FieldLevel::quadratic);
  if (F.q() > 4) raise(errc::too_large, "stabilizer verification is capped at q = 4");
  HermitianCtx H(F);
  const Formulas f{F.q()};
  const uint64_t q = f.q;
  Claims c;

  const auto xs = anti_hermitian_enum(H);
  c.add("unitary.anti_hermitian", "q^4 matrices satisfy ct(X) = -X", q * q * q * q, xs.size());
  bool entries_ok = true;
  for (const auto& x : xs) {
    const FieldCtx& FF = *x.F;
    entries_ok = entries_ok && FF.frob_q(x.v[0]) == FF.neg(x.v[0]) &&
                 FF.frob_q(x.v[3]) == FF.neg(x.v[3]) && x.v[1] == FF.neg(FF.frob_q(x.v[2]));
  }
  c.add("unitary.anti_hermitian_entries", "entry conditions a = -a^q, d = -d^q, b = -c^q",
        true, entries_ok);

  json data;
  data["gu_order"] = gu_order(q);
  if (q <= 3) {
    const auto stab = stabilizer_enum(H);
    c.add("unitary.stabilizer_order", "the stabilizer of the reference line has order "
          "q^6(q^4-1)(q^2-1)", f.stabilizer(), stab.size());
    const bool closed = q == 2 ? group_closed_exhaustive(stab) && group_contains_inverses(stab)
                               : group_closed_sampled(stab, 10'000, 0xc105ed) &&
                                     sampled_closure_structural(H, 10'000, 0xc105ed);
    c.add("unitary.stabilizer_group", "the enumerated stabilizer is a group", true, closed);
    const auto orbit = line_orbit(H, default_generators(H));
    c.add("unitary.orbit", "the line orbit has (q+1)(q^3+1) elements", f.orbit(), orbit.size());
    c.add("unitary.orbit_stabilizer", "orbit times stabilizer equals |GU4(q)|", gu_order(q),
          static_cast<uint64_t>(orbit.size()) * stab.size());
    data["order"] = stab.size();
    data["group_closed"] = closed;
    data["orbit"] = orbit.size();
    data["consistent"] = static_cast<uint64_t>(orbit.size()) * stab.size() == gu_order(q);
  } else {
    const uint64_t count = stabilizer_count_streaming(H);  // TooLarge beyond q = 4
    c.add("unitary.stabilizer_order", "the stabilizer of the reference line has order "
          "q^6(q^4-1)(q^2-1)", f.stabilizer(), count);
    const bool closed = sampled_closure_structural(H, 10'000, 0xc105ed);
    c.add("unitary.stabilizer_group", "sampled products and inverses stay in the stabilizer",
          true, closed);
    data["order"] = count;
    data["group_closed"] = closed;
  }
  return finish("stabilizer", cfg, F, std::move(c), std::move(data));
}

CommandResult run_orbit(const RunConfig& cfg) {
  FieldCtx F(cfg.p, cfg.a, FieldLevel::quadratic);
  const Formulas f{F.q()};
  if (F.q() > 4) raise(errc::too_large, "orbit enumeration is capped at q = 4");
  HermitianCtx H(F);
  SurfaceCtx S(F);
  Claims c;

  const auto orbit = line_orbit(H, default_generators(H));
  c.add("orbit.size", "the default generators reach (q+1)(q^3+1) lines", f.orbit(),
        orbit.size());

  const ModelMap mm = hermitian_model_map(F);
  std::unordered_set<LineKey, KeyHash> transported;
  for (const auto& l : enumerate_lines(S, Level::quadratic)) transported.insert(key(mm.apply_line(l)));
  bool matches = transported.size() == orbit.size();
  for (const auto& l : orbit) matches = matches && transported.count(key(l)) > 0;
  c.add("orbit.matches_surface_lines",
        "the orbit equals the Hermitian-model image of the line set", true, matches);

  const Mat4 id = mat4_identity(F);
  c.add("orbit.trivial", "the identity alone fixes the reference line", 1,
        line_orbit(H, std::span<const Mat4>(&id, 1)).size());

  json data = {{"size", orbit.size()}, {"lines", keys_json(orbit)}};
  return finish("orbit", cfg, F, std::move(c), std::move(data));
}

CommandResult run_report_all(const RunConfig& cfg) {
  FieldCtx F(cfg.p, cfg.a, FieldLevel::quadratic);
  SurfaceCtx S(F);
  const Formulas f{F.q()};
  const uint64_t q = f.q;
  Claims c;

  points_claims(c, S, Level::quadratic);
  const auto lines = enumerate_lines(S, Level::quadratic);
  lines_claims(c, S, lines, Level::quadratic);

  std::vector<ProjLine> base_lines;
  for (const auto& l : lines)
    if (l.base_rational) base_lines.push_back(l);
  config_claims(c, S, build_incidence(S.points(Level::quadratic), lines, Level::quadratic),
                Level::quadratic);
  config_claims(c, S, build_incidence(S.points(Level::base), base_lines, Level::base),
                Level::base);

  QuarticEnv env = make_quartic_env(F);
  PencilOptions opt;
  opt.quartic_samples = cfg.sample;
  opt.all_quartic = cfg.all_quartic;
  opt.quartic = &env;

  if (q <= 3) {
    const auto reports = pencil_sweep(S, lines, opt, cfg.workers);
    bool uniform = true, structure = true, general = true;
    const PencilExpectations first = inspect_report(reports.front(), q);
    for (const auto& rep : reports) {
      const PencilExpectations e = inspect_report(rep, q);
      structure = structure && e.structure_ok;
      general = general && e.general_ok;
      uniform = uniform && e.reducible == first.reducible && e.components == first.components &&
                e.sections == first.sections && e.fiber_lines == first.fiber_lines;
    }
    c.add("pencil.singular_fibers", "every pencil has q^2+1 singular fibers", q * q + 1,
          first.reducible);
    c.add("pencil.components_each", "each singular fiber has q line components", q,
          first.components);
    c.add("pencil.sections", "every pencil has q^4 sections", f.sections(), first.sections);
    c.add("pencil.section_identity", "sections + fiber lines + axis exhaust the line count",
          f.lines_quad(), first.sections + first.fiber_lines + 1);
    c.add("pencil.structure_all_lines",
          "fiber structure holds for the pencil through every line", true, structure);
    c.add("pencil.general_fibers",
          "sampled general fibers of every pencil are irreducible with one singular point on "
          "the axis and q^4+1 points",
          true, general);
    c.add("pencil.choice_independent", "summary counts agree across all axis choices", true,
          uniform);
  } else {
    const PencilReport rep = build_pencil(S, lines, lines.front(), opt);
    const PencilExpectations got = inspect_report(rep, q);
    c.add("pencil.singular_fibers", "the pencil has q^2+1 singular fibers", q * q + 1,
          got.reducible);
    c.add("pencil.components_each", "each singular fiber has q line components", q,
          got.components);
    c.add("pencil.sections", "the pencil has q^4 sections", f.sections(), got.sections);
    c.add("pencil.section_identity", "sections + fiber lines + axis exhaust the line count",
          f.lines_quad(), got.sections + got.fiber_lines + 1);
    c.add("pencil.structure", "fiber structure holds for the default pencil", true,
          got.structure_ok && got.general_ok);
  }
  c.add("pencil.unirational", "fixed-seed parameter pairs land on the surface", 1000,
        unirational_on_surface_count(*env.F4, 1000, kUnirationalSeed));
  if (F.p() == 3 && F.a() == 1) {
    const PencilReport rep = build_pencil(S, lines, lines.front(), opt);
    const PencilExpectations got = inspect_report(rep, q);
    c.add("pencil.quasi_elliptic",
          "q = 3: 112 lines split as 10 fibers x 3 components + the axis + 81 sections",
          json::array({112, 10, 3, 30, 1, 81}),
          json::array({lines.size(), got.reducible, got.components, got.fiber_lines, 1,
                       got.sections}));
  }

  if (q <= 4) {
    HermitianCtx H(F);
    const auto xs = anti_hermitian_enum(H);
    c.add("unitary.anti_hermitian", "q^4 matrices satisfy ct(X) = -X", q * q * q * q,
          xs.size());
    if (q <= 3) {
      const auto stab = stabilizer_enum(H);
      c.add("unitary.stabilizer_order",
            "the stabilizer of the reference line has order q^6(q^4-1)(q^2-1)", f.stabilizer(),
            stab.size());
      const bool closed = q == 2
                              ? group_closed_exhaustive(stab) && group_contains_inverses(stab)
                              : group_closed_sampled(stab, 10'000, 0xc105ed) &&
                                    sampled_closure_structural(H, 10'000, 0xc105ed);
      c.add("unitary.stabilizer_group", "the enumerated stabilizer is a group", true, closed);
      const auto orbit = line_orbit(H, default_generators(H));
      c.add("unitary.orbit", "the line orbit has (q+1)(q^3+1) elements", f.orbit(),
            orbit.size());
      c.add("unitary.orbit_stabilizer", "orbit times stabilizer equals |GU4(q)|", gu_order(q),
            static_cast<uint64_t>(orbit.size()) * stab.size());
      const ModelMap mm = hermitian_model_map(F);
      std::unordered_set<LineKey, KeyHash> transported;
      for (const auto& l : lines) transported.insert(key(mm.apply_line(l)));
      bool matches = transported.size() == orbit.size();
      for (const auto& l : orbit) matches = matches && transported.count(key(l)) > 0;
      c.add("unitary.orbit_matches_lines",
            "the orbit equals the Hermitian-model image of the line set", true, matches);
    } else {
      c.add("unitary.stabilizer_order",
            "the stabilizer of the reference line has order q^6(q^4-1)(q^2-1)", f.stabilizer(),
            stabilizer_count_streaming(H));
    }
  }

  json data = {{"points", S.points(Level::quadratic).size()},
               {"lines", lines.size()},
               {"gu_order", q <= 11 ? json(gu_order(q)) : json(nullptr)}};
  return finish("report", cfg, F, std::move(c), std::move(data));
}

namespace {

std::string csv_quote(const std::string& s) {
  bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string compact(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

std::string render(const CommandResult& result, OutputFormat format, const json& meta) {
  if (format == OutputFormat::json) {
    json doc = {{"meta", meta}, {"verification", result.verification}};
    return doc.dump(2) + "\n";
  }
  const json& claims = result.verification.at("claims");
  std::string out;
  if (format == OutputFormat::csv) {
    out = "id,description,expected,actual,ok\r\n";
    for (const auto& cl : claims) {
      out += csv_quote(cl.at("id").get<std::string>()) + ",";
      out += csv_quote(cl.at("description").get<std::string>()) + ",";
      out += csv_quote(compact(cl.at("expected"))) + ",";
      out += csv_quote(compact(cl.at("actual"))) + ",";
      out += cl.at("ok").get<bool>() ? "true" : "false";
      out += "\r\n";
    }
    return out;
  }
  out = "| claim | expected | actual | ok |\n|---|---|---|---|\n";
  for (const auto& cl : claims) {
    out += "| " + cl.at("id").get<std::string>() + " | " + compact(cl.at("expected")) + " | " +
           compact(cl.at("actual")) + " | " + (cl.at("ok").get<bool>() ? "yes" : "no") + " |\n";
  }
  return out;
}

}  // namespace hsurf
