#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "hsurf/lines.hpp"

using namespace hsurf;

namespace {

ProjPoint pt(const FieldCtx& F, uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
  return normalize_point({F.elem(a), F.elem(b), F.elem(c), F.elem(d)});
}

bool line_on_surface(const SurfaceCtx& S, const ProjLine& l) {
  for (const auto& p : points_on_line(l, Level::quadratic))
    if (!S.on_surface(p)) return false;
  return true;
}

}  // namespace

TEST_CASE("chord condition examples") {
  FieldCtx F(2, 1, FieldLevel::quadratic);
  SurfaceCtx S(F);
  // Both sides vanish; the connecting line x1 = x2 = 0 lies on S.
  CHECK(chord_condition(S, pt(F, 1, 0, 0, 0), pt(F, 0, 0, 0, 1)));
  CHECK(line_on_surface(S, line_through(pt(F, 1, 0, 0, 0), pt(F, 0, 0, 0, 1))));
  // LHS = -1, RHS = 0; the connecting line x2 = x3 = 0 leaves S.
  CHECK_FALSE(chord_condition(S, pt(F, 0, 1, 0, 0), pt(F, 1, 0, 0, 0)));
  CHECK_FALSE(line_on_surface(S, line_through(pt(F, 0, 1, 0, 0), pt(F, 1, 0, 0, 0))));

  CHECK_THROWS_WITH_AS(chord_condition(S, pt(F, 1, F.gen().v, 0, 0), pt(F, 1, 0, 0, 0)),
                       doctest::Contains("NotOnSurface"), Error);
  CHECK_THROWS_WITH_AS(chord_condition(S, pt(F, 1, 0, 0, 0), pt(F, 1, 0, 0, 0)),
                       doctest::Contains("EqualPoints"), Error);
}

TEST_CASE("chord condition is equivalent to line containment and tangency") {
  FieldCtx F(2, 1, FieldLevel::quadratic);
  SurfaceCtx S(F);
  const auto& pts = S.points(Level::quadratic);
  REQUIRE(pts.size() == 45);
  uint64_t pairs = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      ++pairs;
      const bool chord = chord_condition(S, pts[i], pts[j]);
      CHECK(chord == line_on_surface(S, line_through(pts[i], pts[j])));
      CHECK(chord == contains(S.tangent_plane(pts[j]), pts[i]));
    }
  CHECK(pairs == 990);
}

TEST_CASE("line enumeration counts") {
  struct Row {
    uint32_t p, a;
    uint64_t quad, base;
  };
  for (Row row : {Row{2, 1, 27, 15}, Row{3, 1, 112, 40}}) {
    FieldCtx F(row.p, row.a, FieldLevel::quadratic);
    SurfaceCtx S(F);
    auto quad = enumerate_lines(S, Level::quadratic);
    CHECK(quad.size() == row.quad);
    CHECK(std::is_sorted(quad.begin(), quad.end()));
    for (const auto& l : quad) CHECK(line_on_surface(S, l));

    auto base = enumerate_lines(S, Level::base);
    CHECK(base.size() == row.base);
    // The base list is the quadratic list filtered by rationality.
    std::vector<ProjLine> filtered;
    for (const auto& l : quad)
      if (is_base_rational(l)) filtered.push_back(l);
    CHECK(base == filtered);
  }
}

TEST_CASE("completeness: every chord pair spans an enumerated line and conversely") {
  FieldCtx F(2, 1, FieldLevel::quadratic);
  SurfaceCtx S(F);
  auto lines = enumerate_lines(S, Level::quadratic);
  std::set<LineKey> enumerated;
  for (const auto& l : lines) enumerated.insert(key(l));

  const auto& pts = S.points(Level::quadratic);
  std::set<LineKey> spanned;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (chord_condition(S, pts[i], pts[j]))
        spanned.insert(key(line_through(pts[i], pts[j])));
  CHECK(spanned == enumerated);
}

TEST_CASE("lines through a point") {
  for (auto [p, a] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}}) {
    FieldCtx F(p, a, FieldLevel::quadratic);
    SurfaceCtx S(F);
    const uint64_t q = F.q();
    auto lines = enumerate_lines(S, Level::quadratic);

    // Incidence filtering agrees with the tangent-cone star at every point,
    // and the double count Sum_P deg(P) = (q^2+1) * |lines| comes out.
    uint64_t total_degree = 0;
    for (const auto& pp : S.points(Level::quadratic)) {
      auto star = lines_through(S, pp);
      CHECK(star.size() == q + 1);
      std::vector<ProjLine> by_incidence;
      for (const auto& l : lines)
        if (contains(l, pp)) by_incidence.push_back(l);
      CHECK(star == by_incidence);
      total_degree += star.size();
    }
    CHECK(total_degree == (q * q + 1) * lines.size());
  }
}
