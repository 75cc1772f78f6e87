#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsurf/config.hpp"

using namespace hsurf;

namespace {

struct Built {
  std::unique_ptr<FieldCtx> F;
  std::unique_ptr<SurfaceCtx> S;
  std::vector<ProjLine> lines;
  IncidenceStructure inc;
};

Built build(uint32_t p, uint32_t a, Level level) {
  Built b;
  b.F = std::make_unique<FieldCtx>(p, a, FieldLevel::quadratic);
  b.S = std::make_unique<SurfaceCtx>(*b.F);
  b.lines = enumerate_lines(*b.S, level);
  b.inc = build_incidence(b.S->points(level), b.lines, level);
  return b;
}

}  // namespace

TEST_CASE("incidence structure sizes") {
  auto b2 = build(2, 1, Level::quadratic);
  CHECK(b2.inc.v() == 45);
  CHECK(b2.inc.b() == 27);
  CHECK(b2.inc.incidence.size() == 135);  // 45*3 = 27*5

  auto b3 = build(3, 1, Level::quadratic);
  CHECK(b3.inc.v() == 280);
  CHECK(b3.inc.b() == 112);
  CHECK(b3.inc.incidence.size() == 1120);  // 280*4 = 112*10

  auto base2 = build(2, 1, Level::base);
  CHECK(base2.inc.v() == 15);
  CHECK(base2.inc.b() == 15);
  CHECK(base2.inc.incidence.size() == 45);
}

TEST_CASE("mixed levels are rejected") {
  FieldCtx F(2, 1, FieldLevel::quadratic);
  SurfaceCtx S(F);
  auto lines = enumerate_lines(S, Level::quadratic);
  CHECK_THROWS_WITH_AS(build_incidence(S.points(Level::base), lines, Level::quadratic),
                       doctest::Contains("InconsistentLevel"), Error);
  CHECK_THROWS_WITH_AS(build_incidence(S.points(Level::base), lines, Level::base),
                       doctest::Contains("InconsistentLevel"), Error);
}

TEST_CASE("configuration parameters") {
  auto b2 = build(2, 1, Level::quadratic);
  auto cp = configuration_params(b2.inc);
  REQUIRE(cp.has_value());
  CHECK(cp->v == 45);
  CHECK(cp->k == 3);
  CHECK(cp->b == 27);
  CHECK(cp->r == 5);
  CHECK(cp->k * cp->v == cp->b * cp->r);
  CHECK_FALSE(is_symmetric(b2.inc));

  auto b3 = build(3, 1, Level::quadratic);
  auto cp3 = configuration_params(b3.inc);
  REQUIRE(cp3.has_value());
  CHECK(cp3->v == 280);
  CHECK(cp3->k == 4);
  CHECK(cp3->b == 112);
  CHECK(cp3->r == 10);
  CHECK_FALSE(is_symmetric(b3.inc));

  auto base3 = build(3, 1, Level::base);
  auto cpb = configuration_params(base3.inc);
  REQUIRE(cpb.has_value());
  CHECK(cpb->v == 40);
  CHECK(cpb->k == 4);
  CHECK(cpb->b == 40);
  CHECK(cpb->r == 4);
  CHECK(is_symmetric(base3.inc));

  auto base2 = build(2, 1, Level::base);
  auto cpb2 = configuration_params(base2.inc);
  REQUIRE(cpb2.has_value());
  CHECK(cpb2->v == 15);
  CHECK(cpb2->k == 3);
  CHECK(is_symmetric(base2.inc));
}

TEST_CASE("non-uniform structures are value-level failures") {
  auto b = build(2, 1, Level::quadratic);
  // Dropping one block breaks point-degree uniformity but not block degrees.
  IncidenceStructure broken = b.inc;
  const uint32_t dropped = 0;
  broken.blocks.erase(broken.blocks.begin());
  std::vector<std::pair<uint32_t, uint32_t>> kept;
  broken.point_degree.assign(broken.points.size(), 0);
  broken.block_degree.assign(broken.blocks.size(), 0);
  for (auto [p, blk] : b.inc.incidence) {
    if (blk == dropped) continue;
    kept.emplace_back(p, blk - 1);
    ++broken.point_degree[p];
    ++broken.block_degree[blk - 1];
  }
  broken.incidence = std::move(kept);
  CHECK_FALSE(configuration_params(broken).has_value());
  CHECK_THROWS_WITH_AS(is_symmetric(broken), doctest::Contains("NotAConfiguration"), Error);
}

TEST_CASE("design property") {
  auto b2 = build(2, 1, Level::quadratic);
  CHECK(verify_design(b2.inc, 1, 3));
  CHECK_FALSE(verify_design(b2.inc, 1, 4));
  // Two collinear points share one block, two non-collinear share none, so
  // no lambda works at t = 2.
  for (uint64_t lam : {0, 1, 2, 3}) CHECK_FALSE(verify_design(b2.inc, 2, lam));

  auto b3 = build(3, 1, Level::quadratic);
  CHECK(verify_design(b3.inc, 1, 4));

  auto base2 = build(2, 1, Level::base);
  CHECK(verify_design(base2.inc, 1, 3));
  // t = 3 walks all 455 subsets of the small symmetric structure; collinear
  // triples lie on one block, generic triples on none.
  CHECK_FALSE(verify_design(base2.inc, 3, 0));
  CHECK_FALSE(verify_design(base2.inc, 3, 1));
}

TEST_CASE("t-subset cap") {
  auto big = build(2, 2, Level::quadratic);  // v = 1105, C(v, 3) > 10^7
  CHECK_THROWS_WITH_AS(verify_design(big.inc, 3, 1), doctest::Contains("TooLarge"), Error);
}

TEST_CASE("blocks pairwise share at most one point") {
  for (auto [p, a] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}}) {
    auto b = build(p, a, Level::quadratic);
    std::vector<std::vector<uint32_t>> by_block(b.inc.b());
    for (auto [pid, bid] : b.inc.incidence) by_block[bid].push_back(pid);
    for (size_t i = 0; i < by_block.size(); ++i)
      for (size_t j = i + 1; j < by_block.size(); ++j) {
        uint64_t common = 0;
        for (uint32_t x : by_block[i])
          common += std::binary_search(by_block[j].begin(), by_block[j].end(), x);
        CHECK(common <= 1);
      }
  }
}

TEST_CASE("canonical JSON document") {
  auto b = build(2, 1, Level::base);
  nlohmann::json j = to_json(b.inc);
  CHECK(j["v"] == 15);
  CHECK(j["b"] == 15);
  CHECK(j["points"].size() == 15);
  CHECK(j["incidence"].size() == 45);
  CHECK(std::is_sorted(b.inc.points.begin(), b.inc.points.end()));
  CHECK(std::is_sorted(b.inc.blocks.begin(), b.inc.blocks.end()));
  CHECK(std::is_sorted(b.inc.incidence.begin(), b.inc.incidence.end()));
  // Rebuilding serializes identically.
  auto again = build(2, 1, Level::base);
  CHECK(to_json(again.inc).dump() == j.dump());
}
