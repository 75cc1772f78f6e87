#pragma once
// Point-line incidence structures, configuration parameters and t-design
// checking.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hsurf/lines.hpp"

namespace hsurf {

struct IncidenceStructure {
  std::vector<PointKey> points;  // sorted identifiers
  std::vector<LineKey> blocks;   // sorted identifiers
  std::vector<std::pair<uint32_t, uint32_t>> incidence;  // (point id, block id), sorted
  std::vector<uint32_t> point_degree;
  std::vector<uint32_t> block_degree;

  uint64_t v() const { return points.size(); }
  uint64_t b() const { return blocks.size(); }
};

// (P, l) is incident iff P lies on l. Throws InconsistentLevel when a block
// has points outside the given point list (mixed rationality levels).
IncidenceStructure build_incidence(std::span<const ProjPoint> points,
                                   std::span<const ProjLine> lines, Level level);

struct ConfigParams {
  uint64_t v, k, b, r;  // v points on k blocks each; b blocks with r points each
};

// Empty when the degree multisets are not constant.
std::optional<ConfigParams> configuration_params(const IncidenceStructure& inc);

// Throws NotAConfiguration when configuration_params fails.
bool is_symmetric(const IncidenceStructure& inc);

// 1-design style check: uniform block size and every t-subset of points on
// exactly expected_lambda common blocks. Throws TooLarge past the subset cap
// (HSURF_SUBSET_CAP, default 10^7 subsets) for t >= 3.
bool verify_design(const IncidenceStructure& inc, uint32_t t, uint64_t expected_lambda);

// Canonical document: sorted identifiers, incidence pairs sorted.
nlohmann::json to_json(const IncidenceStructure& inc);

}  // namespace hsurf
