#include "hsurf/config.hpp"

#include <algorithm>
#include <unordered_map>

namespace hsurf {

IncidenceStructure build_incidence(std::span<const ProjPoint> points,
                                   std::span<const ProjLine> lines, Level level) {
  IncidenceStructure inc;
  inc.points.reserve(points.size());
  for (const auto& p : points) inc.points.push_back(key(p));
  std::sort(inc.points.begin(), inc.points.end());
  inc.blocks.reserve(lines.size());
  for (const auto& l : lines) inc.blocks.push_back(key(l));
  std::sort(inc.blocks.begin(), inc.blocks.end());

  std::unordered_map<PointKey, uint32_t, KeyHash> point_id;
  point_id.reserve(inc.points.size());
  for (uint32_t i = 0; i < inc.points.size(); ++i) point_id.emplace(inc.points[i], i);
  std::unordered_map<LineKey, uint32_t, KeyHash> block_id;
  for (uint32_t i = 0; i < inc.blocks.size(); ++i) block_id.emplace(inc.blocks[i], i);

  inc.point_degree.assign(inc.points.size(), 0);
  inc.block_degree.assign(inc.blocks.size(), 0);
  for (const auto& l : lines) {
    if (level == Level::base && !l.base_rational)
      raise(errc::inconsistent_level, "base-level structure holds a non-base-rational block");
    uint32_t bid = block_id.at(key(l));
    for (const auto& p : points_on_line(l, level)) {
      auto it = point_id.find(key(p));
      if (it == point_id.end())
        raise(errc::inconsistent_level, "block has a point outside the point list");
      inc.incidence.emplace_back(it->second, bid);
      ++inc.point_degree[it->second];
      ++inc.block_degree[bid];
    }
  }
  std::sort(inc.incidence.begin(), inc.incidence.end());
  return inc;
}

std::optional<ConfigParams> configuration_params(const IncidenceStructure& inc) {
  if (inc.points.empty() || inc.blocks.empty()) return std::nullopt;
  uint32_t k = inc.point_degree[0], r = inc.block_degree[0];
  for (uint32_t d : inc.point_degree)
    if (d != k) return std::nullopt;
  for (uint32_t d : inc.block_degree)
    if (d != r) return std::nullopt;
  ConfigParams cp{inc.v(), k, inc.b(), r};
  check_internal(cp.k * cp.v == cp.b * cp.r, "configuration identity kv = br");
  return cp;
}

bool is_symmetric(const IncidenceStructure& inc) {
  auto cp = configuration_params(inc);
  if (!cp) raise(errc::not_a_configuration, "degree multisets are not constant");
  return cp->v == cp->b;
}

namespace {

// Blocks through each point, sorted, for subset intersection.
std::vector<std::vector<uint32_t>> blocks_by_point(const IncidenceStructure& inc) {
  std::vector<std::vector<uint32_t>> bp(inc.points.size());
  for (const auto& [p, b] : inc.incidence) bp[p].push_back(b);
  return bp;  // incidence is sorted, so each list is sorted
}

std::vector<uint32_t> intersect_sorted(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

bool verify_design(const IncidenceStructure& inc, uint32_t t, uint64_t expected_lambda) {
  if (t < 1) throw std::invalid_argument("design parameter t must be >= 1");
  if (inc.blocks.empty() || inc.points.empty()) return false;
  uint32_t k = inc.block_degree[0];
  for (uint32_t d : inc.block_degree)
    if (d != k) return false;

  const auto bp = blocks_by_point(inc);
  const uint64_t v = inc.v();
  if (t == 1) {
    for (const auto& bs : bp)
      if (bs.size() != expected_lambda) return false;
    return true;
  }
  if (t == 2) {
    for (uint64_t i = 0; i < v; ++i)
      for (uint64_t j = i + 1; j < v; ++j)
        if (intersect_sorted(bp[i], bp[j]).size() != expected_lambda) return false;
    return true;
  }

  const uint64_t cap = env_cap("HSURF_SUBSET_CAP", 10'000'000);
  uint64_t subsets = 1;
  for (uint32_t i = 0; i < t; ++i) {
    subsets = subsets * (v - i) / (i + 1);
    if (subsets > cap) raise(errc::too_large, "t-subset count exceeds HSURF_SUBSET_CAP");
  }

  std::vector<uint32_t> idx(t);
  bool ok = true;
  auto rec = [&](auto&& self, uint32_t depth, uint32_t start,
                 const std::vector<uint32_t>& common) -> void {
    if (!ok) return;
    if (depth == t) {
      if (common.size() != expected_lambda) ok = false;
      return;
    }
    for (uint32_t i = start; i < v && ok; ++i)
      self(self, depth + 1, i + 1, depth == 0 ? bp[i] : intersect_sorted(common, bp[i]));
  };
  rec(rec, 0, 0, {});
  return ok;
}

nlohmann::json to_json(const IncidenceStructure& inc) {
  nlohmann::json j;
  j["v"] = inc.v();
  j["b"] = inc.b();
  j["points"] = inc.points;
  j["blocks"] = inc.blocks;
  auto pairs = nlohmann::json::array();
  for (const auto& [p, b] : inc.incidence) pairs.push_back({p, b});
  j["incidence"] = std::move(pairs);
  return j;
}

}  // namespace hsurf
