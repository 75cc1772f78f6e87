#include "hsurf/lines.hpp"

#include <map>

namespace hsurf {

bool chord_condition(const SurfaceCtx& S, const ProjPoint& p, const ProjPoint& q) {
  if (!S.on_surface(p) || !S.on_surface(q))
    raise(errc::not_on_surface, "chord condition needs two surface points");
  if (p == q) raise(errc::equal_points, "chord condition needs distinct points");
  return pair_form(p.x, q.x).is_zero();
}

std::vector<ProjLine> enumerate_lines(const SurfaceCtx& S, Level level) {
  // Every line of S is cut out by a tangent plane, so emitting the tangent
  // cone of each point and deduplicating by canonical form is exhaustive.
  std::map<LineKey, ProjLine> found;
  for (const auto& p : S.points(Level::quadratic))
    for (const auto& l : S.tangent_cone_lines(p)) found.emplace(key(l), l);

  std::vector<ProjLine> out;
  out.reserve(found.size());
  for (auto& [k, l] : found)
    if (level == Level::quadratic || l.base_rational) out.push_back(l);
  return out;
}

std::vector<ProjLine> lines_through(const SurfaceCtx& S, const ProjPoint& p) {
  return S.tangent_cone_lines(p);
}

}  // namespace hsurf
