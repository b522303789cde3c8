#include "slopegap/winners.hpp"

#include <algorithm>

namespace slopegap {

namespace {

constexpr const char* kModule = "winners";

Vec sheared_box_corner(const SearchRegion& r, const StaircaseSurface& s, const SearchConfig& cfg) {
  const auto img = map_affine(r.triangle, s.shear());
  const auto [lo, hi] = bounding_box(img);
  if (sign(lo.x()) < 0 || sign(lo.y()) < 0)
    throw computation_error(kModule, "search region leaves the first quadrant in sheared coordinates");
  const FieldElement m(cfg.initial_box_margin);
  return Vec(hi.x() * m, hi.y() * m);
}

// Lattice points of the box, mapped back, kept if `keep`, sorted by winner order.
template <class Pred>
std::vector<Vec> box_candidates(const StaircaseSurface& s, const Vec& corner, const SearchConfig& cfg, Pred keep) {
  const auto xs = lattice_values(s.generators(), corner.x());
  const auto ys = lattice_values(s.generators(), corner.y());
  if (static_cast<long>(xs.size() * ys.size()) > cfg.max_candidates)
    throw computation_error(kModule, "search box holds " + std::to_string(xs.size() * ys.size()) +
                                         " lattice points, above max_candidates");
  std::vector<Vec> out;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if (y.is_zero()) continue;
      const Vec w(x, y);
      const Vec v = s.shear_inv() * w;
      if (keep(v)) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return winner_less(a, b); });
  return out;
}

}  // namespace

SearchRegion winner_search_region(const Vec& point, const Vec& seed) {
  if (!is_left_candidate(seed, point))
    throw computation_error(kModule, "seed is not a left candidate at the search point");
  SearchRegion r;
  r.point = point;
  r.seed = seed;
  const FieldElement k = strip_value(seed, point);
  r.bounded = !k.is_zero();
  if (r.bounded) {
    r.triangle.vertices = {Vec(FieldElement(0), FieldElement(0)), Vec(FieldElement(1) / point.y(), FieldElement(0)),
                           seed / k};
  }
  return r;
}

bool region_contains(const SearchRegion& region, const Vec& v) {
  if (!is_left_candidate(v, region.point)) return false;
  return sign(region.seed.y() * v.x() - region.seed.x() * v.y()) >= 0;
}

std::vector<Vec> enumerate_region_candidates(const SearchRegion& region, const StaircaseSurface& surface,
                                             const SearchConfig& cfg) {
  if (!region.bounded) throw computation_error(kModule, "cannot enumerate an unbounded region");
  const Vec corner = sheared_box_corner(region, surface, cfg);
  auto cands = box_candidates(surface, corner, cfg, [&](const Vec& v) { return region_contains(region, v); });
  std::vector<Vec> out;
  for (const auto& v : cands)
    if (surface.is_holonomy(surface.shear() * v)) out.push_back(v);
  return out;
}

Vec find_seed(const Vec& point, const StaircaseSurface& surface, const SearchConfig& cfg) {
  FieldElement side;
  for (const auto& g : surface.generators())
    if (g > side) side = g;
  side *= 2;
  for (int round = 0; round < 12; ++round, side *= 2) {
    auto cands = box_candidates(surface, Vec(side, side), cfg,
                                [&](const Vec& v) { return is_left_candidate(v, point); });
    for (const auto& v : cands)
      if (surface.is_holonomy(surface.shear() * v)) return v;
  }
  throw computation_error(kModule, "no holonomy left candidate found at a = " + to_decimal(point.x(), 9) +
                                       "; enlarge the search");
}

Vec left_winner_at(const Vec& point, const StaircaseSurface& surface, const SearchConfig& cfg) {
  return left_winner_at(point, surface, cfg, find_seed(point, surface, cfg));
}

Vec left_winner_at(const Vec& point, const StaircaseSurface& surface, const SearchConfig& cfg, const Vec& seed) {
  const SearchRegion region = winner_search_region(point, seed);
  if (region.bounded) {
    const Vec corner = sheared_box_corner(region, surface, cfg);
    auto cands = box_candidates(surface, corner, cfg, [&](const Vec& v) { return region_contains(region, v); });
    for (const auto& v : cands)
      if (surface.is_holonomy(surface.shear() * v)) return v;
    throw computation_error(kModule, "bounded region holds no holonomy vector, not even the seed");
  }

  // Unbounded: the region is the whole strip, parallel to the seed.
  if (!cfg.fallback_width_check) throw computation_error(kModule, "unbounded search region and fallback disabled");
  const Mat& m = surface.shear();
  const Vec ms = m * seed;
  if (!ms.x().is_zero())
    throw computation_error(kModule, "fallback inconclusive: the shear does not verticalize the strip");
  // The strip's edges x - a*y = 0 and = 1/b map to x' = 0 and x' = m00 / b.
  const FieldElement width = m(0, 0) / point.y();
  FieldElement step;
  for (const auto& g : surface.generators())
    if (step.is_zero() || g < step) step = g;
  if (step < width)
    throw computation_error(kModule, "fallback inconclusive: smallest lattice step " + to_decimal(step, 6) +
                                         " lies inside the strip width " + to_decimal(width, 6));
  // Only vertical lattice vectors remain; the shortest vertical holonomy vector wins.
  for (const auto& y : lattice_values(surface.generators(), ms.y())) {
    if (y.is_zero()) continue;
    const Vec w(FieldElement(0), y);
    if (surface.is_holonomy(w)) return surface.shear_inv() * w;
  }
  throw computation_error(kModule, "seed is not a holonomy vector");
}

std::vector<WinnerRecord> sweep_winners(const StaircaseSurface& surface, const Transversal& transversal,
                                        const SearchConfig& cfg) {
  const Vec cusp(transversal.cusp.x0, transversal.cusp.y0);
  std::vector<WinnerRecord> out;
  FieldElement a = transversal.a_right;
  for (int i = 0;; ++i) {
    if (i >= cfg.max_iterations)
      throw computation_error(kModule, "sweep did not reach (x0, y0) within " + std::to_string(cfg.max_iterations) +
                                           " steps");
    const Vec w = left_winner_at(transversal.top_point(a), surface, cfg);
    for (const auto& r : out)
      if (r.vector == w) throw computation_error(kModule, "winner repeated in sweep; model is inconsistent");
    FieldElement next = (w.x() - 1) / w.y();
    if (next >= a) throw computation_error(kModule, "winning interval is empty; model is inconsistent");
    const bool done = w == cusp || next <= transversal.a_left;
    if (next < transversal.a_left) next = transversal.a_left;
    out.push_back({w, surface.shear() * w, {next, a}, i});
    if (done) break;
    a = next;
  }
  return out;
}

}  // namespace slopegap
