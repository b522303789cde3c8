#pragma once

// Left winners on the top edge of the transversal: bounded-region search
// around a known candidate, the strip fallback for the unbounded case, and
// the right-to-left sweep over A^L.

#include <vector>

#include "slopegap/config.hpp"
#include "slopegap/section.hpp"
#include "slopegap/surface.hpp"

namespace slopegap {

struct WinnerRecord {
  Vec vector;                  ///< original coordinates
  Vec sheared;                 ///< shear * vector
  CandidacyInterval interval;  ///< (a_next, a_cur] on A^L
  int index = 0;
};

/// Region guaranteed to contain the left winner at `point`, given a left
/// candidate seed (u,v): the candidacy strip cut by the seed's slope. Bounded
/// (a triangle) unless b*u - a*v = 0, in which case it is the whole strip.
struct SearchRegion {
  Vec point, seed;
  bool bounded = true;
  ConvexPolygon<FieldElement> triangle;  ///< (0,0), (1/b,0), seed/(b*u - a*v)
};

SearchRegion winner_search_region(const Vec& point, const Vec& seed);
/// Exact membership: left candidate at the point with slope no greater than the seed.
bool region_contains(const SearchRegion& region, const Vec& v);

/// Holonomy vectors (original coordinates) in a bounded region, sorted by
/// slope then length.
std::vector<Vec> enumerate_region_candidates(const SearchRegion& region, const StaircaseSurface& surface,
                                             const SearchConfig& cfg);

/// Least-slope, then shortest, holonomy vector that is a left candidate at
/// `point`, found by scanning growing sheared boxes.
Vec find_seed(const Vec& point, const StaircaseSurface& surface, const SearchConfig& cfg);

Vec left_winner_at(const Vec& point, const StaircaseSurface& surface, const SearchConfig& cfg);
Vec left_winner_at(const Vec& point, const StaircaseSurface& surface, const SearchConfig& cfg, const Vec& seed);

std::vector<WinnerRecord> sweep_winners(const StaircaseSurface& surface, const Transversal& transversal,
                                        const SearchConfig& cfg);

}  // namespace slopegap
