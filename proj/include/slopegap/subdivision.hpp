#pragma once

// Partition of Omega into the regions where each winner has least slope
// among the candidate winners.

#include <vector>

#include "slopegap/winners.hpp"

namespace slopegap {

struct WinnerRegion {
  WinnerRecord record;
  std::vector<ConvexPolygon<FieldElement>> pieces;  ///< interior-disjoint convex pieces
  FieldElement area;
};

/// Region of record i: Omega cut to the strip of w_i, minus the strips of all
/// winners with smaller slope. Throws if the regions do not cover Omega.
std::vector<WinnerRegion> subdivide(const Transversal& transversal, const std::vector<WinnerRecord>& records);

/// Index into `records` of the least-slope (then shortest) vector whose
/// closed strip contains pt, or -1.
int winner_index_at(const std::vector<WinnerRecord>& records, const Vec& pt);

}  // namespace slopegap
