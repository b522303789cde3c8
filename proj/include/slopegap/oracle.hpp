#pragma once

// Brute-force checks independent of the winner search: saddle connections found
// by propagating direction wedges through the rectangles, the empirical gap
// set built from them, and a winner-at-a-point scan.

#include <functional>
#include <vector>

#include "slopegap/distribution.hpp"
#include "slopegap/surface.hpp"

namespace slopegap {

/// Open cone of directions, counterclockwise from lo to hi (angle < pi),
/// in original coordinates.
struct DirectionWedge {
  Vec lo, hi;
};

struct EnumerationLimits {
  long max_steps = 20'000'000;  ///< rectangle visits across all workers
  int threads = 1;
};

/// Distinct holonomy vectors (original coordinates) with direction in the
/// wedge and phi . v <= bound, sorted by slope then length. phi must be
/// positive on the closed wedge.
std::vector<Vec> enumerate_in_wedge(const StaircaseSurface& surface, const DirectionWedge& wedge, const Vec& phi,
                                    const FieldElement& bound, const EnumerationLimits& limits = {});

/// Holonomy vectors with 0 <= y <= x <= R.
std::vector<Vec> enumerate_saddle_connections(const StaircaseSurface& surface, const FieldElement& R,
                                              const EnumerationLimits& limits = {});

struct EmpiricalGaps {
  double radius = 0;
  size_t connections = 0;
  std::vector<FieldElement> slopes;  ///< distinct, increasing
  std::vector<double> gaps;          ///< R^2 (s_{i+1} - s_i), in slope order
};

/// Slopes y/x of the given vectors, deduplicated exactly, and their renormalized gaps.
EmpiricalGaps gaps_from_vectors(const std::vector<Vec>& vectors, const FieldElement& R);
EmpiricalGaps empirical_gaps(const StaircaseSurface& surface, const FieldElement& R,
                             const EnumerationLimits& limits = {});

/// sup |F_n - F| over the jump points of the empirical cdf of `samples`.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& F);
double ks_distance(const EmpiricalGaps& emp, const PiecewiseDistribution& dist);

/// Least-slope, then shortest, holonomy vector that is a left candidate at
/// `point`, over every holonomy vector with y <= length_bound.
Vec brute_winner_at(const Vec& point, const StaircaseSurface& surface, const FieldElement& length_bound,
                    const EnumerationLimits& limits = {});

}  // namespace slopegap
