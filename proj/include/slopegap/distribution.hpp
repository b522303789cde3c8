#pragma once

// Slope-gap distribution from the subdivision. Each region is mapped by
// (a,b) -> (u,b), u = b*x - a*y, where the return time is y/(b*u); level sets
// become hyperbolas u*b = const and every area under them is a logarithm.

#include <array>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "slopegap/subdivision.hpp"

namespace slopegap {

using Real = boost::multiprecision::mpfr_float;

/// Sets the working precision (decimal digits) for Real values created afterwards.
void set_precision(int digits);
Real to_real(const FieldElement& e);

struct SweepRegion {
  int index = 0;
  Vec winner;
  std::vector<ConvexPolygon<FieldElement>> uv;        ///< exact (u,b) pieces
  std::vector<std::vector<std::array<Real, 2>>> uv_r;  ///< the same, rounded
  FieldElement scale;                                  ///< 1/y
  Real y;
};

struct PiecewiseDistribution {
  std::vector<FieldElement> breakpoints;  ///< sorted, distinct
  std::vector<SweepRegion> regions;
  FieldElement normalizer;  ///< area(Omega)
  Real normalizer_r;
  int digits = 50;
};

SweepRegion make_sweep_region(const WinnerRegion& region);
PiecewiseDistribution build_distribution(const std::vector<WinnerRegion>& regions, const Transversal& transversal,
                                         int digits = 50);

/// Return times where the level set passes a vertex of the region or is
/// tangent to one of its edges.
std::vector<FieldElement> region_breakpoints(const SweepRegion& region);

/// Unnormalized area of {R <= t} inside one region, in (a,b) measure.
Real region_cdf(const SweepRegion& region, const Real& t);
/// Its derivative in t.
Real region_pdf(const SweepRegion& region, const Real& t);

Real cdf(const PiecewiseDistribution& dist, const Real& t);
Real pdf(const PiecewiseDistribution& dist, const Real& t);
/// pdf just below (side < 0) or above (side > 0) t.
Real pdf_one_sided(const PiecewiseDistribution& dist, const Real& t, int side);

struct VolumeResult {
  Real value;
  Real error;
  bool divergent = false;
};

/// Integral of the return time over Omega, in closed form per slab; `error`
/// is the disagreement with an independent double-precision quadrature.
VolumeResult volume(const PiecewiseDistribution& dist, double tolerance = 1e-12);

/// Double-heptagon closed forms, as printed: F_1..F_5 unnormalized, with the
/// case (0-based) each one used.
struct AppendixValue {
  std::array<long double, 5> F{};
  std::array<int, 5> branch{};
  long double normalized = 0;
};
AppendixValue appendix_cdf(long double t);
/// The thirteen exact return times of non-analyticity as printed, in order.
std::array<long double, 13> appendix_times();

struct BranchDeviation {
  int function = 0;  ///< 1..5
  int branch = 0;    ///< 0-based case
  int samples = 0;
  double max_abs = 0;  ///< against the matching region's unnormalized cdf
  double worst_t = 0;
};

struct AppendixComparison {
  std::vector<BranchDeviation> branches;  ///< ordered by function, then branch
  double max_normalized = 0;              ///< over grid points where every formula evaluated
  std::array<double, 13> boundary_offsets{};  ///< |case split - sweep breakpoint|
  std::vector<std::string> domain_errors;

  const BranchDeviation* find(int function, int branch) const;
};

/// Closed forms against the sweep on `samples` equally spaced t in [lo, hi].
/// Region k of the sweep pairs with F_{k+1}; needs exactly five regions.
AppendixComparison compare_appendix(const PiecewiseDistribution& dist, double lo = 0.4, double hi = 10,
                                    int samples = 200);

}  // namespace slopegap
