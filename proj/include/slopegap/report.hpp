#pragma once

// Machine-readable outputs. JSON objects keep insertion order so the same
// inputs always serialize to the same bytes.

#include <ostream>
#include <vector>

#include "json.hpp"
#include "slopegap/oracle.hpp"

namespace slopegap {

using ordered_json = nlohmann::ordered_json;

/// {"coeffs": ["p/q", ...], "decimal": "..."}; coefficients in powers of the generator.
ordered_json field_json(const FieldElement& e, int decimals = 17);
ordered_json vec_json(const Vec& v, int decimals = 17);

ordered_json winners_json(const std::vector<WinnerRecord>& records);
ordered_json regions_json(const std::vector<WinnerRegion>& regions, const FieldElement& omega_area);
ordered_json breakpoints_json(const PiecewiseDistribution& dist);
ordered_json volume_json(const VolumeResult& v, const std::optional<Rational>& over_pi2);
ordered_json empirical_json(const EmpiricalGaps& emp, std::optional<double> ks);
ordered_json appendix_json(const AppendixComparison& cmp, double tolerance);

/// Header "t,pdf,cdf", `samples` rows equally spaced on [t_min, t_max].
void write_distribution_csv(std::ostream& out, const PiecewiseDistribution& dist, double t_min, double t_max,
                            int samples);
/// Header "index,slope,gap"; the gap column is empty on the last slope.
void write_gaps_csv(std::ostream& out, const EmpiricalGaps& emp);

}  // namespace slopegap
