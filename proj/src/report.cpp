#include "slopegap/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <boost/math/constants/constants.hpp>

namespace slopegap {

namespace {

std::string num(double x, int digits = 15) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

std::string real_str(const Real& x, int digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

}  // namespace

ordered_json field_json(const FieldElement& e, int decimals) {
  ordered_json c = ordered_json::array();
  for (const auto& q : e.coeffs()) c.push_back(q.get_str());
  return {{"coeffs", c}, {"decimal", to_decimal(e, decimals)}};
}

ordered_json vec_json(const Vec& v, int decimals) {
  return {{"x", field_json(v.x(), decimals)}, {"y", field_json(v.y(), decimals)}};
}

ordered_json winners_json(const std::vector<WinnerRecord>& records) {
  ordered_json out = ordered_json::array();
  for (const auto& r : records) {
    out.push_back({{"index", r.index},
                   {"vector", vec_json(r.vector)},
                   {"sheared", vec_json(r.sheared)},
                   {"interval", {{"lo", field_json(r.interval.lo)}, {"hi", field_json(r.interval.hi)}}},
                   {"closed", "right"}});
  }
  return out;
}

ordered_json regions_json(const std::vector<WinnerRegion>& regions, const FieldElement& omega_area) {
  ordered_json list = ordered_json::array();
  FieldElement total;
  for (const auto& r : regions) {
    ordered_json pieces = ordered_json::array();
    for (const auto& p : r.pieces) {
      ordered_json poly = ordered_json::array();
      for (const auto& v : p.vertices) poly.push_back(vec_json(v, 12));
      pieces.push_back(poly);
    }
    total += r.area;
    list.push_back({{"index", r.record.index},
                    {"winner", vec_json(r.record.vector)},
                    {"area", field_json(r.area)},
                    {"pieces", pieces}});
  }
  return {{"regions", list}, {"total_area", field_json(total)}, {"omega_area", field_json(omega_area)},
          {"covers", total == omega_area}};
}

ordered_json breakpoints_json(const PiecewiseDistribution& dist) {
  ordered_json list = ordered_json::array();
  for (size_t i = 0; i < dist.breakpoints.size(); ++i) {
    ordered_json b = field_json(dist.breakpoints[i]);
    b["index"] = i + 1;
    list.push_back(b);
  }
  return {{"count", dist.breakpoints.size()}, {"breakpoints", list}};
}

ordered_json volume_json(const VolumeResult& v, const std::optional<Rational>& over_pi2) {
  ordered_json out{{"divergent", v.divergent}};
  if (v.divergent) return out;
  out["value"] = real_str(v.value, 20);
  out["error_bound"] = real_str(v.error, 3);
  if (over_pi2) {
    const Real pi = boost::math::constants::pi<Real>();
    const Real expected = Real(over_pi2->get_num().get_str()) / Real(over_pi2->get_den().get_str()) * pi * pi;
    out["expected_over_pi_squared"] = over_pi2->get_str();
    out["expected"] = real_str(expected, 20);
    out["deviation"] = real_str(Real(abs(v.value - expected)), 3);
  }
  return out;
}

ordered_json empirical_json(const EmpiricalGaps& emp, std::optional<double> ks) {
  ordered_json out{{"radius", emp.radius}, {"connections", emp.connections}, {"slopes", emp.slopes.size()},
                   {"gaps", emp.gaps.size()}};
  if (!emp.gaps.empty()) {
    double lo = emp.gaps.front(), hi = emp.gaps.front(), sum = 0;
    for (double g : emp.gaps) {
      lo = std::min(lo, g);
      hi = std::max(hi, g);
      sum += g;
    }
    out["min_gap"] = lo;
    out["max_gap"] = hi;
    out["mean_gap"] = sum / static_cast<double>(emp.gaps.size());
  }
  if (ks) out["ks_distance"] = *ks;
  return out;
}

ordered_json appendix_json(const AppendixComparison& cmp, double tolerance) {
  ordered_json branches = ordered_json::array();
  ordered_json discrepancies = ordered_json::array();
  for (const auto& b : cmp.branches) {
    ordered_json j{{"function", "F" + std::to_string(b.function)},
                   {"case", b.branch},
                   {"samples", b.samples},
                   {"max_deviation", b.max_abs},
                   {"worst_t", b.worst_t}};
    if (b.max_abs > tolerance) discrepancies.push_back(j);
    branches.push_back(std::move(j));
  }
  ordered_json bounds = ordered_json::array();
  for (double d : cmp.boundary_offsets) bounds.push_back(d);
  return {{"tolerance", tolerance},
          {"branches", branches},
          {"discrepancies", discrepancies},
          {"max_normalized_deviation", cmp.max_normalized},
          {"boundary_offsets", bounds},
          {"domain_errors", cmp.domain_errors}};
}

void write_distribution_csv(std::ostream& out, const PiecewiseDistribution& dist, double t_min, double t_max,
                            int samples) {
  if (samples < 2 || !(t_max > t_min) || !(t_min > 0))
    throw config_error("report", "distribution grid needs 0 < t_min < t_max and at least 2 samples");
  out << "t,pdf,cdf\n";
  for (int i = 0; i < samples; ++i) {
    const double t = t_min + (t_max - t_min) * i / (samples - 1);
    const Real T(t);
    out << num(t) << ',' << real_str(pdf(dist, T), 15) << ',' << real_str(cdf(dist, T), 15) << '\n';
  }
}

void write_gaps_csv(std::ostream& out, const EmpiricalGaps& emp) {
  out << "index,slope,gap\n";
  for (size_t i = 0; i < emp.slopes.size(); ++i) {
    out << i << ',' << to_decimal(emp.slopes[i], 15) << ',';
    if (i < emp.gaps.size()) out << num(emp.gaps[i]);
    out << '\n';
  }
}

}  // namespace slopegap
