#include "slopegap/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <iomanip>
#include <random>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "slopegap/config.hpp"
#include "slopegap/oracle.hpp"

namespace slopegap {

namespace {

const long double kPi = 3.14159265358979323846264338327950288L;

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// Heptagon pipeline, computed once.
struct Heptagon {
  SurfaceConfig cfg;
  Transversal omega;
  std::vector<WinnerRecord> records;
  double sweep_seconds = 0;
  std::vector<WinnerRegion> regions;
  PiecewiseDistribution dist;
};

Heptagon build_heptagon(const AcceptanceOptions& o) {
  Heptagon h{load_config(o.heptagon_config), {}, {}, 0, {}, {}};
  h.omega = build_transversal(h.cfg.cusp);
  const auto t0 = std::chrono::steady_clock::now();
  h.records = sweep_winners(h.cfg.surface, h.omega, h.cfg.search);
  h.sweep_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  h.regions = subdivide(h.omega, h.records);
  h.dist = build_distribution(h.regions, h.omega, o.digits);
  return h;
}

FieldElement ev(const Heptagon& h, const std::string& e) { return eval_expr(*h.cfg.field, e); }

double cdf_d(const PiecewiseDistribution& d, double t) { return static_cast<double>(cdf(d, Real(t))); }
double pdf_d(const PiecewiseDistribution& d, double t) { return static_cast<double>(pdf(d, Real(t))); }

CriterionResult winners_check(const Heptagon& h) {
  const char* w[5][2] = {{"2 + 3*cos(2*pi/7)", "sin(2*pi/7)"},
                         {"4*cos(pi/7) + 3*cos(3*pi/7)", "sin(3*pi/7)"},
                         {"4*cos(pi/7) + cos(3*pi/7)", "sin(3*pi/7)"},
                         {"2 + cos(2*pi/7)", "sin(2*pi/7)"},
                         {"cos(pi/7)", "sin(pi/7)"}};
  const char* a[5] = {"(3*cos(pi/7) - 1)/sin(pi/7)", "(1 + 3*cos(2*pi/7))/sin(2*pi/7)",
                      "(4*cos(pi/7) + 3*cos(3*pi/7) - 1)/sin(3*pi/7)", "(4*cos(pi/7) + cos(3*pi/7) - 1)/sin(3*pi/7)",
                      "(1 + cos(2*pi/7))/sin(2*pi/7)"};
  const long double c1 = std::cos(kPi / 7), c2 = std::cos(2 * kPi / 7), c3 = std::cos(3 * kPi / 7);
  const long double s1 = std::sin(kPi / 7), s2 = std::sin(2 * kPi / 7), s3 = std::sin(3 * kPi / 7);
  const long double a_dec[5] = {(3 * c1 - 1) / s1, (1 + 3 * c2) / s2, (4 * c1 + 3 * c3 - 1) / s3,
                                (4 * c1 + c3 - 1) / s3, (1 + c2) / s2};
  CriterionResult r{1, "winner reproduction", false, "", 0};
  std::ostringstream d;
  d << h.records.size() << " records";
  bool ok = h.records.size() == 5;
  int exact = 0;
  double worst = 0;
  for (size_t i = 0; ok && i < 5; ++i) {
    const Vec want(ev(h, w[i][0]), ev(h, w[i][1]));
    const bool same = h.records[i].vector == want && h.records[i].interval.hi == ev(h, a[i]);
    exact += same;
    worst = std::max(worst, std::abs(static_cast<double>(to_double(h.records[i].interval.hi) - a_dec[i])));
  }
  ok = ok && exact == 5 && worst <= 1e-9 && h.records.back().interval.lo == h.omega.a_left && h.sweep_seconds <= 60;
  d << ", exact matches " << exact << "/5, max |a_i - decimal| " << fmt(worst, 3) << ", a_1 "
    << (h.records.empty() ? "-" : to_decimal(h.records[0].interval.hi, 6)) << ", sweep " << fmt(h.sweep_seconds, 3)
    << " s";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

CriterionResult breakpoints_check(const Heptagon& h) {
  const double table[13] = {0.433884, 0.781831, 0.963149, 0.974928, 1.40881, 1.51597, 1.75676,
                            2.03579,  2.16418,  2.19064,  2.53859,  3.12733, 3.40636};
  const char* exact_forms[13] = {"sin(pi/7)",
                                 "cos(3*pi/14)",
                                 "4*sec(3*pi/14)*sin(pi/7)^2",
                                 "cos(pi/14)",
                                 "cos(pi/14) + sin(pi/7)",
                                 "2*cos(pi/14) - sin(pi/7)",
                                 "cos(pi/14)/(1 - 2*sin(pi/14))",
                                 "2*cos(3*pi/14)^3/(sin(pi/14)*(3 - 4*sin(pi/14)))",
                                 "8*sin(pi/7)*sin(3*pi/14)",
                                 "cos(pi/14)*cos(3*pi/14)/(cos(3*pi/14) - sin(pi/7))",
                                 "4*cos(pi/14)^3*cos(3*pi/14)/(5*cos(pi/14) - 2*cos(3*pi/14) - 5*sin(pi/7))",
                                 "4*cos(3*pi/14)",
                                 "sin(pi/7)/(6 - 8*cos(pi/7) + 6*sin(pi/14))"};
  CriterionResult r{2, "non-analyticity points", false, "", 0};
  const auto& b = h.dist.breakpoints;
  double worst = 0;
  int exact = 0;
  if (b.size() == 13) {
    for (size_t i = 0; i < 13; ++i) {
      worst = std::max(worst, std::abs(to_double(b[i]) - table[i]));
      exact += b[i] == ev(h, exact_forms[i]);
    }
  }
  r.passed = b.size() == 13 && worst <= 1e-5;
  r.detail = std::to_string(b.size()) + " breakpoints, max |t_i - table| " + fmt(worst, 3) + ", exact closed forms " +
             std::to_string(exact) + "/13";
  return r;
}

CriterionResult volume_check(const Heptagon& h, const AcceptanceOptions& o) {
  CriterionResult r{3, "covolume", false, "", 0};
  const Real pi = boost::math::constants::pi<Real>();
  const auto vh = volume(h.dist);
  const Real dh = abs(vh.value - 5 * pi * pi / 14);
  const Real dquoted = abs(vh.value - Real("3.524858714674771"));

  auto pc = load_config(o.pentagon_config);
  const auto pt = build_transversal(pc.cusp);
  const auto pd = build_distribution(subdivide(pt, sweep_winners(pc.surface, pt, pc.search)), pt, o.digits);
  const auto vp = volume(pd);
  const Real dp = abs(vp.value - 3 * pi * pi / 10);

  r.passed = !vh.divergent && !vp.divergent && dh <= Real(1e-8) && dquoted <= Real(1e-8) && dp <= Real(1e-6);
  r.detail = "heptagon " + vh.value.str(16) + " (|V - 5pi^2/14| " + dh.str(3) + ", est. error " + vh.error.str(3) +
             "), pentagon " + vp.value.str(16) + " (|V - 3pi^2/10| " + dp.str(3) + ")";
  return r;
}

CriterionResult distribution_check(const Heptagon& h) {
  CriterionResult r{4, "distribution sanity", false, "", 0};
  const auto& d = h.dist;
  const double t1 = to_double(d.breakpoints.front());
  std::vector<double> bps;
  for (const auto& b : d.breakpoints) bps.push_back(to_double(b));

  // monotone on a 1000-point grid
  bool monotone = true;
  double prev = -1;
  for (int i = 0; i < 1000; ++i) {
    const double c = cdf_d(d, 0.4 + 9.6 * i / 999);
    if (c < prev - 1e-12) monotone = false;
    prev = c;
  }
  const bool below = cdf(d, Real(t1 - 1e-6)) == 0;
  const double tail = cdf_d(d, 1e4);

  // pdf against a central difference of the cdf
  double fd_worst = 0;
  const double h6 = 1e-6;
  for (int i = 0; i < 60; ++i) {
    const double t = t1 + (6 - t1) * (i + 0.5) / 60;
    bool near = false;
    for (double b : bps) near |= std::abs(t - b) < 1e-3;
    if (near) continue;
    const Real fd = (cdf(d, Real(t + h6)) - cdf(d, Real(t - h6))) / Real(2 * h6);
    fd_worst = std::max(fd_worst, static_cast<double>(abs(fd - pdf(d, Real(t)))));
  }

  // integral of the pdf over [t1, 10], split at the breakpoints
  std::vector<double> cuts{t1};
  for (double b : bps)
    if (b > t1 && b < 10) cuts.push_back(b);
  cuts.push_back(10);
  boost::math::quadrature::tanh_sinh<double> quad;
  double integral = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    integral += quad.integrate([&](double t) { return pdf_d(d, t); }, cuts[i], cuts[i + 1], 1e-12);
  const double int_err = std::abs(integral - cdf_d(d, 10));

  r.passed = monotone && below && tail >= 0.999 && fd_worst <= 1e-5 && int_err <= 1e-7;
  r.detail = std::string("monotone ") + (monotone ? "yes" : "no") + ", cdf(t1-1e-6) " + (below ? "0" : "nonzero") +
             ", cdf(1e4) " + fmt(tail, 12) + ", max |pdf - fd| " + fmt(fd_worst, 3) + ", |int pdf - cdf(10)| " +
             fmt(int_err, 3);
  return r;
}

CriterionResult appendix_check(const Heptagon& h) {
  CriterionResult r{5, "appendix cross-check", false, "", 0};
  const double tol = 1e-6;
  const auto cmp = compare_appendix(h.dist, 0.4, 10, 200);
  bool ok = true;
  double f1 = 0, f5 = 0;
  for (const auto& b : cmp.branches) {
    if (b.function == 1) f1 = std::max(f1, b.max_abs);
    if (b.function == 5 && b.branch <= 1) f5 = std::max(f5, b.max_abs);
  }
  double bound = 0;
  for (double x : cmp.boundary_offsets) bound = std::max(bound, x);
  ok = f1 <= tol && f5 <= tol && bound <= tol && cmp.find(5, 0) && cmp.find(5, 1);
  std::ostringstream d;
  d << "F1 max " << fmt(f1, 3) << ", F5 cases 0-1 max " << fmt(f5, 3) << ", case splits vs breakpoints "
    << fmt(bound, 3);
  for (const auto& b : cmp.branches)
    if (b.max_abs > tol) d << "; discrepancy F" << b.function << " case " << b.branch << " max " << fmt(b.max_abs, 4)
                           << " at t=" << fmt(b.worst_t, 5);
  if (!cmp.domain_errors.empty()) d << "; " << cmp.domain_errors.size() << " domain errors";
  r.passed = ok;
  r.detail = d.str();
  return r;
}

CriterionResult oracle_check(const Heptagon& h, const AcceptanceOptions& o) {
  CriterionResult r{6, "oracle equivalence", false, "", 0};
  std::vector<FieldElement> points;
  for (const auto& rec : h.records) points.push_back(rec.interval.hi);
  std::mt19937_64 rng(o.seed);
  const double lo = to_double(h.omega.a_left), hi = to_double(h.omega.a_right);
  std::uniform_real_distribution<double> u(lo, hi);
  while (points.size() < 25) {
    const Rational q(static_cast<long>(std::llround(u(rng) * 4096)), 4096);
    const FieldElement a(q);
    if (a > h.omega.a_left && a <= h.omega.a_right) points.push_back(a);
  }
  EnumerationLimits lim;
  lim.threads = o.threads;
  int agree = 0;
  std::string first_bad;
  for (const auto& a : points) {
    const Vec pt = h.omega.top_point(a);
    const Vec fast = left_winner_at(pt, h.cfg.surface, h.cfg.search);
    const Vec slow = brute_winner_at(pt, h.cfg.surface, FieldElement(4), lim);
    if (fast == slow)
      ++agree;
    else if (first_bad.empty())
      first_bad = " (first mismatch at a=" + to_decimal(a, 6) + ")";
  }
  r.passed = agree == static_cast<int>(points.size());
  r.detail = std::to_string(agree) + "/" + std::to_string(points.size()) + " points agree" + first_bad;
  return r;
}

CriterionResult empirical_check(const Heptagon& h, const AcceptanceOptions& o) {
  CriterionResult r{7, "empirical convergence", false, "", 0};
  EnumerationLimits lim;
  lim.threads = o.threads;
  const auto e10 = empirical_gaps(h.cfg.surface, FieldElement(10), lim);
  const auto e40 = empirical_gaps(h.cfg.surface, FieldElement(40), lim);
  const double ks10 = ks_distance(e10, h.dist), ks40 = ks_distance(e40, h.dist);
  const double min_gap = *std::min_element(e40.gaps.begin(), e40.gaps.end());
  const double floor = 0.9 * std::sin(static_cast<double>(kPi) / 7);
  r.passed = ks40 <= 0.05 && min_gap >= floor && ks40 <= ks10;
  r.detail = "R=40: " + std::to_string(e40.connections) + " connections, KS " + fmt(ks40, 4) + ", min gap " +
             fmt(min_gap, 6) + " (floor " + fmt(floor, 6) + "); R=10 KS " + fmt(ks10, 4);
  return r;
}

Rational random_rational(std::mt19937_64& rng, long span) {
  std::uniform_int_distribution<long> n(-span, span), d(1, 20);
  return Rational(n(rng), d(rng));
}

CriterionResult structure_check(const Heptagon& h, const AcceptanceOptions& o) {
  CriterionResult r{8, "structural invariants", false, "", 0};
  FieldElement total;
  for (const auto& reg : h.regions) total += reg.area;
  const bool area_ok = total == ev(h, "cot(pi/7)");

  std::mt19937_64 rng(o.seed + 1);
  int order_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    Rational a;
    do a = random_rational(rng, 50);
    while (sgn(a) <= 0);
    const FieldElement fa(a), fb(random_rational(rng, 50));
    Mat m;
    m << fa, fb, FieldElement(0), FieldElement(1) / fa;
    auto rv = [&] {
      Rational y;
      do y = random_rational(rng, 50);
      while (sgn(y) <= 0);
      return Vec(FieldElement(random_rational(rng, 50)), FieldElement(y));
    };
    const Vec v1 = rv(), v2 = rv();
    order_ok += slope_compare(v1, v2) == slope_compare(Vec(m * v1), Vec(m * v2));
  }

  // ring axioms and trig identities in the heptagon field
  int field_ok = 0, field_total = 0;
  std::uniform_int_distribution<int> k(1, 13);
  for (int i = 0; i < 100; ++i) {
    auto rnd = [&] {
      FieldElement e;
      for (int j = 0; j < 3; ++j) e += FieldElement(random_rational(rng, 9)) * ev(h, "cos(" + std::to_string(k(rng)) + "*pi/14)");
      return e;
    };
    const FieldElement x = rnd(), y = rnd(), z = rnd();
    field_total += 5;
    field_ok += (x + y) + z == x + (y + z);
    field_ok += x * (y + z) == x * y + x * z;
    field_ok += (x * y) * z == x * (y * z);
    field_ok += x.is_zero() || x * x.inverse() == FieldElement(1);
    const std::string j = std::to_string(k(rng));
    field_ok += ev(h, "cos(" + j + "*pi/14)^2 + sin(" + j + "*pi/14)^2") == FieldElement(1);
  }
  r.passed = area_ok && order_ok == 1000 && field_ok == field_total;
  r.detail = std::string("region areas sum to cot(pi/7): ") + (area_ok ? "exactly" : "no") + ", slope order " +
             std::to_string(order_ok) + "/1000, field identities " + std::to_string(field_ok) + "/" +
             std::to_string(field_total);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o) {
  std::vector<CriterionResult> out;
  std::optional<Heptagon> h;
  std::string setup_error;
  try {
    h = build_heptagon(o);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  const std::vector<std::pair<const char*, std::function<CriterionResult()>>> checks = {
      {"winner reproduction", [&] { return winners_check(*h); }},
      {"non-analyticity points", [&] { return breakpoints_check(*h); }},
      {"covolume", [&] { return volume_check(*h, o); }},
      {"distribution sanity", [&] { return distribution_check(*h); }},
      {"appendix cross-check", [&] { return appendix_check(*h); }},
      {"oracle equivalence", [&] { return oracle_check(*h, o); }},
      {"empirical convergence", [&] { return empirical_check(*h, o); }},
      {"structural invariants", [&] { return structure_check(*h, o); }},
  };
  for (size_t i = 0; i < checks.size(); ++i) {
    CriterionResult r{static_cast<int>(i + 1), checks[i].first, false, "", 0};
    const auto t0 = std::chrono::steady_clock::now();
    if (!h) {
      r.detail = "setup failed: " + setup_error;
    } else {
      try {
        r = checks[i].second();
      } catch (const std::exception& e) {
        r.detail = std::string("error: ") + e.what();
      }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

bool print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.title << ": " << r.detail << " ["
        << fmt(r.seconds, 3) << " s]\n";
  }
  return all;
}

}  // namespace slopegap
