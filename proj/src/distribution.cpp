#include "slopegap/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace slopegap {

namespace {

constexpr const char* kModule = "distribution";

using P2 = std::array<Real, 2>;

struct PieceSweep {
  Real area;    // area of {u*b >= c} inside the piece
  Real log_sum; // sum of ln(b_enter / b_leave) over hyperbola arcs inside the piece
};

// Roots of A s^2 + B s + C in (0, 1), ascending.
std::vector<Real> unit_roots(const Real& A, const Real& B, const Real& C) {
  std::vector<Real> r;
  if (A == 0) {
    if (B != 0) r.push_back(-C / B);
  } else {
    const Real disc = B * B - 4 * A * C;
    if (disc < 0) return {};
    const Real sq = sqrt(disc);
    const Real q = B >= 0 ? Real(-(B + sq) / 2) : Real(-(B - sq) / 2);
    if (q != 0) {
      r.push_back(q / A);
      r.push_back(C / q);
    } else {
      r.push_back(Real(0));
    }
  }
  std::vector<Real> out;
  for (auto& x : r)
    if (x > 0 && x < 1) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

PieceSweep sweep_piece(const std::vector<P2>& v, const Real& c) {
  struct Seg {
    P2 s, e;
  };
  std::vector<Seg> segs;
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    const P2& p = v[i];
    const P2& q = v[(i + 1) % n];
    const Real du = q[0] - p[0], db = q[1] - p[1];
    const Real A = du * db, B = p[0] * db + p[1] * du, C = p[0] * p[1] - c;
    std::vector<Real> cuts{Real(0)};
    for (auto& r : unit_roots(A, B, C)) cuts.push_back(r);
    cuts.push_back(Real(1));
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (!(cuts[k + 1] > cuts[k])) continue;
      const Real mid = (cuts[k] + cuts[k + 1]) / 2;
      if ((A * mid + B) * mid + C < 0) continue;
      const P2 s = cuts[k] == 0 ? p : P2{p[0] + cuts[k] * du, p[1] + cuts[k] * db};
      const P2 e = cuts[k + 1] == 1 ? q : P2{p[0] + cuts[k + 1] * du, p[1] + cuts[k + 1] * db};
      segs.push_back({s, e});
    }
  }
  PieceSweep out{Real(0), Real(0)};
  if (segs.empty()) return out;
  for (size_t i = 0; i < segs.size(); ++i) {
    const Seg& s = segs[i];
    out.area += (s.s[0] * s.e[1] - s.e[0] * s.s[1]) / 2;
    const Seg& nx = segs[(i + 1) % segs.size()];
    if (nx.s != s.e) {
      const Real lr = log(nx.s[1] / s.e[1]);
      out.area += c * lr;
      out.log_sum -= lr;
    }
  }
  return out;
}

Rational pow2_inv(long bits) {
  Integer d = 1;
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return Rational(Integer(1), d);
}

}  // namespace

void set_precision(int digits) { Real::default_precision(static_cast<unsigned>(digits)); }

Real to_real(const FieldElement& e) {
  const long bits = static_cast<long>(Real::default_precision() * 3.33) + 16;
  const Rational q = approx(e, pow2_inv(bits));
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

SweepRegion make_sweep_region(const WinnerRegion& region) {
  SweepRegion s;
  s.index = region.record.index;
  s.winner = region.record.vector;
  const FieldElement& x = s.winner.x();
  const FieldElement& y = s.winner.y();
  s.scale = FieldElement(1) / y;
  s.y = to_real(y);
  Mat m;
  m << -y, x, FieldElement(0), FieldElement(1);
  for (const auto& p : region.pieces) {
    auto uv = map_affine(p, m);
    std::vector<P2> r;
    for (const auto& q : uv.vertices) {
      if (sign(q.x()) < 0 || sign(q.x() - 1) > 0 || sign(q.y()) < 0 || sign(q.y() - 1) > 0)
        throw computation_error(kModule, "uv piece leaves [0,1]^2; region is outside its strip");
      r.push_back({to_real(q.x()), to_real(q.y())});
    }
    s.uv.push_back(std::move(uv));
    s.uv_r.push_back(std::move(r));
  }
  return s;
}

std::vector<FieldElement> region_breakpoints(const SweepRegion& region) {
  std::vector<FieldElement> out;
  const FieldElement& y = region.winner.y();
  for (const auto& p : region.uv) {
    const size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec& a = p.vertices[i];
      const Vec& b = p.vertices[(i + 1) % n];
      const FieldElement ub = a.x() * a.y();
      if (sign(ub) > 0) out.push_back(y / ub);
      // interior extremum of u(s) b(s) along the edge
      const Vec d = b - a;
      const FieldElement A = d.x() * d.y();
      if (A.is_zero()) continue;
      const FieldElement s = -(a.x() * d.y() + a.y() * d.x()) / (A * 2);
      if (sign(s) <= 0 || sign(s - 1) >= 0) continue;
      const Vec q = a + d * s;
      const FieldElement e = q.x() * q.y();
      if (sign(e) > 0) out.push_back(y / e);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PiecewiseDistribution build_distribution(const std::vector<WinnerRegion>& regions, const Transversal& transversal,
                                         int digits) {
  set_precision(digits);
  PiecewiseDistribution d;
  d.digits = digits;
  d.normalizer = area(transversal.omega);
  d.normalizer_r = to_real(d.normalizer);
  for (const auto& r : regions) {
    d.regions.push_back(make_sweep_region(r));
    for (auto& b : region_breakpoints(d.regions.back())) d.breakpoints.push_back(b);
  }
  std::sort(d.breakpoints.begin(), d.breakpoints.end());
  d.breakpoints.erase(std::unique(d.breakpoints.begin(), d.breakpoints.end()), d.breakpoints.end());
  return d;
}

Real region_cdf(const SweepRegion& region, const Real& t) {
  if (!(t > 0)) throw computation_error(kModule, "cdf needs t > 0");
  const Real c = region.y / t;
  Real total = 0;
  for (const auto& p : region.uv_r) total += sweep_piece(p, c).area;
  return total / region.y;
}

Real region_pdf(const SweepRegion& region, const Real& t) {
  if (!(t > 0)) throw computation_error(kModule, "pdf needs t > 0");
  const Real c = region.y / t;
  Real total = 0;
  for (const auto& p : region.uv_r) total += sweep_piece(p, c).log_sum;
  return total / (t * t);
}

Real cdf(const PiecewiseDistribution& dist, const Real& t) {
  Real s = 0;
  for (const auto& r : dist.regions) s += region_cdf(r, t);
  return s / dist.normalizer_r;
}

Real pdf(const PiecewiseDistribution& dist, const Real& t) {
  Real s = 0;
  for (const auto& r : dist.regions) s += region_pdf(r, t);
  return s / dist.normalizer_r;
}

Real pdf_one_sided(const PiecewiseDistribution& dist, const Real& t, int side) {
  const Real h = t * pow(Real(10), -dist.digits / 2);
  return pdf(dist, side < 0 ? Real(t - h) : Real(t + h));
}

namespace {

// u(b) = alpha + beta*b along one edge
struct EdgeLine {
  FieldElement alpha, beta;
  FieldElement at(const FieldElement& b) const { return alpha + beta * b; }
};

Real li2(const Real& x) {
  Real r = x;
  mpfr_li2(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

// Antiderivative of ln(u_hi/u_lo)/b, without its ln(b) and ln(b)^2 parts.
Real li2_part(const EdgeLine& l, const Real& b) {
  if (l.alpha.is_zero()) return Real(0);
  return -li2(Real(-to_real(l.beta) * b / to_real(l.alpha)));
}

}  // namespace

VolumeResult volume(const PiecewiseDistribution& dist, double tolerance) {
  VolumeResult out{Real(0), Real(0), false};
  Real total = 0;
  double check = 0, check_err = 0;
  boost::math::quadrature::tanh_sinh<double> quad_check;
  for (const auto& region : dist.regions) {
    for (const auto& ex : region.uv) {
      const size_t n = ex.size();
      for (size_t i = 0; i < n; ++i) {
        const Vec& p = ex.vertices[i];
        const Vec& q = ex.vertices[(i + 1) % n];
        if ((p.x().is_zero() && q.x().is_zero()) || (p.y().is_zero() && q.y().is_zero())) out.divergent = true;
      }
      if (out.divergent) continue;
      std::vector<FieldElement> bs;
      for (const auto& p : ex.vertices) bs.push_back(p.y());
      std::sort(bs.begin(), bs.end());
      bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
      for (size_t j = 0; j + 1 < bs.size(); ++j) {
        const FieldElement& b0 = bs[j];
        const FieldElement& b1 = bs[j + 1];
        const FieldElement mid = (b0 + b1) / 2;
        std::vector<EdgeLine> lines;
        for (size_t i = 0; i < n; ++i) {
          const Vec& p = ex.vertices[i];
          const Vec& q = ex.vertices[(i + 1) % n];
          const FieldElement lo = std::min(p.y(), q.y()), hi = std::max(p.y(), q.y());
          if (lo == hi || lo > b0 || hi < b1) continue;
          const FieldElement beta = (q.x() - p.x()) / (q.y() - p.y());
          lines.push_back({p.x() - beta * p.y(), beta});
        }
        if (lines.size() < 2) throw computation_error(kModule, "degenerate slab in volume integration");
        const EdgeLine* lo_l = &lines[0];
        const EdgeLine* hi_l = &lines[0];
        for (const auto& l : lines) {
          if (l.at(mid) < lo_l->at(mid)) lo_l = &l;
          if (l.at(mid) > hi_l->at(mid)) hi_l = &l;
        }
        // ln(b) coefficient: ln|alpha| for alpha != 0, ln(beta) + ln(b)/2 otherwise
        auto log_key = [](const EdgeLine& l) { return l.alpha.is_zero() ? l.beta : abs(l.alpha); };
        const bool same_log = lo_l->alpha.is_zero() == hi_l->alpha.is_zero() && log_key(*lo_l) == log_key(*hi_l);
        const Real coef = same_log ? Real(0) : Real(log(to_real(log_key(*hi_l))) - log(to_real(log_key(*lo_l))));
        const Real quad = Real(hi_l->alpha.is_zero() ? 0.5 : 0.0) - Real(lo_l->alpha.is_zero() ? 0.5 : 0.0);
        auto G = [&](const FieldElement& b) -> Real {
          const Real br = to_real(b);
          Real g = li2_part(*hi_l, br) - li2_part(*lo_l, br);
          if (!same_log || quad != 0) {
            const Real lb = log(br);
            g += coef * lb + quad * lb * lb;
          }
          return g;
        };
        if (b0.is_zero() && (!same_log || quad != 0)) {
          out.divergent = true;
          continue;
        }
        total += G(b1) - G(b0);

        const double a_l = to_double(lo_l->alpha), s_l = to_double(lo_l->beta);
        const double a_h = to_double(hi_l->alpha), s_h = to_double(hi_l->beta);
        auto f = [&](double b) {
          const double ul = a_l + s_l * b, uh = a_h + s_h * b;
          return ul > 0 && b > 0 ? std::log(uh / ul) / b : 0.0;
        };
        double e = 0;
        check += quad_check.integrate(f, to_double(b0), to_double(b1), tolerance, &e);
        check_err += e;
      }
    }
  }
  if (out.divergent) {
    out.value = std::numeric_limits<Real>::infinity();
    return out;
  }
  out.value = total;
  const Real diff = abs(total - Real(check));
  out.error = diff > Real(check_err) ? diff : Real(check_err);
  return out;
}

// ---------------------------------------------------------------------------
// closed forms, transcribed as printed

namespace {

struct Consts {
  long double a1, b1, a2, b2, a3, b3;
};

Consts consts() {
  const long double pi = 3.14159265358979323846264338327950288L;
  return {std::cos(pi / 14), std::sin(pi / 14), std::cos(pi / 7), std::sin(pi / 7), std::cos(3 * pi / 14),
          std::sin(3 * pi / 14)};
}

long double aux(long double k, long double t, int which) {
  const long double arg = 1 - k / t;
  if (arg < 0)
    throw computation_error(kModule, "appendix A" + std::to_string(which) + "(t) undefined at t = " +
                                         std::to_string(static_cast<double>(t)));
  return std::sqrt(arg);
}

long double atanh_checked(long double x, int which, long double t) {
  if (!(x < 1))
    throw computation_error(kModule, "appendix arctanh(A" + std::to_string(which) + ") out of domain at t = " +
                                         std::to_string(static_cast<double>(t)));
  return std::atanh(x);
}

}  // namespace

std::array<long double, 13> appendix_times() {
  const Consts k = consts();
  const long double a1 = k.a1, b1 = k.b1, a2 = k.a2, b2 = k.b2, a3 = k.a3;
  return {b2,
          a3,
          4 / a3 * b2 * b2,
          a1,
          a1 + b2,
          2 * a1 - b2,
          a1 / (1 - 2 * b1),
          2 * a3 * a3 * a3 / (b1 * (3 - 4 * b1)),
          8 * b2 * k.b3,
          a1 * a3 / (a3 - b2),
          4 * a1 * a1 * a1 * a3 / (5 * a1 - 2 * a3 - 5 * b2),
          4 * a3,
          b2 / (6 - 8 * a2 + 6 * b1)};
}

AppendixValue appendix_cdf(long double t) {
  if (!(t > 0)) throw computation_error(kModule, "appendix cdf needs t > 0");
  const Consts k = consts();
  const long double a1 = k.a1, b1 = k.b1, a2 = k.a2, b2 = k.b2, a3 = k.a3, b3 = k.b3;
  const auto T = appendix_times();
  auto tt = [&](int i) { return T[static_cast<size_t>(i - 1)]; };
  auto head = [&](long double c) { return (std::log(c / t) - 1) / t + 1 / c; };
  AppendixValue v;

  // F1
  if (t < tt(2)) {
    v.F[0] = 0, v.branch[0] = 0;
  } else if (t < tt(3)) {
    v.F[0] = head(a3), v.branch[0] = 1;
  } else if (t < tt(4)) {
    const long double A1 = aux((2 - 2 * b3) / a3, t, 1);
    v.F[0] = head(a3) + 2 / t * atanh_checked(A1, 1, t) - a3 * A1 / (2 * b2 * b2), v.branch[0] = 2;
  } else {
    v.F[0] = 1 / (2 * a3) * (a3 / b2 - 2) * (a3 / b2 - 2), v.branch[0] = 3;
  }

  // F2
  if (t < tt(4)) {
    v.F[1] = 0, v.branch[1] = 0;
  } else if (t < tt(5)) {
    v.F[1] = head(a1), v.branch[1] = 1;
  } else if (t < tt(6)) {
    const long double A2 = aux((2 * a2 - 2 * b1) / a1, t, 2);
    v.F[1] = std::log(16 * b1 * b1 * b3 * b3 * (2 * a2 - 2 * b1 - 1) / ((1 - 4 * b1 * b3) * (1 - 4 * b1 * b3))) / t +
             2 / t * atanh_checked(A2, 2, t) +
             (162 * b1 * b3 - 12 * b3 - 15 + (2 * b1 * b3 + 6 * b3 - 4) * A2) / (2 * b2 * b2);
    v.branch[1] = 2;
  } else {
    v.F[1] = 4 * a1 * (3 + 1 / (1 - 6 * b1)), v.branch[1] = 3;
  }

  // F3
  if (t < tt(4)) {
    v.F[2] = 0, v.branch[2] = 0;
  } else if (t < tt(7)) {
    v.F[2] = head(a1), v.branch[2] = 1;
  } else if (t < tt(8)) {
    const long double A3 = aux(4 * b2, t, 3);
    v.F[2] = std::log(2 * b1) / t + 2 / t * atanh_checked(A3, 3, t) - A3 / (2 * b2) +
             (11 - 16 * a2 + 6 * b3) / (4 * a1 * b1 * (1 - 2 * a2) * (1 - 2 * a2));
    v.branch[2] = 2;
  } else {
    v.F[2] = 8 * b1 * b1 * b1 / (a1 * (1 - 2 * a2) * (1 - 2 * a2)), v.branch[2] = 3;
  }

  // F4
  if (t < tt(2)) {
    v.F[3] = 0, v.branch[3] = 0;
  } else if (t < tt(9)) {
    v.F[3] = head(a3), v.branch[3] = 1;
  } else if (t < tt(10)) {
    const long double A4 = aux(8 * b2 * b3, t, 4);
    v.F[3] = head(a3) + 4 / t * atanh_checked(A4, 4, t) + (b2 - a3) / (b2 * b2) * A4, v.branch[3] = 2;
  } else if (t < tt(11)) {
    const long double A4 = aux(8 * b2 * b3, t, 4);
    v.F[3] = std::log(1 - 2 * a2 + 2 * b3) / t + 2 / t * atanh_checked(A4, 4, t) - A4 / (4 * b2 * b3) +
             (13 + 10 * b1 - 24 * b3) / (32 * b1 * b1 * b2 * b2 * b2 * (1 + 2 * a2));
    v.branch[3] = 3;
  } else {
    v.F[3] = (6 * a2 - 2 * b3 - 4) / b2, v.branch[3] = 4;
  }

  // F5
  if (t < tt(1)) {
    v.F[4] = 0, v.branch[4] = 0;
  } else if (t < tt(12)) {
    v.F[4] = head(b2), v.branch[4] = 1;
  } else if (t < tt(13)) {
    const long double A5 = aux(8 * a2 * b2, t, 5);
    v.F[4] = head(b2) + 4 / t * atanh_checked(A5, 5, t) - 4 * b1 * b3 / b2 * A5, v.branch[4] = 2;
  } else {
    const long double A5 = aux(8 * a2 * b2, t, 5);
    v.F[4] = (std::log(a3 / t) - 1) / t + 2 / t * atanh_checked(A5, 5, t) - A5 / (4 * a2 * b2) + 1 / (2 * a3) +
             (2 * b1 + 1) / a1;
    v.branch[4] = 3;
  }

  long double sum = 0;
  for (auto f : v.F) sum += f;
  v.normalized = sum / (a2 / b2);
  return v;
}

const BranchDeviation* AppendixComparison::find(int function, int branch) const {
  for (const auto& b : branches)
    if (b.function == function && b.branch == branch) return &b;
  return nullptr;
}

AppendixComparison compare_appendix(const PiecewiseDistribution& dist, double lo, double hi, int samples) {
  if (dist.regions.size() != 5) throw computation_error(kModule, "appendix comparison needs the five heptagon regions");
  if (dist.breakpoints.size() != 13) throw computation_error(kModule, "appendix comparison needs 13 breakpoints");
  if (samples < 2 || !(hi > lo) || !(lo > 0)) throw computation_error(kModule, "bad appendix comparison grid");
  AppendixComparison out;
  std::map<std::pair<int, int>, BranchDeviation> dev;
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1);
    AppendixValue app;
    try {
      app = appendix_cdf(t);
    } catch (const Error& e) {
      out.domain_errors.push_back(e.what());
      continue;
    }
    const Real T(t);
    for (int k = 0; k < 5; ++k) {
      const double d = std::abs(static_cast<double>(app.F[k] - static_cast<long double>(region_cdf(dist.regions[k], T))));
      auto& b = dev[{k + 1, app.branch[k]}];
      b.function = k + 1;
      b.branch = app.branch[k];
      ++b.samples;
      if (d >= b.max_abs) {
        b.max_abs = d;
        b.worst_t = t;
      }
    }
    const double dn = std::abs(static_cast<double>(app.normalized - static_cast<long double>(cdf(dist, T))));
    out.max_normalized = std::max(out.max_normalized, dn);
  }
  for (auto& [key, b] : dev) out.branches.push_back(b);
  const auto times = appendix_times();
  for (size_t j = 0; j < 13; ++j)
    out.boundary_offsets[j] = std::abs(static_cast<double>(times[j]) - to_double(dist.breakpoints[j]));
  return out;
}

}  // namespace slopegap
