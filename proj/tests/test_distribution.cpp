#include <cmath>

#include "fixtures.hpp"
// after fixtures so doctest sees its stream operator
#include "doctest.h"
#include "slopegap/distribution.hpp"

using namespace slopegap;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement(Rational(n, d)); }
Vec v(long xn, long xd, long yn, long yd) { return Vec(q(xn, xd), q(yn, yd)); }

double d(const Real& r) { return static_cast<double>(r); }

// One region with winner (1,1), whose (u,b) image is the square [1/2,1]^2.
WinnerRegion square_region() {
  WinnerRegion r;
  r.record.vector = Vec(q(1), q(1));
  r.pieces.push_back({{v(-1, 2, 1, 2), v(0, 1, 1, 2), v(1, 2, 1, 1), v(0, 1, 1, 1)}});
  r.area = area(r.pieces[0]);
  return r;
}

PiecewiseDistribution single(const WinnerRegion& r) {
  set_precision(30);
  PiecewiseDistribution dist;
  dist.digits = 30;
  dist.regions.push_back(make_sweep_region(r));
  dist.breakpoints = region_breakpoints(dist.regions[0]);
  dist.normalizer = r.area;
  dist.normalizer_r = to_real(r.area);
  return dist;
}

}  // namespace

TEST_CASE("toy square region") {
  const auto r = square_region();
  CHECK(r.area == q(1, 4));
  const auto dist = single(r);
  auto b = dist.breakpoints;
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  CHECK(b == std::vector<FieldElement>{q(1), q(2), q(4)});

  const auto& s = dist.regions[0];
  CHECK(d(region_cdf(s, Real(1))) == doctest::Approx(0).epsilon(1e-25));
  CHECK(d(region_cdf(s, Real("0.9"))) == 0);
  // area of {u*b >= 1/2} inside the square
  CHECK(d(region_cdf(s, Real(2))) == doctest::Approx(0.5 - 0.5 * std::log(2.0)).epsilon(1e-14));
  CHECK(d(region_cdf(s, Real(5))) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d(region_pdf(s, Real(5))) == doctest::Approx(0).epsilon(1e-25));

  const auto vol = volume(dist);
  CHECK_FALSE(vol.divergent);
  // integral of 1/(u b) over the square
  CHECK(d(vol.value) == doctest::Approx(std::log(2.0) * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("a region reaching b = 0 has divergent volume") {
  WinnerRegion r;
  r.record.vector = Vec(q(1), q(1));
  r.pieces.push_back({{v(0, 1, 0, 1), v(1, 1, 1, 1), v(-1, 1, 0, 1)}});
  r.area = area(r.pieces[0]);
  CHECK(volume(single(r)).divergent);
}

TEST_CASE("a region outside its strip is rejected") {
  WinnerRegion r = square_region();
  r.pieces[0].vertices[0] = v(-3, 1, 1, 2);
  CHECK_THROWS_AS(make_sweep_region(r), Error);
}

TEST_CASE("heptagon breakpoints") {
  const auto& h = fixtures::heptagon();
  const auto& b = h.dist.breakpoints;
  REQUIRE(b.size() == 13);
  CHECK(b[0] == h.ev("sin(pi/7)"));
  CHECK(b[1] == h.ev("cos(3*pi/14)"));
  CHECK(b[3] == h.ev("cos(pi/14)"));
  CHECK(b[11] == h.ev("4*cos(3*pi/14)"));
  CHECK(std::is_sorted(b.begin(), b.end()));
}

TEST_CASE("no gaps below t1") {
  const auto& h = fixtures::heptagon();
  const double t1 = to_double(h.dist.breakpoints[0]);
  for (double t : {0.05, 0.2, 0.4, t1 - 1e-6}) {
    CHECK(d(pdf(h.dist, Real(t))) == 0);
    CHECK(d(cdf(h.dist, Real(t))) == 0);
  }
  CHECK(d(pdf(h.dist, Real(t1 + 1e-3))) > 0);
}

TEST_CASE("cdf is continuous and increasing") {
  const auto& h = fixtures::heptagon();
  for (const auto& bp : h.dist.breakpoints) {
    const Real t = to_real(bp);
    const Real eps("1e-15");
    CHECK(d(abs(cdf(h.dist, t + eps) - cdf(h.dist, t - eps))) < 1e-12);
  }
  double prev = 0;
  for (int k = 1; k <= 200; ++k) {
    const double c = d(cdf(h.dist, Real(0.05 * k)));
    CHECK(c >= prev - 1e-30);
    CHECK(c <= 1 + 1e-30);
    prev = c;
  }
  CHECK(prev > 0.9);
}

TEST_CASE("pdf matches a difference quotient of the cdf") {
  const auto& h = fixtures::heptagon();
  for (double t : {0.6, 1.2, 1.9, 2.9, 5.0}) {
    const Real T(t), e("1e-10");
    const Real fd = (cdf(h.dist, T + e) - cdf(h.dist, T - e)) / (2 * e);
    CHECK(d(fd) == doctest::Approx(d(pdf(h.dist, T))).epsilon(1e-8));
  }
}

TEST_CASE("heptagon covolume is 5 pi^2 / 14") {
  const auto& h = fixtures::heptagon();
  const auto vol = volume(h.dist);
  CHECK_FALSE(vol.divergent);
  CHECK(d(vol.value) == doctest::Approx(5 * M_PI * M_PI / 14).epsilon(1e-12));
  CHECK(d(vol.error) < 1e-8);
}

TEST_CASE("appendix case splits line up with the breakpoints") {
  const auto& h = fixtures::heptagon();
  const auto cmp = compare_appendix(h.dist, 0.4, 10, 50);
  for (double off : cmp.boundary_offsets) CHECK(off < 1e-9);
  CHECK(cmp.domain_errors.empty());
}
