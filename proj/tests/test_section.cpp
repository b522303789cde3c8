#include <random>

#include "fixtures.hpp"
// after fixtures so doctest sees its stream operator
#include "doctest.h"
#include "slopegap/section.hpp"

using namespace slopegap;

namespace {

FieldElement q(long n, long d = 1) { return FieldElement(Rational(n, d)); }

FieldElement random_q(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> n(lo, hi), d(1, 9);
  Rational r(n(rng), d(rng));
  r.canonicalize();
  return FieldElement(r);
}

}  // namespace

TEST_CASE("heptagon transversal") {
  const auto& h = fixtures::heptagon();
  const auto& t = h.omega;
  CHECK(t.apex() == Vec(-h.ev("csc(pi/7)"), q(0)));
  const FieldElement left = h.ev("(cos(pi/7) - 1)/sin(pi/7)");
  CHECK(t.a_left == left);
  CHECK(t.a_right == left + h.ev("2*cot(pi/7)"));
  CHECK(t.a_right == fixtures::endpoint(0));
  CHECK(std::abs(to_double(t.a_right) - 3.924799) < 1e-6);
  CHECK(t.a_right - t.a_left == t.cusp.alpha * t.cusp.n);
  // left edge of Omega: a = (x0 b - 1)/y0
  for (const Vec& p : {t.omega.vertices[0], t.omega.vertices[2]})
    CHECK(p.x() == (t.cusp.x0 * p.y() - 1) / t.cusp.y0);
}

TEST_CASE("candidacy conventions at the boundary") {
  const auto& h = fixtures::heptagon();
  const Vec c = h.vec("x0", "y0");
  const Vec at_a1 = h.omega.top_point(fixtures::endpoint(0));
  CHECK(strip_value(c, at_a1) == h.ev("1 - 2*cos(pi/7)"));
  CHECK_FALSE(is_left_candidate(c, at_a1));

  const Vec left_top = h.omega.top_point((c.x() - 1) / c.y());
  CHECK(strip_value(c, left_top) == q(1));
  CHECK_FALSE(is_left_candidate(c, left_top));
  CHECK(is_candidate(c, left_top));

  const Vec right_top = h.omega.top_point(c.x() / c.y());
  CHECK(is_left_candidate(c, right_top));
  CHECK_FALSE(is_candidate(c, right_top));

  CHECK(is_left_candidate(fixtures::winner(0), at_a1));
  CHECK(is_candidate(fixtures::winner(1), h.omega.top_point(fixtures::endpoint(1))));
}

TEST_CASE("the two conventions differ only on the strip boundary") {
  std::mt19937 rng(17);
  for (int k = 0; k < 500; ++k) {
    const Vec v(random_q(rng, -20, 20), random_q(rng, 1, 20));
    const Vec p(random_q(rng, -20, 20), random_q(rng, 1, 9));
    if (is_left_candidate(v, p) != is_candidate(v, p)) {
      const FieldElement s = strip_value(v, p);
      CHECK((s.is_zero() || s == q(1)));
    }
  }
}

TEST_CASE("left candidacy intervals") {
  const auto i = candidacy_interval_left(Vec(q(1), q(1)));
  CHECK(i.lo == q(0));
  CHECK(i.hi == q(1));
  CHECK_FALSE(i.contains(q(0)));
  CHECK(i.contains(q(1)));
  const Vec w1 = fixtures::winner(0);
  CHECK(candidacy_interval_left(w1).lo == fixtures::endpoint(1));
  CHECK(candidacy_interval_left(w1).hi == w1.x() / w1.y());
  CHECK_THROWS_AS(candidacy_interval_left(Vec(q(1), q(0))), Error);
}

TEST_CASE("return time") {
  const auto& h = fixtures::heptagon();
  CHECK(return_time(Vec(q(1), q(1)), Vec(q(0), q(1))) == q(1));
  const Vec c = h.vec("x0", "y0");
  const FieldElement b = q(1, 2);
  const Vec on_left((c.x() * b - 1) / c.y(), b);
  CHECK(return_time(c, on_left) == c.y() / b);
  CHECK_THROWS_AS(return_time(c, h.omega.top_point(c.x() / c.y())), Error);
  // the smallest return time: w5 at the apex-side corner of its region
  CHECK(h.dist.breakpoints.front() == h.ev("sin(pi/7)"));
}

TEST_CASE("return time identity on random inputs") {
  std::mt19937 rng(23);
  int n = 0;
  for (int k = 0; k < 300; ++k) {
    const Vec v(random_q(rng, -20, 20), random_q(rng, 1, 20));
    const Vec p(random_q(rng, -20, 20), random_q(rng, 1, 9));
    if (sign(strip_value(v, p)) <= 0) continue;
    CHECK(return_time(v, p) * p.y() * strip_value(v, p) == v.y());
    ++n;
  }
  CHECK(n > 50);
}

TEST_CASE("return time increases along the top edge") {
  const Vec w = fixtures::winner(2);
  const auto i = candidacy_interval_left(w);
  FieldElement prev;
  for (int k = 1; k < 20; ++k) {
    const FieldElement a = i.lo + (i.hi - i.lo) * q(k, 20);
    const FieldElement r = return_time(w, Vec(a, q(1)));
    if (k > 1) CHECK(r > prev);
    prev = r;
  }
}
