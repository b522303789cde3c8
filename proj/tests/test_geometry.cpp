#include <random>

#include "fixtures.hpp"
// after fixtures so doctest sees its stream operator
#include "doctest.h"
#include "slopegap/geometry.hpp"

using namespace slopegap;

namespace {

using Poly = ConvexPolygon<FieldElement>;

FieldElement q(long n, long d = 1) { return FieldElement(Rational(n, d)); }
Vec v(long x, long y) { return Vec(q(x), q(y)); }

Poly unit_square() { return Poly{{v(0, 0), v(1, 0), v(1, 1), v(0, 1)}}; }

FieldElement random_q(std::mt19937& rng, int lo = -30, int hi = 30) {
  std::uniform_int_distribution<int> n(lo, hi), d(1, 7);
  Rational r(n(rng), d(rng));
  r.canonicalize();
  return FieldElement(r);
}

}  // namespace

TEST_CASE("slope order follows x1*y2 > x2*y1") {
  CHECK(slope_compare(v(2, 1), v(1, 1)) == Order::less);
  CHECK(slope_compare(v(1, 1), v(1, 1)) == Order::equal);
  CHECK(slope_compare(v(1, 1), v(2, 1)) == Order::greater);
  CHECK(winner_less(v(1, 1), v(2, 2)));
  CHECK_FALSE(winner_less(v(2, 2), v(1, 1)));
  CHECK_THROWS_AS(slope_compare(v(1, 0), v(1, 1)), Error);
}

TEST_CASE("heptagon winners come in increasing slope") {
  for (int i = 0; i + 1 < 5; ++i) CHECK(slope_less(fixtures::winner(i), fixtures::winner(i + 1)));
}

TEST_CASE("slope order is transitive on random triples") {
  std::mt19937 rng(7);
  for (int k = 0; k < 300; ++k) {
    Vec a(random_q(rng), random_q(rng, 1, 30)), b(random_q(rng), random_q(rng, 1, 30)),
        c(random_q(rng), random_q(rng, 1, 30));
    if (winner_less(a, b) && winner_less(b, c)) CHECK(winner_less(a, c));
    CHECK_FALSE((winner_less(a, b) && winner_less(b, a)));
  }
}

TEST_CASE("orientation-preserving maps keep slope order") {
  std::mt19937 rng(11);
  int compared = 0;
  for (int k = 0; k < 300; ++k) {
    Mat m;
    m << random_q(rng), random_q(rng), random_q(rng), random_q(rng);
    if (sign(det(m)) <= 0) continue;
    Vec a(random_q(rng), random_q(rng, 1, 30)), b(random_q(rng), random_q(rng, 1, 30));
    const Vec ma = m * a, mb = m * b;
    if (sign(ma.y()) <= 0 || sign(mb.y()) <= 0) continue;
    CHECK(slope_compare(a, b) == slope_compare(ma, mb));
    ++compared;
  }
  CHECK(compared > 20);
}

TEST_CASE("clip and area on the unit square") {
  const Poly sq = unit_square();
  CHECK(area(sq) == q(1));
  CHECK(area(Poly{}) == q(0));
  const HalfPlane<FieldElement> right{q(1), q(0), q(0)};
  CHECK(area(clip(sq, right)) == q(1));
  const HalfPlane<FieldElement> diag{q(1), q(1), q(-1)};
  const Poly tri = clip(sq, diag);
  CHECK(tri.size() == 3);
  CHECK(area(tri) == q(1, 2));
  CHECK(clip(tri, diag).vertices == tri.vertices);
  CHECK(clip(sq, HalfPlane<FieldElement>{q(-1), q(0), q(-2)}).empty());
}

TEST_CASE("clip is idempotent on random half planes") {
  std::mt19937 rng(3);
  const Poly sq = unit_square();
  for (int k = 0; k < 100; ++k) {
    HalfPlane<FieldElement> h{random_q(rng), random_q(rng), random_q(rng)};
    if (h.p.is_zero() && h.q.is_zero()) continue;
    const Poly once = clip(sq, h);
    CHECK(clip(once, h).vertices == once.vertices);
  }
}

TEST_CASE("affine maps scale area by |det|") {
  std::mt19937 rng(5);
  const Poly p{{v(0, 0), v(3, 1), v(2, 4), v(-1, 2)}};
  for (int k = 0; k < 50; ++k) {
    Mat m;
    m << random_q(rng), random_q(rng), random_q(rng), random_q(rng);
    if (det(m).is_zero()) {
      CHECK_THROWS_AS(map_affine(p, m), Error);
      continue;
    }
    const Poly img = map_affine(p, m, Vec(random_q(rng), random_q(rng)));
    CHECK(area(img) == abs(det(m)) * area(p));
    CHECK(sign(area(img)) > 0);
  }
  CHECK(map_affine(p, Mat(Mat::Identity())).vertices == p.vertices);
}

TEST_CASE("the shear verticalizes (x0, y0)") {
  const auto& h = fixtures::heptagon();
  const Mat& m = h.surface().shear();
  const Vec c = h.vec("x0", "y0");
  const Poly tri{{v(0, 0), Vec(c.x() + 1, c.y()), c}};
  const Poly img = map_affine(tri, m);
  CHECK(img.vertices == std::vector<Vec>{v(0, 0), v(1, 1), v(0, 1)});
  CHECK(m * fixtures::winner(0) == h.vec("l3", "l2"));
}

TEST_CASE("Omega has area cot(pi/7)") {
  const auto& h = fixtures::heptagon();
  CHECK(area(h.omega.omega) == h.ev("cot(pi/7)"));
}

TEST_CASE("clipping Omega by the left edge of w1's strip starts at a2") {
  const auto& h = fixtures::heptagon();
  const Vec w1 = fixtures::winner(0);
  // left edge of the strip: b*x - a*y <= 1
  const HalfPlane<FieldElement> left{w1.y(), -w1.x(), q(1)};
  const Poly cut = clip(h.omega.omega, left);
  FieldElement top_left = h.omega.a_right;
  for (const auto& p : cut.vertices)
    if (p.y() == q(1) && p.x() < top_left) top_left = p.x();
  CHECK(top_left == fixtures::endpoint(1));
}
