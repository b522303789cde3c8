#include <cmath>
#include <random>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "doctest.h"
#include "slopegap/error.hpp"
#include "slopegap/realfield.hpp"

using namespace slopegap;

namespace {

// theta = 2cos(pi/14). With x = cos(pi/14), T_7(x) = cos(pi/2) = 0 and
// T_7(x) = x(64x^6 - 112x^4 + 56x^2 - 7); substituting x = theta/2 gives
// theta^6 - 7theta^4 + 14theta^2 - 7.
FieldPtr heptagon_field() {
  FieldSpec s;
  s.min_poly = {-7, 0, 14, 0, -7, 0, 1};
  s.root_lo = Rational(19, 10);
  s.root_hi = Rational(2);
  s.trig_base = 14;
  return NumberField::create(s);
}

FieldPtr cubic_field() {
  FieldSpec s;
  s.min_poly = {1, -2, -1, 1};  // 2cos(pi/7)
  s.root_lo = Rational(17, 10);
  s.root_hi = Rational(19, 10);
  return NumberField::create(s);
}

FieldElement random_element(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  std::vector<Rational> c;
  for (int i = 0; i < f->degree(); ++i) c.emplace_back(num(rng), den(rng));
  for (auto& q : c) q.canonicalize();
  return f->from_coeffs(c);
}

}  // namespace

TEST_CASE("min poly of 2cos(pi/7) vanishes") {
  auto f = cubic_field();
  auto t = f->generator();
  CHECK((t * t * t - t * t - 2 * t + 1).is_zero());
  CHECK(to_double(t) == doctest::Approx(2 * std::cos(M_PI / 7)).epsilon(1e-15));
}

TEST_CASE("heptagon field contains 2cos(pi/7) with the cubic relation") {
  auto f = heptagon_field();
  auto l2 = f->constant("cos(pi/7)") * 2;
  CHECK((l2 * l2 * l2 - l2 * l2 - 2 * l2 + 1).is_zero());
  CHECK((l2 * (FieldElement(1) / l2) - 1).is_zero());
  CHECK(l2 * 1 == l2);
}

TEST_CASE("field construction rejects bad specs") {
  FieldSpec s;
  s.min_poly = {-7, 0, 14, 0, -7, 0, 1};
  s.root_lo = Rational(0);
  s.root_hi = Rational(2);  // contains 3 roots
  CHECK_THROWS_AS(NumberField::create(s), Error);
  s.min_poly = {-7, 0, 14, 0, -7, 0, 2};
  s.root_lo = Rational(19, 10);
  CHECK_THROWS_AS(NumberField::create(s), Error);
}

TEST_CASE("sign and approx") {
  auto f = heptagon_field();
  auto l2 = 2 * f->constant("cos(pi/7)");
  auto l3 = f->constant("csc(pi/14)") / 2;
  CHECK(sign(FieldElement()) == 0);
  CHECK(sign(l2 - 1) == 1);
  CHECK(sign(l3 - l2) == 1);
  CHECK(sign(l2 - l3) == -1);
  CHECK(approx(FieldElement(), Rational(1, 1000)) == 0);
  Rational eps(1, 1000000);
  CHECK(std::abs(approx(f->constant("sin(pi/7)"), eps).get_d() - 0.433884) <= 1e-6);
  CHECK(std::abs(approx(f->constant("cot(pi/7)"), eps).get_d() - 2.076521) <= 1e-6);
  CHECK(to_decimal(f->constant("cot(pi/7)"), 6) == "2.076521");
  CHECK(to_decimal(-f->constant("sin(pi/7)"), 3) == "-0.434");
  // l3 = l2^2 - 1 on the nose
  CHECK(l3 == l2 * l2 - 1);
}

TEST_CASE("pythagorean identities") {
  auto f = heptagon_field();
  for (int k = 1; k <= 6; ++k) {
    auto s = f->sin_pi(k, 14);
    auto c = f->cos_pi(k, 14);
    CHECK((s * s + c * c) == FieldElement(1));
    CHECK(to_double(c) == doctest::Approx(std::cos(k * M_PI / 14)).epsilon(1e-14));
    CHECK(to_double(s) == doctest::Approx(std::sin(k * M_PI / 14)).epsilon(1e-14));
  }
  CHECK(f->constant("sin(2*pi/7)") == f->constant("sin(4pi/14)"));
}

TEST_CASE("unknown constant lists what is available") {
  auto f = heptagon_field();
  try {
    (void)f->constant("bogus");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
    CHECK(std::string(e.what()).find("cos/sin") != std::string::npos);
  }
  CHECK_THROWS_AS(f->constant("cos(pi/5)"), Error);
  CHECK_THROWS_AS(FieldElement(1) / FieldElement(), Error);
}

TEST_CASE("ring axioms on random elements") {
  auto f = heptagon_field();
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("sign agrees with 60-digit evaluation") {
  using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>>;
  auto f = heptagon_field();
  const Big theta = 2 * cos(boost::math::constants::pi<Big>() / 14);
  std::mt19937 rng(11);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    auto e = random_element(f, rng);
    // push some values near zero: subtract a close rational
    if (i % 3 == 0) e -= FieldElement(approx(e, Rational(1, 1 << 20)));
    if (e.is_zero()) continue;
    Big v = 0, p = 1;
    for (const auto& c : e.coeffs()) {
      v += Big(c.get_num().get_str()) / Big(c.get_den().get_str()) * p;
      p *= theta;
    }
    CHECK(sign(e) == (v > 0 ? 1 : -1));
    ++checked;
  }
  CHECK(checked > 900);
}
