#pragma once

// Exact arithmetic in a totally real number field Q(theta), where theta is a
// real root of a monic irreducible integer polynomial pinned down by a
// rational isolating interval. Every comparison in the pipeline goes through
// sign(), which is exact.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace slopegap {

using Integer = mpz_class;
using Rational = mpq_class;

/// Definition of a number field as read from a surface config.
struct FieldSpec {
  /// Coefficients of the minimal polynomial, constant term first. Must be monic.
  std::vector<Integer> min_poly;
  /// Open rational interval containing exactly one root of min_poly.
  Rational root_lo, root_hi;
  /// Named constants, each a coefficient vector in the power basis of theta.
  std::map<std::string, std::vector<Rational>> constants;
  /// When nonzero, theta = 2cos(pi/trig_base) and names such as "cos(3*pi/14)"
  /// resolve through Chebyshev recurrences.
  int trig_base = 0;
};

class FieldElement;

/// Immutable number field. Shared between all elements that live in it.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  /// Validates the spec (monic, single sign-changing root in the interval)
  /// and precomputes dyadic enclosures of the generator.
  static std::shared_ptr<const NumberField> create(FieldSpec spec);

  int degree() const { return static_cast<int>(spec_.min_poly.size()) - 1; }
  const FieldSpec& spec() const { return spec_; }

  FieldElement generator() const;
  FieldElement from_coeffs(const std::vector<Rational>& coeffs) const;

  /// Named constant from the table, or a trigonometric value cos/sin/tan/cot/
  /// sec/csc of (k*pi/N) when trig_base is set and N divides it.
  FieldElement constant(const std::string& name) const;
  bool has_constant(const std::string& name) const;
  /// 2cos(k*pi/trig_base).
  FieldElement two_cos_pi(long k) const;
  FieldElement cos_pi(long k, long n) const;
  FieldElement sin_pi(long k, long n) const;

  /// Enclosure of theta as [lo, hi] / 2^bits with integer lo, hi (hi = lo + 1).
  struct Dyadic {
    long bits;
    std::vector<Integer> lo_pow, hi_pow;  ///< enclosures of theta^i scaled by 2^(i*bits)
  };
  const Dyadic& coarse() const { return coarse_; }
  const Dyadic& fine() const { return fine_; }
  Dyadic refine(long bits) const;

 private:
  explicit NumberField(FieldSpec spec);
  int sign_of_poly_at(const Rational& x) const;

  FieldSpec spec_;
  Dyadic coarse_, fine_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Exact element c0 + c1*theta + ... of a number field, stored as an integer
/// numerator vector over a common positive denominator, gcd-normalized with
/// trailing zeros trimmed. A default-constructed element is the rational 0;
/// elements without a field are plain rationals and combine with any field.
class FieldElement {
 public:
  FieldElement() : den_(1) {}
  FieldElement(int v) : FieldElement(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  FieldElement(long v) : FieldElement(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  FieldElement(const Rational& q);                     // NOLINT(google-explicit-constructor)
  FieldElement(FieldPtr field, std::vector<Integer> num, Integer den);

  const FieldPtr& field() const { return field_; }
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }
  /// Coefficient vector of length degree() (or 1 for a plain rational).
  std::vector<Rational> coeffs() const;

  bool is_zero() const { return num_.empty(); }
  bool is_rational() const { return num_.size() <= 1; }
  /// Value as a rational; requires is_rational().
  Rational to_rational() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  FieldElement operator-() const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  /// Multiplicative inverse; throws a computation error for zero.
  FieldElement inverse() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  friend bool operator<(const FieldElement& a, const FieldElement& b);
  friend bool operator>(const FieldElement& a, const FieldElement& b) { return b < a; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) { return !(b < a); }
  friend bool operator>=(const FieldElement& a, const FieldElement& b) { return !(a < b); }

 private:
  void normalize();
  static FieldPtr common_field(const FieldElement& a, const FieldElement& b);

  FieldPtr field_;
  std::vector<Integer> num_;
  Integer den_;
};

/// Exact sign: -1, 0 or +1.
int sign(const FieldElement& e);
inline int sign(double x) { return (x > 0) - (x < 0); }
inline FieldElement abs(const FieldElement& e) { return sign(e) < 0 ? -e : e; }

/// Rational q with |q - e| <= eps.
Rational approx(const FieldElement& e, const Rational& eps);
double to_double(const FieldElement& e);
/// Fixed-point decimal string, correctly rounded to `decimals` places.
std::string to_decimal(const FieldElement& e, int decimals = 17);
/// Human-readable coefficient form, e.g. "1/2 + 3*t^2".
std::string to_string(const FieldElement& e);

}  // namespace slopegap

namespace Eigen {

template <>
struct NumTraits<slopegap::FieldElement> : GenericNumTraits<slopegap::FieldElement> {
  using Real = slopegap::FieldElement;
  using NonInteger = slopegap::FieldElement;
  using Literal = slopegap::FieldElement;
  using Nested = slopegap::FieldElement;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 200,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
