#include "slopegap/realfield.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <utility>

#include "slopegap/error.hpp"

namespace slopegap {

namespace {

constexpr const char* kModule = "realfield";

using QPoly = std::vector<Rational>;  // constant term first

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_mod(QPoly a, const QPoly& b) {
  trim(a);
  const size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational c = a.back() / b.back();
    const size_t shift = a.size() - b.size();
    for (size_t i = 0; i <= db; ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

QPoly poly_derivative(const QPoly& p) {
  QPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Rational poly_eval(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

// Number of real roots of p in (lo, hi] by Sturm's theorem.
int sturm_count(const QPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<QPoly> chain{p, poly_derivative(p)};
  while (chain.back().size() > 1) {
    QPoly r = poly_mod(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto variations = [&](const Rational& x) {
    int count = 0, last = 0;
    for (const auto& q : chain) {
      int s = sgn(poly_eval(q, x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return variations(lo) - variations(hi);
}

// Interval product of [a0,a1] and [b0,b1].
std::pair<Integer, Integer> interval_mul(const Integer& a0, const Integer& a1, const Integer& b0,
                                         const Integer& b1) {
  Integer p[4] = {a0 * b0, a0 * b1, a1 * b0, a1 * b1};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Enclosure of sum(num_i theta^i) scaled by 2^((n-1)*bits), as [lo, hi].
std::pair<Integer, Integer> enclose(const std::vector<Integer>& num, const NumberField::Dyadic& d) {
  const size_t n = num.size();
  Integer lo = 0, hi = 0;
  for (size_t i = 0; i < n; ++i) {
    if (num[i] == 0) continue;
    Integer tlo = num[i] * (num[i] > 0 ? d.lo_pow[i] : d.hi_pow[i]);
    Integer thi = num[i] * (num[i] > 0 ? d.hi_pow[i] : d.lo_pow[i]);
    const mp_bitcnt_t shift = static_cast<mp_bitcnt_t>((n - 1 - i) * d.bits);
    mpz_mul_2exp(tlo.get_mpz_t(), tlo.get_mpz_t(), shift);
    mpz_mul_2exp(thi.get_mpz_t(), thi.get_mpz_t(), shift);
    lo += tlo;
    hi += thi;
  }
  return {lo, hi};
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(FieldSpec spec) : spec_(std::move(spec)) {}

std::shared_ptr<const NumberField> NumberField::create(FieldSpec spec) {
  if (spec.min_poly.size() < 2) throw config_error(kModule, "minimal polynomial must have degree >= 1");
  if (spec.min_poly.back() != 1) throw config_error(kModule, "minimal polynomial must be monic");
  if (!(spec.root_lo < spec.root_hi)) throw config_error(kModule, "root interval must satisfy lo < hi");

  std::shared_ptr<NumberField> field(new NumberField(std::move(spec)));
  const auto& s = field->spec_;
  const int slo = field->sign_of_poly_at(s.root_lo);
  const int shi = field->sign_of_poly_at(s.root_hi);
  if (slo * shi >= 0)
    throw config_error(kModule, "minimal polynomial does not change sign on the root interval");
  QPoly p(s.min_poly.begin(), s.min_poly.end());
  if (sturm_count(p, s.root_lo, s.root_hi) != 1)
    throw config_error(kModule, "root interval does not isolate exactly one root");

  field->coarse_ = field->refine(64);
  field->fine_ = field->refine(320);
  for (const auto& [name, coeffs] : s.constants) {
    if (coeffs.empty() || static_cast<int>(coeffs.size()) > field->degree())
      throw config_error(kModule, "constant '" + name + "' has " + std::to_string(coeffs.size()) +
                                      " coefficients, field degree is " +
                                      std::to_string(field->degree()));
  }
  return field;
}

int NumberField::sign_of_poly_at(const Rational& x) const {
  QPoly p(spec_.min_poly.begin(), spec_.min_poly.end());
  return sgn(poly_eval(p, x));
}

NumberField::Dyadic NumberField::refine(long bits) const {
  // Binary search for m with theta in [m, m+1] / 2^bits.
  const int s_lo = sign_of_poly_at(spec_.root_lo);
  Integer scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  Integer lo = floor_q(spec_.root_lo * scale);
  Integer hi = floor_q(spec_.root_hi * scale) + 1;
  Integer exact_hit;
  bool exact = false;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    const Rational x(mid, scale);
    const int s = sign_of_poly_at(x);
    if (s == 0) {
      exact = true;
      exact_hit = mid;
      break;
    }
    if (s == s_lo)
      lo = mid;
    else
      hi = mid;
  }
  if (exact) lo = hi = exact_hit;

  Dyadic d;
  d.bits = bits;
  const int n = degree();
  d.lo_pow.assign(n, Integer(1));
  d.hi_pow.assign(n, Integer(1));
  for (int i = 1; i < n; ++i) {
    auto [a, b] = interval_mul(d.lo_pow[i - 1], d.hi_pow[i - 1], lo, hi);
    d.lo_pow[i] = a;
    d.hi_pow[i] = b;
  }
  return d;
}

FieldElement NumberField::generator() const {
  if (degree() == 1) return FieldElement(Rational(-spec_.min_poly[0]));
  return FieldElement(shared_from_this(), {Integer(0), Integer(1)}, Integer(1));
}

FieldElement NumberField::from_coeffs(const std::vector<Rational>& coeffs) const {
  if (static_cast<int>(coeffs.size()) > degree())
    throw computation_error(kModule, "coefficient vector longer than field degree");
  FieldElement acc;
  FieldElement power(1);
  const FieldElement theta = generator();
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) acc += FieldElement(coeffs[i]) * power;
    if (i + 1 < coeffs.size()) power *= theta;
  }
  return acc;
}

FieldElement NumberField::two_cos_pi(long k) const {
  if (spec_.trig_base <= 0)
    throw config_error(kModule, "field has no trig_base; trigonometric constants unavailable");
  const long period = 2L * spec_.trig_base;
  k = ((k % period) + period) % period;
  FieldElement prev(2), cur = generator();
  if (k == 0) return prev;
  const FieldElement theta = generator();
  for (long i = 1; i < k; ++i) {
    FieldElement next = theta * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

FieldElement NumberField::cos_pi(long k, long n) const {
  const long base = spec_.trig_base;
  if (base <= 0 || n <= 0 || base % n != 0)
    throw config_error(kModule, "cos(" + std::to_string(k) + "*pi/" + std::to_string(n) +
                                    ") is not expressible with trig_base " + std::to_string(base));
  return two_cos_pi(k * (base / n)) / FieldElement(2);
}

FieldElement NumberField::sin_pi(long k, long n) const {
  const long base = spec_.trig_base;
  if (base <= 0 || n <= 0 || base % n != 0 || base % 2 != 0)
    throw config_error(kModule, "sin(" + std::to_string(k) + "*pi/" + std::to_string(n) +
                                    ") is not expressible with trig_base " + std::to_string(base));
  return two_cos_pi(base / 2 - k * (base / n)) / FieldElement(2);
}

bool NumberField::has_constant(const std::string& name) const {
  try {
    (void)constant(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

FieldElement NumberField::constant(const std::string& name) const {
  if (auto it = spec_.constants.find(name); it != spec_.constants.end())
    return from_coeffs(it->second);

  static const std::regex trig(R"(^(cos|sin|tan|cot|sec|csc)\((\d+)?\*?pi/(\d+)\)$)");
  std::smatch m;
  if (spec_.trig_base > 0 && std::regex_match(name, m, trig)) {
    const long k = m[2].matched ? std::stol(m[2].str()) : 1;
    const long n = std::stol(m[3].str());
    const std::string fn = m[1].str();
    if (fn == "cos") return cos_pi(k, n);
    if (fn == "sin") return sin_pi(k, n);
    if (fn == "tan") return sin_pi(k, n) / cos_pi(k, n);
    if (fn == "cot") return cos_pi(k, n) / sin_pi(k, n);
    if (fn == "sec") return cos_pi(k, n).inverse();
    return sin_pi(k, n).inverse();
  }

  std::ostringstream os;
  os << "unknown constant '" << name << "'; available:";
  for (const auto& [key, _] : spec_.constants) os << ' ' << key;
  if (spec_.trig_base > 0)
    os << " and cos/sin/tan/cot/sec/csc(k*pi/N) for N dividing " << spec_.trig_base;
  throw config_error(kModule, os.str());
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(const Rational& q) : den_(q.get_den()) {
  if (q != 0) num_.push_back(q.get_num());
}

FieldElement::FieldElement(FieldPtr field, std::vector<Integer> num, Integer den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw computation_error(kModule, "zero denominator");
  if (field_ && static_cast<int>(num_.size()) > field_->degree())
    throw computation_error(kModule, "coefficient vector longer than field degree");
  normalize();
}

void FieldElement::normalize() {
  while (!num_.empty() && num_.back() == 0) num_.pop_back();
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& c : num_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  den_ /= g;
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

FieldPtr FieldElement::common_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field_) return b.field_;
  if (!b.field_ || a.field_ == b.field_) return a.field_;
  throw computation_error(kModule, "operands belong to different number fields");
}

std::vector<Rational> FieldElement::coeffs() const {
  const size_t n = field_ ? static_cast<size_t>(field_->degree()) : 1;
  std::vector<Rational> out(n, Rational(0));
  for (size_t i = 0; i < num_.size(); ++i) {
    out[i] = Rational(num_[i], den_);
    out[i].canonicalize();
  }
  return out;
}

Rational FieldElement::to_rational() const {
  if (!is_rational()) throw computation_error(kModule, "element is not rational");
  if (num_.empty()) return Rational(0);
  Rational q(num_[0], den_);
  q.canonicalize();
  return q;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  field_ = common_field(*this, o);
  if (o.num_.empty()) return *this;
  if (num_.size() < o.num_.size()) num_.resize(o.num_.size(), Integer(0));
  if (den_ == o.den_) {
    for (size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (auto& c : num_) c *= o.den_;
    for (size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  field_ = common_field(*this, o);
  if (num_.empty()) return *this;
  if (o.num_.empty()) {
    num_.clear();
    den_ = 1;
    return *this;
  }
  std::vector<Integer> prod(num_.size() + o.num_.size() - 1, Integer(0));
  for (size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    for (size_t j = 0; j < o.num_.size(); ++j) {
      mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
    }
  }
  if (field_) {
    const auto& p = field_->spec().min_poly;
    const size_t d = p.size() - 1;
    for (size_t k = prod.size(); k-- > d;) {
      if (prod[k] == 0) continue;
      const Integer c = prod[k];
      for (size_t i = 0; i < d; ++i) mpz_submul(prod[k - d + i].get_mpz_t(), c.get_mpz_t(), p[i].get_mpz_t());
      prod[k] = 0;
    }
    if (prod.size() > d) prod.resize(d);
  }
  num_ = std::move(prod);
  den_ *= o.den_;
  normalize();
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (num_.empty()) throw computation_error(kModule, "division by zero element");
  if (num_.size() == 1) {
    Rational q(den_, num_[0]);
    q.canonicalize();
    FieldElement r(q);
    r.field_ = field_;
    return r;
  }
  // Extended Euclid over Q[x]: find s with s*a = 1 mod p.
  QPoly a, p;
  for (const auto& c : num_) a.emplace_back(c, den_);
  for (auto& c : a) c.canonicalize();
  for (const auto& c : field_->spec().min_poly) p.emplace_back(c);
  QPoly r0 = p, r1 = a, s0{}, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    if (r1.empty()) throw computation_error(kModule, "minimal polynomial is reducible (zero divisor found)");
    // q = r0 div r1
    QPoly rem = r0;
    QPoly q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, Rational(0));
    while (rem.size() >= r1.size()) {
      const Rational c = rem.back() / r1.back();
      const size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
      rem.pop_back();
      trim(rem);
    }
    // s2 = s0 - q*s1
    QPoly qs(q.size() + s1.size(), Rational(0));
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
    QPoly s2(std::max(s0.size(), qs.size()), Rational(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const Rational lead = r1[0];
  for (auto& c : s1) c /= lead;
  s1 = poly_mod(s1, p);
  return field_->from_coeffs(s1);
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

bool operator<(const FieldElement& a, const FieldElement& b) { return sign(b - a) > 0; }

int sign(const FieldElement& e) {
  const auto& num = e.numerators();
  if (num.empty()) return 0;
  if (num.size() == 1) return num[0] > 0 ? 1 : -1;
  const NumberField& f = *e.field();
  {
    auto [lo, hi] = enclose(num, f.coarse());
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  {
    auto [lo, hi] = enclose(num, f.fine());
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  for (long bits = 2 * f.fine().bits;; bits *= 2) {
    auto [lo, hi] = enclose(num, f.refine(bits));
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
}

Rational approx(const FieldElement& e, const Rational& eps) {
  if (eps <= 0) throw computation_error(kModule, "approx requires eps > 0");
  if (e.is_rational()) return e.to_rational();
  const auto& num = e.numerators();
  const NumberField& f = *e.field();
  auto try_level = [&](const NumberField::Dyadic& d, Rational& out) {
    auto [lo, hi] = enclose(num, d);
    Integer scale = e.denominator();
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(),
                 static_cast<mp_bitcnt_t>((num.size() - 1) * d.bits));
    Rational width(hi - lo, scale);
    width.canonicalize();
    if (width > 2 * eps) return false;
    out = Rational(lo + hi, 2 * scale);
    out.canonicalize();
    return true;
  };
  Rational out;
  if (try_level(f.coarse(), out)) return out;
  if (try_level(f.fine(), out)) return out;
  for (long bits = 2 * f.fine().bits;; bits *= 2)
    if (try_level(f.refine(bits), out)) return out;
}

double to_double(const FieldElement& e) {
  if (e.is_rational()) return e.to_rational().get_d();
  Rational eps(1);
  eps /= Rational(Integer(1) << 80);
  return approx(e, eps).get_d();
}

std::string to_decimal(const FieldElement& e, int decimals) {
  Integer ten_pow = 1;
  for (int i = 0; i < decimals; ++i) ten_pow *= 10;
  Rational eps(1, ten_pow * 100);
  eps.canonicalize();
  Rational q = approx(e, eps) * ten_pow;
  // round half away from zero
  Integer scaled = floor_q(abs(q) + Rational(1, 2));
  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= decimals)
    digits.insert(0, static_cast<size_t>(decimals - static_cast<int>(digits.size()) + 1), '0');
  std::string out = digits.substr(0, digits.size() - static_cast<size_t>(decimals));
  if (decimals > 0) out += "." + digits.substr(digits.size() - static_cast<size_t>(decimals));
  if (q < 0 && scaled != 0) out.insert(0, "-");
  return out;
}

std::string to_string(const FieldElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  const auto c = e.coeffs();
  bool first = true;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c[i].get_str();
    if (i == 1) os << "*t";
    if (i > 1) os << "*t^" << i;
  }
  return os.str();
}

}  // namespace slopegap
