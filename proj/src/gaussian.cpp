#include "hurwitz/gaussian.hpp"

#include <cmath>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::string GaussianInt::to_string() const {
  if (im == 0) return re.get_str();
  std::string imag;
  if (im == 1) {
    imag = "i";
  } else if (im == -1) {
    imag = "-i";
  } else {
    imag = im.get_str() + "i";
  }
  if (re == 0) return imag;
  if (im > 0) return re.get_str() + "+" + imag;
  return re.get_str() + imag;
}

bool lex_less(const GaussianInt& a, const GaussianInt& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

namespace {

// floor(n/d + 1/2) for d > 0.
mpz_class round_half_up(const mpz_class& n, const mpz_class& d) {
  mpz_class out;
  mpz_class num = 2 * n + d;
  mpz_class den = 2 * d;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

// a / b for b | a.
GaussianInt exact_div(const GaussianInt& a, const GaussianInt& b) {
  const GaussianInt t = a * b.conj();
  const mpz_class n = b.norm();
  GaussianInt q;
  mpz_divexact(q.re.get_mpz_t(), t.re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), t.im.get_mpz_t(), n.get_mpz_t());
  return q;
}

// Unit u with u*z in the normalised quadrant.
GaussianInt normalizing_unit(const GaussianInt& z) {
  if (z.re > 0 && z.im >= 0) return {1, 0};
  if (z.re <= 0 && z.im > 0) return {0, -1};
  if (z.re < 0 && z.im <= 0) return {-1, 0};
  return {0, 1};
}

}  // namespace

std::pair<GaussianInt, GaussianInt> divmod(const GaussianInt& a, const GaussianInt& b) {
  if (b.is_zero()) throw DivisionByZero("Gaussian division by zero");
  const GaussianInt t = a * b.conj();
  const mpz_class n = b.norm();
  GaussianInt q(round_half_up(t.re, n), round_half_up(t.im, n));
  GaussianInt r = a - q * b;
  return {std::move(q), std::move(r)};
}

GaussianInt gcd(GaussianInt a, GaussianInt b) {
  while (!b.is_zero()) {
    GaussianInt r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return normalize_associate(a);
}

GaussianInt normalize_associate(const GaussianInt& z) {
  if (z.is_zero()) return z;
  return normalizing_unit(z) * z;
}

GaussianRational::GaussianRational(const GaussianInt& num, const GaussianInt& den) {
  if (den.is_zero()) throw DivisionByZero("Gaussian rational with zero denominator");
  if (num.is_zero()) {
    num_ = GaussianInt(0);
    den_ = GaussianInt(1);
    return;
  }
  const GaussianInt g = gcd(num, den);
  GaussianInt n = exact_div(num, g);
  GaussianInt d = exact_div(den, g);
  const GaussianInt u = normalizing_unit(d);
  num_ = u * n;
  den_ = u * d;
}

GaussianRational GaussianRational::coprime(const GaussianInt& num, const GaussianInt& den) {
  if (den.is_zero()) throw DivisionByZero("Gaussian rational with zero denominator");
  if (num.is_zero()) return {};
  const GaussianInt u = normalizing_unit(den);
  return GaussianRational(Raw{}, u * num, u * den);
}

GaussianRational GaussianRational::from_components(const mpq_class& re, const mpq_class& im) {
  // re = a/b, im = c/d  ->  (a d + i c b) / (b d)
  const mpz_class& a = re.get_num();
  const mpz_class& b = re.get_den();
  const mpz_class& c = im.get_num();
  const mpz_class& d = im.get_den();
  return GaussianRational(GaussianInt(a * d, c * b), GaussianInt(b * d, 0));
}

mpq_class GaussianRational::re() const {
  const GaussianInt t = num_ * den_.conj();
  mpq_class q(t.re, den_.norm());
  q.canonicalize();
  return q;
}

mpq_class GaussianRational::im() const {
  const GaussianInt t = num_ * den_.conj();
  mpq_class q(t.im, den_.norm());
  q.canonicalize();
  return q;
}

mpq_class GaussianRational::norm() const {
  mpq_class q(num_.norm(), den_.norm());
  q.canonicalize();
  return q;
}

GaussianRational GaussianRational::reciprocal() const {
  if (is_zero()) throw DivisionByZero("reciprocal of zero");
  const GaussianInt u = normalizing_unit(num_);
  return GaussianRational(Raw{}, u * den_, u * num_);
}

GaussianRational GaussianRational::conj() const {
  // conj(den) has re > 0, im <= 0; rotate back into the quadrant.
  const GaussianInt d = den_.conj();
  const GaussianInt u = normalizing_unit(d);
  return GaussianRational(Raw{}, u * num_.conj(), u * d);
}

std::string GaussianRational::to_string() const {
  if (is_gaussian_int()) return num_.to_string();
  const std::string n = num_.im == 0 ? num_.to_string() : "(" + num_.to_string() + ")";
  if (den_.im == 0) return n + "/" + den_.re.get_str();
  return n + "/(" + den_.to_string() + ")";
}

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
  if (a.den_ == b.den_) return GaussianRational(a.num_ + b.num_, a.den_);
  return GaussianRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
  if (a.den_ == b.den_) return GaussianRational(a.num_ - b.num_, a.den_);
  return GaussianRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return GaussianRational(a.num_ * b.num_, a.den_ * b.den_);
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw DivisionByZero("Gaussian rational division by zero");
  return GaussianRational(a.num_ * b.den_, a.den_ * b.num_);
}

GaussianRational GaussianRational::operator-() const { return GaussianRational(Raw{}, -num_, den_); }

BigComplex::BigComplex(const GaussianRational& z, mpfr_prec_t prec)
    : re_(z.re(), prec), im_(z.im(), prec) {}

BigComplex BigComplex::reciprocal() const {
  if (is_zero()) throw DivisionByZero("reciprocal of complex zero");
  const BigFloat n = norm();
  return {re_ / n, -(im_ / n)};
}

std::string BigComplex::to_string(int digits) const {
  std::string r = re_.to_string(digits);
  std::string i = im_.to_string(digits);
  if (i.front() == '-') return r + i + "i";
  return r + "+" + i + "i";
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return {a.re_ + b.re_, a.im_ + b.im_};
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return {a.re_ - b.re_, a.im_ - b.im_};
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  return a * b.reciprocal();
}

GaussianInt nearest_gaussian(const GaussianRational& z) {
  const GaussianInt t = z.num() * z.den().conj();
  const mpz_class n = z.den().norm();
  return {round_half_up(t.re, n), round_half_up(t.im, n)};
}

namespace {

// Distance-to-tie tolerance for one float component.
double tie_tolerance(const BigFloat& x, double abs_error) {
  const double mag = std::max(1.0, std::fabs(x.to_double()));
  const double rel = std::ldexp(mag, 8 - static_cast<int>(x.precision()));
  return std::max(abs_error, rel);
}

mpz_class round_component(const BigFloat& x, BoundaryPolicy policy, double abs_error,
                          const char* which) {
  const BigFloat half(0.5, x.precision());
  const BigFloat y = x + half;
  mpz_class f = y.floor_int();
  if (policy == BoundaryPolicy::kStrict) {
    const BigFloat lo = y - BigFloat(f, x.precision());
    const BigFloat hi = BigFloat(mpz_class(f + 1), x.precision()) - y;
    const double dist = std::min(lo.to_double(), hi.to_double());
    if (dist <= tie_tolerance(x, abs_error)) {
      throw AmbiguousRounding(std::string(which) + " component " + x.to_string(12) +
                              " is within precision of a half-integer");
    }
  }
  return f;
}

// -1/2 <= x < 1/2 with the same tolerance rule.
bool in_half_open(const BigFloat& x, BoundaryPolicy policy, double abs_error) {
  const BigFloat half(0.5, x.precision());
  if (policy == BoundaryPolicy::kStrict) {
    const double tol = tie_tolerance(x, abs_error);
    const double d1 = abs(x - half).to_double();
    const double d2 = abs(x + half).to_double();
    if (d1 <= tol || d2 <= tol) {
      throw AmbiguousRounding("component " + x.to_string(12) + " is within precision of +-1/2");
    }
  }
  return x >= -half && x < half;
}

}  // namespace

GaussianInt nearest_gaussian(const BigComplex& z, BoundaryPolicy policy, double abs_error) {
  return {round_component(z.re(), policy, abs_error, "real"),
          round_component(z.im(), policy, abs_error, "imaginary")};
}

Norms norms(const GaussianInt& z) {
  const double re = std::fabs(z.re.get_d());
  const double im = std::fabs(z.im.get_d());
  return {std::sqrt(z.norm().get_d()), std::max(re, im)};
}

Norms norms(const GaussianRational& z) {
  const mpq_class re = abs(z.re());
  const mpq_class im = abs(z.im());
  const mpq_class sup = re > im ? re : im;
  return {std::sqrt(z.norm().get_d()), sup.get_d()};
}

Norms norms(const BigComplex& z) {
  const double re = std::fabs(z.re().to_double());
  const double im = std::fabs(z.im().to_double());
  return {z.abs().to_double(), std::max(re, im)};
}

bool in_fundamental_domain(const GaussianRational& z) {
  const mpq_class half(1, 2);
  const mpq_class re = z.re();
  const mpq_class im = z.im();
  return re >= -half && re < half && im >= -half && im < half;
}

bool in_fundamental_domain(const BigComplex& z, BoundaryPolicy policy, double abs_error) {
  const bool re = in_half_open(z.re(), policy, abs_error);
  const bool im = in_half_open(z.im(), policy, abs_error);
  return re && im;
}

}  // namespace hurwitz
