#pragma once

// Exact arithmetic in Z[i] and Q(i), plus a multiprecision complex type for
// irrational inputs.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "hurwitz/big_float.hpp"

namespace hurwitz {

struct GaussianInt {
  mpz_class re;
  mpz_class im;

  GaussianInt() = default;
  GaussianInt(long r, long i = 0) : re(r), im(i) {}
  GaussianInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

  mpz_class norm() const { return re * re + im * im; }
  GaussianInt conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  bool fits_int64() const { return re.fits_slong_p() && im.fits_slong_p(); }
  std::string to_string() const;

  friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianInt operator-() const { return {-re, -im}; }
};

// Lexicographic (re, im); only used for deterministic ordering.
bool lex_less(const GaussianInt& a, const GaussianInt& b);

// Euclidean division with the quotient rounded by nearest_gaussian; the
// remainder r = a - q b satisfies N(r) <= N(b)/2.
std::pair<GaussianInt, GaussianInt> divmod(const GaussianInt& a, const GaussianInt& b);
GaussianInt gcd(GaussianInt a, GaussianInt b);

// The associate u*z (u a unit) with re > 0 and im >= 0; zero maps to zero.
GaussianInt normalize_associate(const GaussianInt& z);

class GaussianRational {
 public:
  GaussianRational() : num_(0), den_(1) {}
  GaussianRational(const GaussianInt& z) : num_(z), den_(1) {}
  GaussianRational(long v) : num_(v), den_(1) {}
  // Throws DivisionByZero when den == 0.
  GaussianRational(const GaussianInt& num, const GaussianInt& den);
  // (re_num/re_den) + i (im_num/im_den) from rational components.
  static GaussianRational from_components(const mpq_class& re, const mpq_class& im);
  // Skips the gcd: the caller guarantees gcd(num, den) is a unit.
  static GaussianRational coprime(const GaussianInt& num, const GaussianInt& den);

  const GaussianInt& num() const { return num_; }
  const GaussianInt& den() const { return den_; }
  mpq_class re() const;
  mpq_class im() const;
  // |z|^2 exactly.
  mpq_class norm() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_gaussian_int() const { return den_ == GaussianInt(1); }
  GaussianRational reciprocal() const;
  GaussianRational conj() const;
  std::string to_string() const;

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  GaussianRational operator-() const;

 private:
  struct Raw {};
  GaussianRational(Raw, GaussianInt num, GaussianInt den)
      : num_(std::move(num)), den_(std::move(den)) {}
  GaussianInt num_;
  GaussianInt den_;
};

class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = BigFloat::kDefaultPrecision) : re_(prec), im_(prec) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(const GaussianRational& z, mpfr_prec_t prec);
  BigComplex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  mpfr_prec_t precision() const { return std::max(re_.precision(), im_.precision()); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  BigFloat norm() const { return re_ * re_ + im_ * im_; }
  BigFloat abs() const { return sqrt(norm()); }
  BigComplex reciprocal() const;
  std::string to_string(int digits = 20) const;

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex operator-() const { return {-re_, -im_}; }

 private:
  BigFloat re_;
  BigFloat im_;
};

// Rounding behaviour for float inputs near a half-integer.
enum class BoundaryPolicy { kStrict, kLenient };

// floor(Re z + 1/2) + i floor(Im z + 1/2), exact.
GaussianInt nearest_gaussian(const GaussianRational& z);
// For floats, abs_error bounds |z - true value| componentwise. In strict mode
// a component closer than max(abs_error, 2^(8-prec) max(1,|x|)) to a
// half-integer raises AmbiguousRounding.
GaussianInt nearest_gaussian(const BigComplex& z,
                             BoundaryPolicy policy = BoundaryPolicy::kStrict,
                             double abs_error = 0.0);

struct Norms {
  double abs;
  double sup;
};
Norms norms(const GaussianInt& z);
Norms norms(const GaussianRational& z);
Norms norms(const BigComplex& z);

// -1/2 <= Re z < 1/2 and -1/2 <= Im z < 1/2.
bool in_fundamental_domain(const GaussianRational& z);
bool in_fundamental_domain(const BigComplex& z, BoundaryPolicy policy = BoundaryPolicy::kStrict,
                           double abs_error = 0.0);

}  // namespace hurwitz
