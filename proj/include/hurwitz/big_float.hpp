#pragma once

// Small RAII wrapper over mpfr_t. Every operation rounds to nearest at the
// precision of the destination, which is the larger operand precision.

#include <mpfr.h>

#include <gmpxx.h>

#include <string>

namespace hurwitz {

class BigFloat {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(const mpz_class& v, mpfr_prec_t prec);
  BigFloat(const mpq_class& v, mpfr_prec_t prec);
  // Parses a decimal string; throws ParseError on malformed input.
  BigFloat(const std::string& decimal, mpfr_prec_t prec);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // floor(x) as an exact integer. x must be finite.
  mpz_class floor_int() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent() const;
  std::string to_string(int digits = 20) const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;

  friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }

 private:
  mpfr_t v_;
};

BigFloat sqrt(const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat pi(mpfr_prec_t prec);
// ulp-scale constant 2^e at the given precision.
BigFloat pow2(long e, mpfr_prec_t prec);

}  // namespace hurwitz
