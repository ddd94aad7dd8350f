#pragma once

// Arbitrary-precision scalars (MPFR-backed) and outward-rounded interval
// arithmetic. All radii are dimensionless multiples of the pit radius r0 = 1.
//
// Precision model: a process-global working precision, set in decimal digits
// and converted to bits with guard margin. Every operation rounds its result
// at the working precision; BigScalar uses round-to-nearest, Interval rounds
// lo toward -inf and hi toward +inf so enclosures stay sound. Endpoints are
// MPFR numbers, i.e. exact dyadic rationals, so reruns are bit-identical.

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace raspberry {

class NumericsError : public std::runtime_error {
public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

// ---- working precision --------------------------------------------------

int working_digits();                // default 60 decimal digits
void set_working_digits(int digits); // digits >= 10
mpfr_prec_t working_bits();

// RAII: temporarily switch working precision.
class ScopedDigits {
public:
  explicit ScopedDigits(int digits) : saved_(working_digits()) {
    set_working_digits(digits);
  }
  ~ScopedDigits() { set_working_digits(saved_); }
  ScopedDigits(const ScopedDigits&) = delete;
  ScopedDigits& operator=(const ScopedDigits&) = delete;

private:
  int saved_;
};

// ---- BigScalar -----------------------------------------------------------

class BigScalar {
public:
  BigScalar();                       // zero at working precision
  BigScalar(long n);                 // NOLINT: implicit by design for literals
  BigScalar(int n) : BigScalar(static_cast<long>(n)) {}  // NOLINT
  explicit BigScalar(const mpz_class& z);
  explicit BigScalar(const mpq_class& q);
  explicit BigScalar(const std::string& decimal);
  explicit BigScalar(const char* decimal) : BigScalar(std::string(decimal)) {}
  explicit BigScalar(double d);

  BigScalar(const BigScalar& o);
  BigScalar(BigScalar&& o) noexcept;
  BigScalar& operator=(const BigScalar& o);
  BigScalar& operator=(BigScalar&& o) noexcept;
  ~BigScalar();

  static BigScalar pi();
  static BigScalar two_pi();

  friend BigScalar operator+(const BigScalar& a, const BigScalar& b);
  friend BigScalar operator-(const BigScalar& a, const BigScalar& b);
  friend BigScalar operator*(const BigScalar& a, const BigScalar& b);
  friend BigScalar operator/(const BigScalar& a, const BigScalar& b);
  BigScalar operator-() const;
  BigScalar& operator+=(const BigScalar& b) { return *this = *this + b; }
  BigScalar& operator-=(const BigScalar& b) { return *this = *this - b; }
  BigScalar& operator*=(const BigScalar& b) { return *this = *this * b; }
  BigScalar& operator/=(const BigScalar& b) { return *this = *this / b; }

  friend BigScalar sqrt(const BigScalar& a);  // a >= 0 required
  friend BigScalar acos(const BigScalar& a);  // a in [-1, 1] required
  friend BigScalar cos(const BigScalar& a);
  friend BigScalar sin(const BigScalar& a);
  friend BigScalar atan2(const BigScalar& y, const BigScalar& x);
  friend BigScalar abs(const BigScalar& a);
  friend BigScalar exp(const BigScalar& a);
  friend BigScalar log(const BigScalar& a);
  friend BigScalar pow(const BigScalar& a, const BigScalar& b);
  friend BigScalar max(const BigScalar& a, const BigScalar& b);
  friend BigScalar min(const BigScalar& a, const BigScalar& b);

  int sign() const;                  // -1, 0, +1
  bool is_nan() const;
  int cmp(const BigScalar& o) const; // exact comparison
  friend bool operator<(const BigScalar& a, const BigScalar& b) { return a.cmp(b) < 0; }
  friend bool operator>(const BigScalar& a, const BigScalar& b) { return a.cmp(b) > 0; }
  friend bool operator<=(const BigScalar& a, const BigScalar& b) { return a.cmp(b) <= 0; }
  friend bool operator>=(const BigScalar& a, const BigScalar& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const BigScalar& a, const BigScalar& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const BigScalar& a, const BigScalar& b) { return a.cmp(b) != 0; }

  // 10^e at working precision (e may be negative); handy for tolerances.
  static BigScalar pow10(long e);

  double to_double() const;
  mpq_class to_mpq() const;          // exact (value is a dyadic rational)
  // Decimal string with the given significant digits (default: working digits).
  std::string str(int digits = -1) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

private:
  mpfr_t v_;
  void init();
};

// ---- Interval ------------------------------------------------------------

class Interval {
public:
  Interval();                              // [0, 0]
  Interval(const BigScalar& point);        // NOLINT: degenerate interval
  Interval(const BigScalar& lo, const BigScalar& hi);
  static Interval from_mpq(const mpq_class& q);                  // outward
  static Interval from_mpq(const mpq_class& lo, const mpq_class& hi);
  static Interval from_string(const std::string& lo, const std::string& hi);
  static Interval pi();
  static Interval two_pi();

  const BigScalar& lo() const { return lo_; }
  const BigScalar& hi() const { return hi_; }
  BigScalar mid() const;
  BigScalar width() const;                 // rounded up

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b); // b must not contain 0
  Interval operator-() const;
  friend Interval sqrt(const Interval& a);  // a.lo >= 0 required
  friend Interval acos(const Interval& a);  // a within [-1,1]; monotone endpoints
  friend Interval abs(const Interval& a);
  Interval mul_int(long k) const;

  bool contains(const BigScalar& x) const;
  bool contains(const mpq_class& x) const;
  bool contains(const Interval& inner) const;  // inner subset of this
  bool contains_zero() const;
  bool intersects(const Interval& o) const;
  static Interval hull(const Interval& a, const Interval& b);
  // Intersection; throws NumericsError("empty intersection") if disjoint.
  static Interval intersect(const Interval& a, const Interval& b);

  // Widen both endpoints outward by eps (eps >= 0).
  Interval inflate(const BigScalar& eps) const;

  std::string str(int digits = -1) const;

private:
  BigScalar lo_, hi_;
  void check() const;
};

}  // namespace raspberry
