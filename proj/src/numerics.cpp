#include "raspberry/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

namespace raspberry {

namespace {

int g_digits = 60;
mpfr_prec_t g_bits = 0;

mpfr_prec_t bits_for_digits(int digits) {
  // ceil(digits * log2(10)) plus guard bits so decimal round-trips are safe.
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

struct PrecInit {
  PrecInit() { g_bits = bits_for_digits(g_digits); }
} g_prec_init;

}  // namespace

int working_digits() { return g_digits; }

void set_working_digits(int digits) {
  if (digits < 10) throw NumericsError("working precision below 10 digits");
  g_digits = digits;
  g_bits = bits_for_digits(digits);
}

mpfr_prec_t working_bits() { return g_bits; }

// ---- BigScalar -----------------------------------------------------------

void BigScalar::init() { mpfr_init2(v_, working_bits()); }

BigScalar::BigScalar() {
  init();
  mpfr_set_zero(v_, 1);
}

BigScalar::BigScalar(long n) {
  init();
  mpfr_set_si(v_, n, MPFR_RNDN);
}

BigScalar::BigScalar(const mpz_class& z) {
  init();
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

BigScalar::BigScalar(const mpq_class& q) {
  init();
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigScalar::BigScalar(const std::string& decimal) {
  init();
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
    throw NumericsError("unparseable decimal: " + decimal);
}

BigScalar::BigScalar(double d) {
  init();
  mpfr_set_d(v_, d, MPFR_RNDN);
}

BigScalar::BigScalar(const BigScalar& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigScalar::BigScalar(BigScalar&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigScalar& BigScalar::operator=(const BigScalar& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigScalar& BigScalar::operator=(BigScalar&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

BigScalar::~BigScalar() { mpfr_clear(v_); }

BigScalar BigScalar::pi() {
  BigScalar r;
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigScalar BigScalar::two_pi() {
  BigScalar r = pi();
  mpfr_mul_2si(r.v_, r.v_, 1, MPFR_RNDN);
  return r;
}

BigScalar BigScalar::pow10(long e) {
  BigScalar r;
  mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_si_div(r.v_, 1, r.v_, MPFR_RNDN);
  return r;
}

#define RASP_BINOP(name, fn)                                    \
  BigScalar operator name(const BigScalar& a, const BigScalar& b) { \
    BigScalar r;                                                \
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                   \
    return r;                                                   \
  }
RASP_BINOP(+, mpfr_add)
RASP_BINOP(-, mpfr_sub)
RASP_BINOP(*, mpfr_mul)
RASP_BINOP(/, mpfr_div)
#undef RASP_BINOP

BigScalar BigScalar::operator-() const {
  BigScalar r;
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

#define RASP_UNOP(name, fn)            \
  BigScalar name(const BigScalar& a) { \
    BigScalar r;                       \
    fn(r.raw(), a.raw(), MPFR_RNDN);   \
    return r;                          \
  }
RASP_UNOP(cos, mpfr_cos)
RASP_UNOP(sin, mpfr_sin)
RASP_UNOP(abs, mpfr_abs)
RASP_UNOP(exp, mpfr_exp)
#undef RASP_UNOP

BigScalar sqrt(const BigScalar& a) {
  if (a.sign() < 0) throw NumericsError("sqrt of negative value");
  BigScalar r;
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigScalar acos(const BigScalar& a) {
  if (mpfr_cmp_si(a.raw(), 1) > 0 || mpfr_cmp_si(a.raw(), -1) < 0)
    throw NumericsError("acos argument outside [-1, 1]");
  BigScalar r;
  mpfr_acos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigScalar log(const BigScalar& a) {
  if (a.sign() <= 0) throw NumericsError("log of non-positive value");
  BigScalar r;
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

BigScalar atan2(const BigScalar& y, const BigScalar& x) {
  BigScalar r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigScalar pow(const BigScalar& a, const BigScalar& b) {
  BigScalar r;
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

BigScalar max(const BigScalar& a, const BigScalar& b) { return a.cmp(b) >= 0 ? a : b; }
BigScalar min(const BigScalar& a, const BigScalar& b) { return a.cmp(b) <= 0 ? a : b; }

int BigScalar::sign() const {
  if (mpfr_nan_p(v_)) throw NumericsError("sign of NaN");
  return mpfr_sgn(v_);
}

bool BigScalar::is_nan() const { return mpfr_nan_p(v_) != 0; }

int BigScalar::cmp(const BigScalar& o) const {
  if (mpfr_nan_p(v_) || mpfr_nan_p(o.v_)) throw NumericsError("comparison with NaN");
  return mpfr_cmp(v_, o.v_);
}

double BigScalar::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

mpq_class BigScalar::to_mpq() const {
  if (!mpfr_number_p(v_)) throw NumericsError("to_mpq of non-finite value");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return q;
}

std::string BigScalar::str(int digits) const {
  if (digits <= 0) digits = working_digits();
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  std::string d = neg ? mant.substr(1) : mant;
  // Trim trailing zeros but keep at least one digit.
  size_t last = d.find_last_not_of('0');
  d = d.substr(0, last == std::string::npos ? 1 : last + 1);
  std::string out;
  if (e <= 0) {
    out = "0." + std::string(static_cast<size_t>(-e), '0') + d;
  } else if (static_cast<size_t>(e) >= d.size()) {
    out = d + std::string(static_cast<size_t>(e) - d.size(), '0');
  } else {
    out = d.substr(0, static_cast<size_t>(e)) + "." + d.substr(static_cast<size_t>(e));
  }
  return neg ? "-" + out : out;
}

// ---- Interval ------------------------------------------------------------

void Interval::check() const {
  if (lo_.is_nan() || hi_.is_nan()) throw NumericsError("interval endpoint NaN");
  if (lo_.cmp(hi_) > 0) throw NumericsError("interval lo > hi");
}

Interval::Interval() : lo_(0L), hi_(0L) {}

Interval::Interval(const BigScalar& point) : lo_(point), hi_(point) { check(); }

Interval::Interval(const BigScalar& lo, const BigScalar& hi) : lo_(lo), hi_(hi) { check(); }

Interval Interval::from_mpq(const mpq_class& q) { return from_mpq(q, q); }

Interval Interval::from_mpq(const mpq_class& lo, const mpq_class& hi) {
  Interval r;
  mpfr_set_q(r.lo_.raw(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.raw(), hi.get_mpq_t(), MPFR_RNDU);
  r.check();
  return r;
}

Interval Interval::from_string(const std::string& lo, const std::string& hi) {
  Interval r;
  if (mpfr_set_str(r.lo_.raw(), lo.c_str(), 10, MPFR_RNDD) != 0)
    throw NumericsError("unparseable decimal: " + lo);
  if (mpfr_set_str(r.hi_.raw(), hi.c_str(), 10, MPFR_RNDU) != 0)
    throw NumericsError("unparseable decimal: " + hi);
  r.check();
  return r;
}

Interval Interval::pi() {
  Interval r;
  mpfr_const_pi(r.lo_.raw(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::two_pi() {
  Interval r = pi();
  mpfr_mul_2si(r.lo_.raw(), r.lo_.raw(), 1, MPFR_RNDD);
  mpfr_mul_2si(r.hi_.raw(), r.hi_.raw(), 1, MPFR_RNDU);
  return r;
}

BigScalar Interval::mid() const {
  BigScalar m;
  mpfr_add(m.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
  mpfr_mul_2si(m.raw(), m.raw(), -1, MPFR_RNDN);
  return m;
}

BigScalar Interval::width() const {
  BigScalar w;
  mpfr_sub(w.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
  return w;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_add(r.lo_.raw(), a.lo_.raw(), b.lo_.raw(), MPFR_RNDD);
  mpfr_add(r.hi_.raw(), a.hi_.raw(), b.hi_.raw(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_sub(r.lo_.raw(), a.lo_.raw(), b.hi_.raw(), MPFR_RNDD);
  mpfr_sub(r.hi_.raw(), a.hi_.raw(), b.lo_.raw(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  // Four candidate products, each rounded down for lo and up for hi.
  mpfr_t c, lo, hi;
  mpfr_init2(c, working_bits());
  mpfr_init2(lo, working_bits());
  mpfr_init2(hi, working_bits());
  mpfr_set_inf(lo, 1);
  mpfr_set_inf(hi, -1);
  const mpfr_srcptr as[2] = {a.lo_.raw(), a.hi_.raw()};
  const mpfr_srcptr bs[2] = {b.lo_.raw(), b.hi_.raw()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(c, as[i], bs[j], MPFR_RNDD);
      if (mpfr_cmp(c, lo) < 0) mpfr_set(lo, c, MPFR_RNDD);
      mpfr_mul(c, as[i], bs[j], MPFR_RNDU);
      if (mpfr_cmp(c, hi) > 0) mpfr_set(hi, c, MPFR_RNDU);
    }
  Interval r;
  mpfr_set(r.lo_.raw(), lo, MPFR_RNDD);
  mpfr_set(r.hi_.raw(), hi, MPFR_RNDU);
  mpfr_clear(c);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw NumericsError("interval division by zero-containing interval");
  mpfr_t c, lo, hi;
  mpfr_init2(c, working_bits());
  mpfr_init2(lo, working_bits());
  mpfr_init2(hi, working_bits());
  mpfr_set_inf(lo, 1);
  mpfr_set_inf(hi, -1);
  const mpfr_srcptr as[2] = {a.lo_.raw(), a.hi_.raw()};
  const mpfr_srcptr bs[2] = {b.lo_.raw(), b.hi_.raw()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_div(c, as[i], bs[j], MPFR_RNDD);
      if (mpfr_cmp(c, lo) < 0) mpfr_set(lo, c, MPFR_RNDD);
      mpfr_div(c, as[i], bs[j], MPFR_RNDU);
      if (mpfr_cmp(c, hi) > 0) mpfr_set(hi, c, MPFR_RNDU);
    }
  Interval r;
  mpfr_set(r.lo_.raw(), lo, MPFR_RNDD);
  mpfr_set(r.hi_.raw(), hi, MPFR_RNDU);
  mpfr_clear(c);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return r;
}

Interval Interval::operator-() const {
  Interval r;
  mpfr_neg(r.lo_.raw(), hi_.raw(), MPFR_RNDD);
  mpfr_neg(r.hi_.raw(), lo_.raw(), MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (a.lo().sign() < 0) throw NumericsError("sqrt of interval with negative lower endpoint");
  Interval r;
  mpfr_sqrt(r.lo_.raw(), a.lo_.raw(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.raw(), a.hi_.raw(), MPFR_RNDU);
  return r;
}

Interval acos(const Interval& a) {
  if (mpfr_cmp_si(a.lo_.raw(), -1) < 0 || mpfr_cmp_si(a.hi_.raw(), 1) > 0)
    throw NumericsError("acos interval outside [-1, 1]");
  // acos is monotone decreasing: lo of result from hi of input.
  Interval r;
  mpfr_acos(r.lo_.raw(), a.hi_.raw(), MPFR_RNDD);
  mpfr_acos(r.hi_.raw(), a.lo_.raw(), MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (a.lo_.sign() >= 0) return a;
  if (a.hi_.sign() <= 0) return -a;
  Interval r;
  mpfr_set_zero(r.lo_.raw(), 1);
  mpfr_neg(r.hi_.raw(), a.lo_.raw(), MPFR_RNDU);
  if (mpfr_cmp(a.hi_.raw(), r.hi_.raw()) > 0) mpfr_set(r.hi_.raw(), a.hi_.raw(), MPFR_RNDU);
  return r;
}

Interval Interval::mul_int(long k) const {
  Interval r;
  if (k >= 0) {
    mpfr_mul_si(r.lo_.raw(), lo_.raw(), k, MPFR_RNDD);
    mpfr_mul_si(r.hi_.raw(), hi_.raw(), k, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_.raw(), hi_.raw(), k, MPFR_RNDD);
    mpfr_mul_si(r.hi_.raw(), lo_.raw(), k, MPFR_RNDU);
  }
  return r;
}

bool Interval::contains(const BigScalar& x) const {
  return lo_.cmp(x) <= 0 && x.cmp(hi_) <= 0;
}

bool Interval::contains(const mpq_class& x) const {
  return mpfr_cmp_q(lo_.raw(), x.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.raw(), x.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return lo_.cmp(inner.lo_) <= 0 && inner.hi_.cmp(hi_) <= 0;
}

bool Interval::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

bool Interval::intersects(const Interval& o) const {
  return !(hi_.cmp(o.lo_) < 0 || o.hi_.cmp(lo_) < 0);
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  return Interval(min(a.lo_, b.lo_), max(a.hi_, b.hi_));
}

Interval Interval::intersect(const Interval& a, const Interval& b) {
  if (!a.intersects(b)) throw NumericsError("empty intersection");
  return Interval(max(a.lo_, b.lo_), min(a.hi_, b.hi_));
}

Interval Interval::inflate(const BigScalar& eps) const {
  if (eps.sign() < 0) throw NumericsError("negative inflation");
  Interval r;
  mpfr_sub(r.lo_.raw(), lo_.raw(), eps.raw(), MPFR_RNDD);
  mpfr_add(r.hi_.raw(), hi_.raw(), eps.raw(), MPFR_RNDU);
  return r;
}

std::string Interval::str(int digits) const {
  return "[" + lo_.str(digits) + ", " + hi_.str(digits) + "]";
}

}  // namespace raspberry
