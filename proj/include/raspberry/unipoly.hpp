#pragma once

// Univariate polynomials with exact integer coefficients, exact-rational
// Sturm root isolation, and interval-Newton root refinement.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "raspberry/numerics.hpp"

namespace raspberry {

class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<mpz_class> ascending) : c_(std::move(ascending)) {
    normalize();
  }
  static UniPoly from_ints(const std::vector<long>& ascending);
  // Monomial k·x^d.
  static UniPoly monomial(const mpz_class& k, int d);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const mpz_class& coeff(int i) const;
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& leading() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator-() const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  UniPoly derivative() const;
  mpz_class content() const;       // gcd of coefficients, sign of leading
  UniPoly primitive_part() const;  // positive leading coefficient
  UniPoly squarefree_part() const;
  static UniPoly gcd(const UniPoly& a, const UniPoly& b);
  // Exact division; throws if remainder nonzero.
  UniPoly divide_exact(const UniPoly& d) const;

  mpq_class eval_q(const mpq_class& x) const;
  int sign_at(const mpq_class& x) const;
  BigScalar eval(const BigScalar& x) const;
  Interval interval_eval(const Interval& x) const;

  // Associate equality: a = (p/q)·b for a nonzero rational p/q.
  static bool associates(const UniPoly& a, const UniPoly& b);

  std::string str(const std::string& var = "r") const;

private:
  std::vector<mpz_class> c_;  // c_[i]·x^i, leading nonzero
  void normalize();
};

// Exact rational interval [lo, hi] used by the isolation machinery.
struct RootBox {
  mpq_class lo, hi;
  bool exact() const { return lo == hi; }
};

// Sturm chain of a squarefree polynomial; counts real roots exactly.
class SturmChain {
public:
  explicit SturmChain(const UniPoly& squarefree);
  // Number of roots in the half-open interval (a, b].
  int count(const mpq_class& a, const mpq_class& b) const;

private:
  std::vector<UniPoly> seq_;
  int variations(const mpq_class& x) const;
};

// Each returned box contains exactly one real root of p (counted without
// multiplicity); their union contains every root of p in [domain].
std::vector<RootBox> isolate_real_roots_q(const UniPoly& p, const mpq_class& lo,
                                          const mpq_class& hi);

// Narrow an isolating box below the given rational width via interval Newton
// with bisection fallback. Box endpoints never cross the root.
RootBox refine_root_q(const UniPoly& p, RootBox box, const mpq_class& width);

// Spec-facing wrappers operating on Interval.
std::vector<Interval> isolate_real_roots(const UniPoly& p, const Interval& domain);
Interval refine_root(const UniPoly& p, const Interval& isolator, int digits);

}  // namespace raspberry
