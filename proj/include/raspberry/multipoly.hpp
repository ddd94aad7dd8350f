#pragma once

// Exact multivariate polynomials over the rationals, with the block term
// order the elimination pipeline needs: indeterminates belong to one of five
// blocks (sin/cos of dihedral angles, sin/cos of tangency angles, radii);
// blocks declared earlier are eliminated first, and comparison within a
// block is degree-reverse-lexicographic.
//
// Also hosts BiPoly, the dense bivariate integer polynomial in (r1, r2) the
// later stages work with (resultants, specialization, factor bookkeeping).

#include <gmpxx.h>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raspberry/numerics.hpp"
#include "raspberry/unipoly.hpp"

namespace raspberry {

class AlgebraError : public std::runtime_error {
 public:
  explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

enum class Block {
  SinDihedral,
  CosDihedral,
  SinTangency,
  CosTangency,
  Radius,
};

// Immutable list of named indeterminates with block membership.  Variables
// of one block must be declared contiguously; block declaration order is
// elimination order (earlier blocks are larger in the term order).
class PolyRing {
 public:
  explicit PolyRing(std::vector<std::pair<std::string, Block>> vars);

  int size() const { return static_cast<int>(vars_.size()); }
  const std::string& name(int i) const { return vars_[static_cast<size_t>(i)].first; }
  Block block(int i) const { return vars_[static_cast<size_t>(i)].second; }
  int index(const std::string& name) const;  // throws on unknown name
  // Contiguous [begin, end) runs of equal block, in declaration order.
  const std::vector<std::pair<int, int>>& block_ranges() const { return ranges_; }

 private:
  std::vector<std::pair<std::string, Block>> vars_;
  std::vector<std::pair<int, int>> ranges_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::pair<std::string, Block>> vars);

class MultiPoly {
 public:
  using Exps = std::vector<int>;
  using TermMap = std::map<Exps, mpq_class>;

  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
  static MultiPoly constant(RingPtr ring, const mpq_class& c);
  static MultiPoly var(RingPtr ring, int i, int power = 1);
  static MultiPoly var(RingPtr ring, const std::string& name, int power = 1);

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  int nterms() const { return static_cast<int>(terms_.size()); }
  const TermMap& terms() const { return terms_; }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const mpq_class& c, const MultiPoly& a);
  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  int degree(int var) const;    // -1 for the zero polynomial
  int total_degree() const;     // -1 for the zero polynomial
  bool even_in(int var) const;  // every term has even exponent in var
  bool uses(int var) const { return degree(var) > 0; }

  MultiPoly odd_part(int var) const;
  MultiPoly even_part(int var) const;

  // p with `var` := num/den, multiplied through by den^degree(var) so the
  // result is again polynomial.  den must be nonzero.
  MultiPoly substitute_rational(int var, const MultiPoly& num,
                                const MultiPoly& den) const;
  // p with var^(2k) := repl^k; throws if any term is odd in var.
  MultiPoly substitute_square(int var, const MultiPoly& repl) const;
  // Reinterpret into `target`; var_map[i] = index in target of this ring's
  // var i (several source vars may map to one target var).
  MultiPoly rename(RingPtr target, const std::vector<int>& var_map) const;

  template <typename T>
  T eval(const std::vector<T>& point) const;

  // Clear denominators, divide by integer content, and normalize the sign so
  // the lexicographically largest monomial has a positive coefficient.
  MultiPoly primitive_integer() const;

  std::string str() const;

  // Accumulate c * x^e, dropping the term if the coefficient cancels to zero.
  void add_term(const Exps& e, const mpq_class& c);

 private:
  RingPtr ring_;
  TermMap terms_;
};

// Block order over a ring: block runs compared first-to-last, degrevlex
// within each run.  compare(a, b) < 0 means a is smaller.
class TermOrder {
 public:
  explicit TermOrder(RingPtr ring) : ring_(std::move(ring)) {}
  int compare(const MultiPoly::Exps& a, const MultiPoly::Exps& b) const;
  // Largest monomial of p (nullptr for zero).
  const MultiPoly::Exps* leading(const MultiPoly& p) const;
  const RingPtr& ring() const { return ring_; }

 private:
  RingPtr ring_;
};

// Replace p = X + Y (X the odd part in each listed var) by X^2 - Y^2 until
// every listed var appears only with even exponents.  The zero set of p is
// contained in the zero set of the result.
MultiPoly group_and_square(MultiPoly p, const std::vector<int>& vars);

// ---- BiPoly ----------------------------------------------------------------

// Dense bivariate integer polynomial sum_j c_j(x) y^j; in pipeline use
// x = r1, y = r2.  Coefficients are exact integer univariates.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<UniPoly> y_coeffs);       // y_coeffs[j] multiplies y^j
  static BiPoly from_unipoly_in_x(const UniPoly& p);    // p(x) as a BiPoly
  static BiPoly from_unipoly_in_y(const UniPoly& p);
  static BiPoly constant(const mpz_class& c);

  bool is_zero() const { return coeffs_.empty(); }
  int degree_y() const { return static_cast<int>(coeffs_.size()) - 1; }
  int degree_x() const;
  const UniPoly& coeff_y(int j) const;                  // zero poly outside range
  const std::vector<UniPoly>& coeffs() const { return coeffs_; }
  const UniPoly& leading_y() const;                     // throws on zero

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  BiPoly operator-() const;
  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  BiPoly mul_scalar(const mpz_class& c) const;
  BiPoly mul_unipoly_in_x(const UniPoly& c) const;

  BiPoly derivative_y() const;
  BiPoly swap_xy() const;

  // gcd of the y-coefficients (a univariate in x, positive leading sign).
  UniPoly content_y() const;
  BiPoly primitive_part_y() const;
  // Integer content over both variables.
  mpz_class integer_content() const;

  // Specialize x := t, clearing denominators (result is primitive up to the
  // caller; roots in y are unchanged).
  UniPoly specialize_x(const mpq_class& t) const;
  UniPoly specialize_y(const mpq_class& t) const;

  mpq_class eval_q(const mpq_class& x, const mpq_class& y) const;
  template <typename T>
  T eval(const T& x, const T& y) const;

  // Exact division by a scalar univariate in x (each y-coefficient must
  // divide exactly).
  BiPoly divide_exact_unipoly_in_x(const UniPoly& d) const;

  std::string str(const std::string& xname = "r1",
                  const std::string& yname = "r2") const;

 private:
  void normalize();
  std::vector<UniPoly> coeffs_;
};

// Pseudo-remainder and pseudo-quotient of f by g in y:
// lc_y(g)^(deg f - deg g + 1) * f = q * g + r with deg_y r < deg_y g.
struct BiDivision {
  BiPoly quotient;
  BiPoly remainder;
  int power = 0;  // the lc exponent used
};
BiDivision pseudo_divide_y(const BiPoly& f, const BiPoly& g);

// Subresultant polynomial remainder sequence products.
UniPoly resultant_y(const BiPoly& f, const BiPoly& g);  // in x
BiPoly gcd_y(const BiPoly& f, const BiPoly& g);         // primitive gcd

// MultiPoly (over a 2-variable Radius ring) -> BiPoly with x = ring var 0,
// y = ring var 1; integer-primitive input expected.
BiPoly to_bipoly(const MultiPoly& p);

}  // namespace raspberry
