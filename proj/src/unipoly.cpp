#include "raspberry/unipoly.hpp"

#include <algorithm>
#include <sstream>

namespace raspberry {

void UniPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::from_ints(const std::vector<long>& ascending) {
  std::vector<mpz_class> c(ascending.begin(), ascending.end());
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monomial(const mpz_class& k, int d) {
  if (k == 0) return UniPoly();
  std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
  c.back() = k;
  return UniPoly(std::move(c));
}

const mpz_class& UniPoly::coeff(int i) const {
  static const mpz_class zero(0);
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<size_t>(i)];
}

const mpz_class& UniPoly::leading() const {
  if (is_zero()) throw NumericsError("leading coefficient of zero polynomial");
  return c_.back();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.c_.size()) c[i] += a.c_[i];
    if (i < b.c_.size()) c[i] += b.c_[i];
  }
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly UniPoly::operator-() const {
  std::vector<mpz_class> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::derivative() const {
  if (degree() <= 0) return UniPoly();
  std::vector<mpz_class> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(c));
}

mpz_class UniPoly::content() const {
  mpz_class g = 0;
  for (const auto& k : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
  if (!is_zero() && c_.back() < 0) g = -g;
  return g;
}

UniPoly UniPoly::primitive_part() const {
  if (is_zero()) return UniPoly();
  mpz_class g = content();
  std::vector<mpz_class> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] / g;
  return UniPoly(std::move(c));
}

namespace {

// Remainder of a/b over the rationals, returned as a primitive integer
// polynomial with the remainder's sign (scaling factor is positive).
UniPoly rational_rem_primitive(const UniPoly& a, const UniPoly& b) {
  std::vector<mpq_class> r(a.coeffs().begin(), a.coeffs().end());
  const auto& bc = b.coeffs();
  int db = b.degree();
  mpq_class blead(bc.back());
  while (static_cast<int>(r.size()) - 1 >= db) {
    mpq_class q = r.back() / blead;
    size_t shift = r.size() - 1 - static_cast<size_t>(db);
    for (int i = 0; i <= db; ++i) r[shift + static_cast<size_t>(i)] -= q * bc[static_cast<size_t>(i)];
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.empty()) break;
  }
  if (r.empty()) return UniPoly();
  // Clear denominators with a positive factor.
  mpz_class den(1);
  for (auto& q : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<mpz_class> c(r.size());
  for (size_t i = 0; i < r.size(); ++i) {
    mpq_class s = r[i] * den;
    c[i] = s.get_num();
  }
  UniPoly out{std::move(c)};
  mpz_class g = 0;
  for (const auto& k : out.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
  if (g > 1) {
    std::vector<mpz_class> cc(out.coeffs());
    for (auto& k : cc) k /= g;
    out = UniPoly(std::move(cc));
  }
  return out;
}

}  // namespace

UniPoly UniPoly::gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.primitive_part() * monomial(abs(b.content()), 0);
  if (b.is_zero()) return a.primitive_part() * monomial(abs(a.content()), 0);
  UniPoly f = a.primitive_part();
  UniPoly g = b.primitive_part();
  if (f.degree() < g.degree()) std::swap(f, g);
  while (!g.is_zero()) {
    UniPoly r = rational_rem_primitive(f, g);
    f = std::move(g);
    g = std::move(r);
  }
  mpz_class cont;
  mpz_class ca = abs(a.content()), cb = abs(b.content());
  mpz_gcd(cont.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  return f.primitive_part() * monomial(cont, 0);
}

UniPoly UniPoly::divide_exact(const UniPoly& d) const {
  if (d.is_zero()) throw NumericsError("division by zero polynomial");
  std::vector<mpq_class> r(c_.begin(), c_.end());
  const auto& dc = d.coeffs();
  int dd = d.degree();
  mpq_class dlead(dc.back());
  std::vector<mpq_class> q(static_cast<size_t>(std::max(0, degree() - dd + 1)));
  while (static_cast<int>(r.size()) - 1 >= dd && !r.empty()) {
    mpq_class t = r.back() / dlead;
    size_t shift = r.size() - 1 - static_cast<size_t>(dd);
    q[shift] = t;
    for (int i = 0; i <= dd; ++i) r[shift + static_cast<size_t>(i)] -= t * dc[static_cast<size_t>(i)];
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  for (const auto& rem : r)
    if (rem != 0) throw NumericsError("inexact polynomial division");
  std::vector<mpz_class> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1) throw NumericsError("non-integer quotient in exact division");
    qi[i] = q[i].get_num();
  }
  return UniPoly(std::move(qi));
}

UniPoly UniPoly::squarefree_part() const {
  if (degree() <= 1) return primitive_part();
  UniPoly g = gcd(*this, derivative());
  if (g.degree() == 0) return primitive_part();
  return primitive_part().divide_exact(g).primitive_part();
}

mpq_class UniPoly::eval_q(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

int UniPoly::sign_at(const mpq_class& x) const { return sgn(eval_q(x)); }

BigScalar UniPoly::eval(const BigScalar& x) const {
  BigScalar acc(0L);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + BigScalar(*it);
  return acc;
}

Interval UniPoly::interval_eval(const Interval& x) const {
  Interval acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * x + Interval::from_mpq(mpq_class(*it));
  return acc;
}

bool UniPoly::associates(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  if (a.degree() != b.degree()) return false;
  UniPoly pa = a.primitive_part();
  UniPoly pb = b.primitive_part();
  return pa == pb;
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& k = coeff(i);
    if (k == 0) continue;
    if (!first) os << (k > 0 ? " + " : " - ");
    else if (k < 0) os << "-";
    mpz_class a = ::abs(k);
    bool unit = (a == 1 && i > 0);
    if (!unit) os << a.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

// ---- Sturm ----------------------------------------------------------------

SturmChain::SturmChain(const UniPoly& squarefree) {
  seq_.push_back(squarefree.primitive_part());
  seq_.push_back(squarefree.derivative().primitive_part());
  while (!seq_.back().is_zero() && seq_.back().degree() > 0) {
    UniPoly r = rational_rem_primitive(seq_[seq_.size() - 2], seq_.back());
    seq_.push_back(-r);
  }
  if (seq_.back().is_zero()) seq_.pop_back();
}

int SturmChain::variations(const mpq_class& x) const {
  int v = 0, prev = 0;
  for (const auto& p : seq_) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int SturmChain::count(const mpq_class& a, const mpq_class& b) const {
  if (a >= b) return 0;
  return variations(a) - variations(b);
}

// ---- isolation ------------------------------------------------------------

std::vector<RootBox> isolate_real_roots_q(const UniPoly& p, const mpq_class& lo,
                                          const mpq_class& hi) {
  if (p.is_zero()) throw NumericsError("degenerate input");
  UniPoly q = p.squarefree_part();
  std::vector<RootBox> out;
  if (q.degree() <= 0 || lo > hi) return out;
  SturmChain chain(q);

  // Step strictly off an exact root at `x`, toward `toward`, far enough that
  // no other root lies between x and the returned point (which is non-root).
  auto step_off = [&](const mpq_class& x, const mpq_class& toward) {
    mpq_class delta = (toward - x) / 2;
    while (true) {
      mpq_class x2 = x + delta;
      x2.canonicalize();
      if (q.sign_at(x2) != 0) {
        // Roots strictly between x and x2; note count(u, v] includes v and
        // excludes u, and x itself is a root.
        int between = (delta > 0) ? chain.count(x, x2) : chain.count(x2, x) - 1;
        if (between == 0) return x2;
      }
      delta /= 2;
    }
  };

  // Normalize domain so both endpoints are non-roots; report endpoint roots.
  mpq_class a = lo, b = hi;
  if (a == b) {
    if (q.sign_at(a) == 0) out.push_back({a, a});
    return out;
  }
  if (q.sign_at(a) == 0) {
    out.push_back({a, a});
    a = step_off(a, b);
    if (a >= b) return out;
  }
  if (q.sign_at(b) == 0) {
    out.push_back({b, b});
    b = step_off(b, a);
    if (a >= b) {
      std::sort(out.begin(), out.end(),
                [](const RootBox& x, const RootBox& y) { return x.lo < y.lo; });
      return out;
    }
  }

  // Invariant: every stacked segment (s.a, s.b] has non-root endpoints, so
  // its Sturm count equals the number of roots strictly inside.
  struct Seg {
    mpq_class a, b;
    int count;
  };
  std::vector<Seg> stack;
  stack.push_back({a, b, chain.count(a, b)});
  while (!stack.empty()) {
    Seg s = std::move(stack.back());
    stack.pop_back();
    if (s.count == 0) continue;
    if (s.count == 1) {
      out.push_back({s.a, s.b});
      continue;
    }
    mpq_class m = (s.a + s.b) / 2;
    m.canonicalize();
    if (q.sign_at(m) == 0) {
      out.push_back({m, m});
      mpq_class ml = step_off(m, s.a);
      mpq_class mr = step_off(m, s.b);
      int left = chain.count(s.a, ml);
      int right = chain.count(mr, s.b);
      stack.push_back({s.a, ml, left});
      stack.push_back({mr, s.b, right});
    } else {
      int left = chain.count(s.a, m);
      stack.push_back({s.a, m, left});
      stack.push_back({m, s.b, s.count - left});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RootBox& x, const RootBox& y) { return x.lo < y.lo; });

  // Touching closed boxes share only a non-root endpoint; nudge the right
  // box's lower end inward so the returned boxes are pairwise disjoint.
  for (size_t i = 1; i < out.size(); ++i) {
    if (!out[i - 1].exact() && !out[i].exact() && out[i - 1].hi == out[i].lo) {
      RootBox& rb = out[i];
      int s_hi = q.sign_at(rb.hi);
      while (rb.lo == out[i - 1].hi) {
        mpq_class m = (rb.lo + rb.hi) / 2;
        m.canonicalize();
        int sm = q.sign_at(m);
        if (sm == 0) {
          rb.lo = rb.hi = m;
          break;
        }
        if (sm == s_hi) rb.hi = m;
        else rb.lo = m;
      }
    }
  }
  return out;
}

namespace {

// Outward rounding to dyadic rationals a few bits finer than the current
// width.  Interval-Newton endpoints otherwise compound into rationals whose
// representations square at every step, which stalls exact evaluation on
// polynomials with large coefficients.
void round_out_dyadic(mpq_class& lo, mpq_class& hi) {
  mpq_class w = hi - lo;
  if (sgn(w) <= 0) return;
  long num_bits = static_cast<long>(mpz_sizeinbase(w.get_num().get_mpz_t(), 2));
  long den_bits = static_cast<long>(mpz_sizeinbase(w.get_den().get_mpz_t(), 2));
  long k = den_bits - num_bits + 8;  // 2^-k is ~1/256 of the width
  if (k < 1) k = 1;
  mpz_class den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_class n, t;
  t = lo.get_num() * den;
  mpz_fdiv_q(n.get_mpz_t(), t.get_mpz_t(), lo.get_den().get_mpz_t());
  lo = mpq_class(n, den);
  lo.canonicalize();
  t = hi.get_num() * den;
  mpz_cdiv_q(n.get_mpz_t(), t.get_mpz_t(), hi.get_den().get_mpz_t());
  hi = mpq_class(n, den);
  hi.canonicalize();
}

}  // namespace

RootBox refine_root_q(const UniPoly& p, RootBox box, const mpq_class& width) {
  if (box.exact()) return box;
  UniPoly q = p.squarefree_part();
  if (q.sign_at(box.lo) == 0) return {box.lo, box.lo};
  if (q.sign_at(box.hi) == 0) return {box.hi, box.hi};
  int slo = q.sign_at(box.lo);
  int shi = q.sign_at(box.hi);
  if (slo == shi) throw NumericsError("non-isolating interval");
  UniPoly dq = q.derivative();

  // Rational interval evaluation of dq over [lo, hi] by monotone Horner
  // bounding: coarse min/max via coefficient sign splitting.
  auto dq_range = [&](const mpq_class& a, const mpq_class& b, mpq_class& mn, mpq_class& mx) {
    // Evaluate with simple rational interval Horner.
    mpq_class rlo = 0, rhi = 0;
    const auto& c = dq.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      // [rlo, rhi] * [a, b]
      mpq_class p1 = rlo * a, p2 = rlo * b, p3 = rhi * a, p4 = rhi * b;
      mpq_class lo2 = std::min(std::min(p1, p2), std::min(p3, p4));
      mpq_class hi2 = std::max(std::max(p1, p2), std::max(p3, p4));
      rlo = lo2 + mpq_class(*it);
      rhi = hi2 + mpq_class(*it);
    }
    mn = rlo;
    mx = rhi;
  };

  while (box.hi - box.lo >= width) {
    bool stepped = false;
    mpq_class dmin, dmax;
    dq_range(box.lo, box.hi, dmin, dmax);
    if (sgn(dmin) == sgn(dmax) && sgn(dmin) != 0) {
      // Interval Newton: m - q(m)/[dmin, dmax], intersected with the box.
      mpq_class m = (box.lo + box.hi) / 2;
      m.canonicalize();
      mpq_class fm = q.eval_q(m);
      if (fm == 0) return {m, m};
      mpq_class c1 = m - fm / dmin;
      mpq_class c2 = m - fm / dmax;
      mpq_class nlo = std::min(c1, c2), nhi = std::max(c1, c2);
      if (nlo < box.lo) nlo = box.lo;
      if (nhi > box.hi) nhi = box.hi;
      round_out_dyadic(nlo, nhi);
      if (nlo < box.lo) nlo = box.lo;
      if (nhi > box.hi) nhi = box.hi;
      if (nlo <= nhi && (nhi - nlo) < (box.hi - box.lo) * 3 / 4) {
        // Keep endpoint sign-straddle for robustness.
        int snlo = q.sign_at(nlo);
        int snhi = q.sign_at(nhi);
        if (snlo == 0) return {nlo, nlo};
        if (snhi == 0) return {nhi, nhi};
        if (snlo == slo && snhi == shi) {
          box.lo = nlo;
          box.hi = nhi;
          stepped = true;
        }
      }
    }
    if (!stepped) {
      mpq_class m = (box.lo + box.hi) / 2;
      m.canonicalize();
      int sm = q.sign_at(m);
      if (sm == 0) return {m, m};
      if (sm == slo) box.lo = m;
      else box.hi = m;
    }
  }
  return box;
}

std::vector<Interval> isolate_real_roots(const UniPoly& p, const Interval& domain) {
  mpq_class lo = domain.lo().to_mpq();
  mpq_class hi = domain.hi().to_mpq();
  std::vector<Interval> out;
  for (const auto& box : isolate_real_roots_q(p, lo, hi))
    out.push_back(Interval::from_mpq(box.lo, box.hi));
  return out;
}

Interval refine_root(const UniPoly& p, const Interval& isolator, int digits) {
  ScopedDigits guard(std::max(working_digits(), digits + 10));
  RootBox box{isolator.lo().to_mpq(), isolator.hi().to_mpq()};
  mpq_class width(1);
  for (int i = 0; i < digits; ++i) width /= 10;
  box = refine_root_q(p, box, width);
  return Interval::from_mpq(box.lo, box.hi);
}

}  // namespace raspberry
