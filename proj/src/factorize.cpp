#include "raspberry/factorize.hpp"

#include <algorithm>
#include <numeric>

namespace raspberry {

namespace {

// ---- rational dense polynomials (small local helper) -----------------------

using QPoly = std::vector<mpq_class>;  // ascending, no trailing zeros

void q_trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int q_deg(const QPoly& a) { return static_cast<int>(a.size()) - 1; }

QPoly q_from(const UniPoly& p) {
  QPoly a;
  for (int i = 0; i <= p.degree(); ++i) a.emplace_back(p.coeff(i));
  return a;
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

QPoly q_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  q_trim(a);
  return a;
}

// classical division; returns {quotient, remainder}
std::pair<QPoly, QPoly> q_divmod(QPoly a, const QPoly& b) {
  if (b.empty()) throw AlgebraError("division by zero");
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, mpq_class(0));
  while (q_deg(a) >= q_deg(b)) {
    int shift = q_deg(a) - q_deg(b);
    mpq_class f = a.back() / b.back();
    q[static_cast<size_t>(shift)] = f;
    for (size_t i = 0; i < b.size(); ++i)
      a[static_cast<size_t>(shift) + i] -= f * b[i];
    q_trim(a);
  }
  q_trim(q);
  return {q, a};
}

// ---- p-adic integer polynomials (coefficients mod m) ------------------------

using ZPoly = std::vector<mpz_class>;  // ascending

void z_trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int z_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly z_mod(ZPoly a, const mpz_class& m) {
  for (auto& c : a) {
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  }
  z_trim(a);
  return a;
}

ZPoly z_add(ZPoly a, const ZPoly& b, const mpz_class& m) {
  if (a.size() < b.size()) a.resize(b.size(), mpz_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return z_mod(std::move(a), m);
}

ZPoly z_sub(ZPoly a, const ZPoly& b, const mpz_class& m) {
  if (a.size() < b.size()) a.resize(b.size(), mpz_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return z_mod(std::move(a), m);
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return z_mod(std::move(c), m);
}

// divmod by a monic divisor, all mod m
std::pair<ZPoly, ZPoly> z_divmod_monic(ZPoly a, const ZPoly& b,
                                       const mpz_class& m) {
  ZPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, mpz_class(0));
  while (z_deg(a) >= z_deg(b)) {
    int shift = z_deg(a) - z_deg(b);
    mpz_class f = a.back();
    q[static_cast<size_t>(shift)] = f;
    for (size_t i = 0; i < b.size(); ++i)
      a[static_cast<size_t>(shift) + i] -= f * b[i];
    a = z_mod(std::move(a), m);
  }
  return {z_mod(std::move(q), m), std::move(a)};
}

// ---- arithmetic mod a small prime -------------------------------------------

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    long q = r / nr;
    long t2 = t - q * nt;
    long r2 = r - q * nr;
    t = nt;
    nt = t2;
    r = nr;
    nr = r2;
  }
  if (r != 1) throw AlgebraError("non-invertible residue");
  return t < 0 ? t + p : t;
}

using PPoly = std::vector<long>;  // ascending, coefficients in [0, p)

void p_trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int p_deg(const PPoly& a) { return static_cast<int>(a.size()) - 1; }

PPoly p_from(const UniPoly& f, long p) {
  PPoly a(static_cast<size_t>(f.degree()) + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    mpz_class r = f.coeff(i) % p;
    long v = r.get_si() % p;
    a[static_cast<size_t>(i)] = v < 0 ? v + p : v;
  }
  p_trim(a);
  return a;
}

PPoly p_mul(const PPoly& a, const PPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  PPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  p_trim(c);
  return c;
}

PPoly p_sub(PPoly a, const PPoly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] - b[i] % p + p) % p;
  p_trim(a);
  return a;
}

std::pair<PPoly, PPoly> p_divmod(PPoly a, const PPoly& b, long p) {
  if (b.empty()) throw AlgebraError("division by zero");
  long binv = inv_mod(b.back(), p);
  PPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (p_deg(a) >= p_deg(b)) {
    int shift = p_deg(a) - p_deg(b);
    long f = a.back() * binv % p;
    q[static_cast<size_t>(shift)] = f;
    for (size_t i = 0; i < b.size(); ++i)
      a[static_cast<size_t>(shift) + i] =
          ((a[static_cast<size_t>(shift) + i] - f * b[i]) % p + p) % p;
    p_trim(a);
  }
  return {q, a};
}

PPoly p_monic(PPoly a, long p) {
  if (a.empty()) return a;
  long inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

PPoly p_gcd(PPoly a, PPoly b, long p) {
  while (!b.empty()) {
    auto [q, r] = p_divmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return p_monic(a, p);
}

PPoly p_derivative(const PPoly& a, long p) {
  PPoly d;
  for (size_t i = 1; i < a.size(); ++i)
    d.push_back(static_cast<long>(i % static_cast<size_t>(p)) * a[i] % p);
  p_trim(d);
  return d;
}

PPoly p_powmod_x(long e_base, const PPoly& f, long p) {
  // x^e mod f via square-and-multiply on the exponent e_base (= p here)
  PPoly result = {1};
  PPoly base = {0, 1};
  base = p_divmod(base, f, p).second;
  long e = e_base;
  while (e > 0) {
    if (e & 1) result = p_divmod(p_mul(result, base, p), f, p).second;
    base = p_divmod(p_mul(base, base, p), f, p).second;
    e >>= 1;
  }
  return result;
}

// extended euclid: s*a + t*b = 1 (a, b coprime mod p)
void p_bezout(const PPoly& a, const PPoly& b, long p, PPoly* s, PPoly* t) {
  PPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r2] = p_divmod(r0, r1, p);
    PPoly s2 = p_sub(s0, p_mul(q, s1, p), p);
    PPoly t2 = p_sub(t0, p_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (p_deg(r0) != 0) throw AlgebraError("factors not coprime");
  long inv = inv_mod(r0[0], p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  *s = std::move(s0);
  *t = std::move(t0);
}

// ---- Berlekamp factorization over F_p ---------------------------------------

std::vector<PPoly> berlekamp(const PPoly& f_in, long p) {
  PPoly f = p_monic(f_in, p);
  int n = p_deg(f);
  if (n <= 1) return {f};
  // rows of Q: x^(p*i) mod f
  PPoly xp = p_powmod_x(p, f, p);
  std::vector<PPoly> rows(static_cast<size_t>(n));
  rows[0] = {1};
  for (int i = 1; i < n; ++i)
    rows[static_cast<size_t>(i)] =
        p_divmod(p_mul(rows[static_cast<size_t>(i) - 1], xp, p), f, p).second;
  // We need row vectors v with v(Q - I) = 0, i.e. the nullspace of (Q - I)^T.
  std::vector<std::vector<long>> BT(static_cast<size_t>(n),
                                    std::vector<long>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    const PPoly& r = rows[static_cast<size_t>(i)];
    for (int j = 0; j < n; ++j) {
      long v = j < static_cast<int>(r.size()) ? r[static_cast<size_t>(j)] : 0;
      if (i == j) v = (v - 1 % p + p) % p;
      BT[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
    }
  }
  std::vector<int> where(static_cast<size_t>(n), -1);
  int rank2 = 0;
  for (int col = 0; col < n && rank2 < n; ++col) {
    int sel = -1;
    for (int row = rank2; row < n; ++row)
      if (BT[static_cast<size_t>(row)][static_cast<size_t>(col)] != 0) {
        sel = row;
        break;
      }
    if (sel < 0) continue;
    std::swap(BT[static_cast<size_t>(sel)], BT[static_cast<size_t>(rank2)]);
    long inv = inv_mod(BT[static_cast<size_t>(rank2)][static_cast<size_t>(col)], p);
    for (int j = 0; j < n; ++j)
      BT[static_cast<size_t>(rank2)][static_cast<size_t>(j)] =
          BT[static_cast<size_t>(rank2)][static_cast<size_t>(j)] * inv % p;
    for (int row = 0; row < n; ++row) {
      if (row == rank2) continue;
      long f2 = BT[static_cast<size_t>(row)][static_cast<size_t>(col)];
      if (f2 == 0) continue;
      for (int j = 0; j < n; ++j)
        BT[static_cast<size_t>(row)][static_cast<size_t>(j)] =
            ((BT[static_cast<size_t>(row)][static_cast<size_t>(j)] -
              f2 * BT[static_cast<size_t>(rank2)][static_cast<size_t>(j)]) %
                 p +
             p) %
            p;
    }
    where[static_cast<size_t>(col)] = rank2;
    ++rank2;
  }
  std::vector<PPoly> null_basis;
  for (int col = 0; col < n; ++col) {
    if (where[static_cast<size_t>(col)] >= 0) continue;
    PPoly v(static_cast<size_t>(n), 0);
    v[static_cast<size_t>(col)] = 1;
    for (int c2 = 0; c2 < n; ++c2) {
      int r2 = where[static_cast<size_t>(c2)];
      if (r2 < 0) continue;
      v[static_cast<size_t>(c2)] =
          (p - BT[static_cast<size_t>(r2)][static_cast<size_t>(col)]) % p;
    }
    p_trim(v);
    null_basis.push_back(std::move(v));
  }
  size_t k = null_basis.size();  // number of irreducible factors
  std::vector<PPoly> factors = {f};
  if (k <= 1) return factors;
  for (const PPoly& v : null_basis) {
    if (p_deg(v) <= 0) continue;  // the constant vector splits nothing
    for (long s = 0; s < p && factors.size() < k; ++s) {
      PPoly vs = v;
      if (vs.empty()) vs = {0};
      vs[0] = (vs[0] - s % p + p) % p;
      p_trim(vs);
      std::vector<PPoly> next;
      for (const PPoly& u : factors) {
        if (p_deg(u) <= 1) {
          next.push_back(u);
          continue;
        }
        PPoly g = p_gcd(u, vs, p);
        if (p_deg(g) > 0 && p_deg(g) < p_deg(u)) {
          next.push_back(g);
          next.push_back(p_monic(p_divmod(u, g, p).first, p));
        } else {
          next.push_back(u);
        }
      }
      factors = std::move(next);
    }
    if (factors.size() >= k) break;
  }
  if (factors.size() != k) throw AlgebraError("modular splitting incomplete");
  return factors;
}

// ---- Hensel lifting over the integers ---------------------------------------

struct LiftPair {
  ZPoly g, h, s, t;
};

// one quadratic step: modulus m -> m^2 (h monic, preserved)
LiftPair hensel_step(const ZPoly& f, const LiftPair& in, const mpz_class& m) {
  mpz_class m2 = m * m;
  ZPoly e = z_sub(z_mod(f, m2), z_mul(in.g, in.h, m2), m2);
  auto [q, r] = z_divmod_monic(z_mul(in.s, e, m2), in.h, m2);
  LiftPair out;
  out.g = z_add(z_add(in.g, z_mul(in.t, e, m2), m2), z_mul(q, in.g, m2), m2);
  out.h = z_add(in.h, r, m2);
  ZPoly b = z_sub(z_add(z_mul(in.s, out.g, m2), z_mul(in.t, out.h, m2), m2),
                  ZPoly{1}, m2);
  auto [c, d] = z_divmod_monic(z_mul(in.s, b, m2), out.h, m2);
  out.s = z_sub(in.s, d, m2);
  out.t = z_sub(z_sub(in.t, z_mul(in.t, b, m2), m2), z_mul(c, out.g, m2), m2);
  return out;
}

ZPoly z_from_ppoly(const PPoly& a) {
  ZPoly z;
  for (long c : a) z.emplace_back(c);
  z_trim(z);
  return z;
}

// lift f = lc(f) * prod(leaves) (mod p) to mod q_target, leaves monic
void lift_tree(const ZPoly& f, const std::vector<PPoly>& leaves, size_t lo,
               size_t hi, long p, const mpz_class& q_target,
               std::vector<ZPoly>* out) {
  if (hi - lo == 1) {
    // normalize to monic mod q_target
    ZPoly g = z_mod(f, q_target);
    mpz_class lead = g.back();
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), q_target.get_mpz_t()) == 0)
      throw AlgebraError("leading coefficient not invertible");
    for (auto& c : g) c = c * inv;
    (*out)[lo] = z_mod(std::move(g), q_target);
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  PPoly gh = {1}, hh = {1};
  for (size_t i = lo; i < mid; ++i) gh = p_mul(gh, leaves[i], p);
  for (size_t i = mid; i < hi; ++i) hh = p_mul(hh, leaves[i], p);
  // impose f's leading coefficient on the left factor
  mpz_class lcf = f.back() % p;
  long lc_res = lcf.get_si() % p;
  if (lc_res < 0) lc_res += p;
  PPoly lcp = {lc_res};
  gh = p_mul(gh, lcp, p);
  PPoly s, t;
  p_bezout(gh, hh, p, &s, &t);
  LiftPair pair{z_from_ppoly(gh), z_from_ppoly(hh), z_from_ppoly(s),
                z_from_ppoly(t)};
  mpz_class m(p);
  while (m < q_target) {
    pair = hensel_step(z_mod(f, m * m), pair, m);
    m = m * m;
  }
  lift_tree(z_mod(pair.g, q_target), leaves, lo, mid, p, q_target, out);
  lift_tree(z_mod(pair.h, q_target), leaves, mid, hi, p, q_target, out);
}

mpz_class balanced(const mpz_class& c, const mpz_class& q) {
  mpz_class r = c % q;
  if (r < 0) r += q;
  if (2 * r > q) r -= q;
  return r;
}

UniPoly z_to_unipoly_balanced(const ZPoly& a, const mpz_class& q) {
  std::vector<mpz_class> c;
  c.reserve(a.size());
  for (const auto& x : a) c.push_back(balanced(x, q));
  return UniPoly(std::move(c));
}

// ---- squarefree irreducible factorization over Z ----------------------------

std::vector<UniPoly> factor_squarefree(const UniPoly& f) {
  int n = f.degree();
  if (n <= 0) return {};
  if (n == 1) return {f.primitive_part()};
  // prime with good reduction
  long p = 0;
  for (long cand = 3; cand < 20000; cand += 2) {
    bool prime = true;
    for (long d = 3; d * d <= cand; d += 2)
      if (cand % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(),
                           static_cast<unsigned long>(cand)))
      continue;
    PPoly fp = p_from(f, cand);
    if (p_deg(fp) != n) continue;
    PPoly g = p_gcd(fp, p_derivative(fp, cand), cand);
    if (p_deg(g) == 0) {
      p = cand;
      break;
    }
  }
  if (p == 0) throw AlgebraError("no squarefree modular reduction found");

  PPoly fp = p_monic(p_from(f, p), p);
  std::vector<PPoly> mod_factors = berlekamp(fp, p);
  if (mod_factors.size() == 1) return {f.primitive_part()};
  std::sort(mod_factors.begin(), mod_factors.end(),
            [](const PPoly& a, const PPoly& b) {
              return p_deg(a) < p_deg(b) || (p_deg(a) == p_deg(b) && a < b);
            });

  // coefficient bound: factors of f (times lc) stay below
  // 2^n * sqrt(n+1) * ||f||_inf * |lc|
  mpz_class height(0);
  for (int i = 0; i <= n; ++i) {
    mpz_class a = abs(f.coeff(i));
    if (a > height) height = a;
  }
  mpz_class bound = height * abs(f.leading());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(),
               static_cast<mp_bitcnt_t>(n + 2));
  bound = bound * (n + 1);
  mpz_class q_target(p);
  while (q_target < 2 * bound + 1) q_target = q_target * q_target;

  ZPoly fz;
  for (int i = 0; i <= n; ++i) fz.push_back(f.coeff(i));
  std::vector<ZPoly> lifted(mod_factors.size());
  lift_tree(z_mod(fz, q_target), mod_factors, 0, mod_factors.size(), p,
            q_target, &lifted);

  // recombination
  std::vector<UniPoly> result;
  UniPoly rem = f.primitive_part();
  std::vector<ZPoly> leaves = std::move(lifted);
  size_t s = 1;
  while (2 * s <= leaves.size()) {
    bool found_any = false;
    std::vector<size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ZPoly prod = {rem.leading()};
      for (size_t i : idx) prod = z_mul(prod, leaves[i], q_target);
      UniPoly cand = z_to_unipoly_balanced(prod, q_target).primitive_part();
      UniPoly quot;
      if (cand.degree() > 0 && try_divide(rem, cand, &quot)) {
        result.push_back(cand);
        rem = quot.primitive_part();
        std::vector<ZPoly> rest;
        for (size_t i = 0, j = 0; i < leaves.size(); ++i) {
          if (j < idx.size() && idx[j] == i) {
            ++j;
            continue;
          }
          rest.push_back(std::move(leaves[i]));
        }
        leaves = std::move(rest);
        found_any = true;
        break;  // restart the subset scan at this cardinality
      }
      // next subset of size s
      int pos = static_cast<int>(s) - 1;
      while (pos >= 0 &&
             idx[static_cast<size_t>(pos)] ==
                 leaves.size() - s + static_cast<size_t>(pos))
        --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (size_t k = static_cast<size_t>(pos) + 1; k < s; ++k)
        idx[k] = idx[k - 1] + 1;
    }
    if (!found_any) ++s;
  }
  if (rem.degree() > 0) result.push_back(rem.primitive_part());
  return result;
}

}  // namespace

// ---- public univariate interface ---------------------------------------------

bool try_divide(const UniPoly& f, const UniPoly& g, UniPoly* quotient) {
  if (g.is_zero()) return false;
  auto [q, r] = q_divmod(q_from(f), q_from(g));
  if (!r.empty()) return false;
  std::vector<mpz_class> zc;
  zc.reserve(q.size());
  for (const auto& c : q) {
    if (c.get_den() != 1) return false;
    zc.push_back(c.get_num());
  }
  if (quotient) *quotient = UniPoly(std::move(zc));
  return true;
}

std::vector<UniFactor> factor_unipoly(const UniPoly& f) {
  if (f.is_zero()) throw AlgebraError("factorization of zero");
  std::vector<UniFactor> out;
  UniPoly w = f.primitive_part();
  if (w.degree() <= 0) return out;
  // Yun's squarefree decomposition
  UniPoly d = w.derivative();
  UniPoly u = UniPoly::gcd(w, d);
  UniPoly v = w.divide_exact(u);
  UniPoly y = d.divide_exact(u);
  int mult = 1;
  while (v.degree() > 0) {
    UniPoly z = y - v.derivative();
    UniPoly h = UniPoly::gcd(v, z);
    if (h.degree() > 0) {
      for (UniPoly& irr : factor_squarefree(h))
        out.push_back({std::move(irr), mult});
      v = v.divide_exact(h);
      y = z.divide_exact(h);
    } else {
      y = z;
    }
    ++mult;
  }
  return out;
}

// ---- bivariate layer ----------------------------------------------------------

namespace {

// truncated power series in (x - t0) with rational coefficients
struct Series {
  std::vector<mpq_class> a;  // length K

  static Series zero(int K) {
    Series s;
    s.a.assign(static_cast<size_t>(K), mpq_class(0));
    return s;
  }
  static Series from_const(const mpq_class& c, int K) {
    Series s = zero(K);
    s.a[0] = c;
    return s;
  }
  bool is_zero() const {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }
  int K() const { return static_cast<int>(a.size()); }
};

Series s_add(const Series& x, const Series& y) {
  Series r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

Series s_sub(const Series& x, const Series& y) {
  Series r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

Series s_mul(const Series& x, const Series& y) {
  Series r = Series::zero(x.K());
  for (size_t i = 0; i < x.a.size(); ++i) {
    if (x.a[i] == 0) continue;
    for (size_t j = 0; i + j < y.a.size(); ++j) r.a[i + j] += x.a[i] * y.a[j];
  }
  return r;
}

Series s_inverse(const Series& x) {
  if (x.a[0] == 0) throw AlgebraError("series not invertible");
  Series r = Series::zero(x.K());
  r.a[0] = 1 / x.a[0];
  for (size_t k = 1; k < x.a.size(); ++k) {
    mpq_class acc(0);
    for (size_t j = 1; j <= k; ++j) acc += x.a[j] * r.a[k - j];
    r.a[k] = -acc / x.a[0];
  }
  return r;
}

// polynomial in y over the series ring
struct SPoly {
  std::vector<Series> c;  // ascending in y

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

SPoly sp_add(const SPoly& f, const SPoly& g) {
  SPoly r = f;
  if (r.c.size() < g.c.size()) r.c.resize(g.c.size(), Series::zero(g.c[0].K()));
  for (size_t i = 0; i < g.c.size(); ++i) r.c[i] = s_add(r.c[i], g.c[i]);
  r.trim();
  return r;
}

SPoly sp_sub(const SPoly& f, const SPoly& g) {
  SPoly r = f;
  if (r.c.size() < g.c.size()) r.c.resize(g.c.size(), Series::zero(g.c[0].K()));
  for (size_t i = 0; i < g.c.size(); ++i) r.c[i] = s_sub(r.c[i], g.c[i]);
  r.trim();
  return r;
}

SPoly sp_mul(const SPoly& f, const SPoly& g) {
  SPoly r;
  if (f.is_zero() || g.is_zero()) return r;
  int K = f.c[0].K();
  r.c.assign(f.c.size() + g.c.size() - 1, Series::zero(K));
  for (size_t i = 0; i < f.c.size(); ++i)
    for (size_t j = 0; j < g.c.size(); ++j)
      r.c[i + j] = s_add(r.c[i + j], s_mul(f.c[i], g.c[j]));
  r.trim();
  return r;
}

// divmod by a divisor whose leading series is a unit
std::pair<SPoly, SPoly> sp_divmod(SPoly f, const SPoly& g) {
  if (g.is_zero()) throw AlgebraError("division by zero");
  Series lead_inv = s_inverse(g.c.back());
  SPoly q;
  int K = g.c[0].K();
  if (f.deg() >= g.deg())
    q.c.assign(static_cast<size_t>(f.deg() - g.deg()) + 1, Series::zero(K));
  while (f.deg() >= g.deg() && !f.is_zero()) {
    int shift = f.deg() - g.deg();
    Series coef = s_mul(f.c.back(), lead_inv);
    q.c[static_cast<size_t>(shift)] = coef;
    for (size_t i = 0; i < g.c.size(); ++i)
      f.c[static_cast<size_t>(shift) + i] =
          s_sub(f.c[static_cast<size_t>(shift) + i], s_mul(coef, g.c[i]));
    f.trim();
  }
  q.trim();
  return {q, f};
}

SPoly sp_from_qpoly(const QPoly& u, int K) {
  SPoly f;
  for (const auto& c : u) f.c.push_back(Series::from_const(c, K));
  f.trim();
  return f;
}

struct SLiftPair {
  SPoly g, h, s, t;
};

// quadratic step over the series ring; truncation plays the modulus role
SLiftPair s_hensel_step(const SPoly& f, const SLiftPair& in) {
  SPoly e = sp_sub(f, sp_mul(in.g, in.h));
  auto [q, r] = sp_divmod(sp_mul(in.s, e), in.h);
  SLiftPair out;
  out.g = sp_add(sp_add(in.g, sp_mul(in.t, e)), sp_mul(q, in.g));
  out.h = sp_add(in.h, r);
  SPoly one;
  one.c.push_back(Series::from_const(mpq_class(1), f.c[0].K()));
  SPoly b = sp_sub(sp_add(sp_mul(in.s, out.g), sp_mul(in.t, out.h)), one);
  auto [c2, d2] = sp_divmod(sp_mul(in.s, b), out.h);
  out.s = sp_sub(in.s, d2);
  out.t = sp_sub(sp_sub(in.t, sp_mul(in.t, b)), sp_mul(c2, out.g));
  return out;
}

void s_lift_tree(const SPoly& f, const std::vector<QPoly>& leaves, size_t lo,
                 size_t hi, std::vector<SPoly>* out) {
  if (hi - lo == 1) {
    // monic normalization: divide by the (unit) leading series
    SPoly g = f;
    Series inv = s_inverse(g.c.back());
    for (auto& c : g.c) c = s_mul(c, inv);
    (*out)[lo] = std::move(g);
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  int K = f.c[0].K();
  QPoly gh = {mpq_class(1)}, hh = {mpq_class(1)};
  for (size_t i = lo; i < mid; ++i) gh = q_mul(gh, leaves[i]);
  for (size_t i = mid; i < hi; ++i) hh = q_mul(hh, leaves[i]);
  // leading coefficient of f at order zero, imposed on the left factor
  mpq_class lc0 = f.c.back().a[0];
  for (auto& c : gh) c *= lc0;
  // bezout over Q[y] at order zero
  QPoly r0 = gh, r1 = hh, s0 = {mpq_class(1)}, s1 = {}, t0 = {}, t1 = {mpq_class(1)};
  while (!r1.empty()) {
    auto [qq, r2] = q_divmod(r0, r1);
    QPoly s2 = q_sub(s0, q_mul(qq, s1));
    QPoly t2 = q_sub(t0, q_mul(qq, t1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (q_deg(r0) != 0) throw AlgebraError("factors not coprime");
  for (auto& c : s0) c /= r0[0];
  for (auto& c : t0) c /= r0[0];
  SLiftPair pair{sp_from_qpoly(gh, K), sp_from_qpoly(hh, K),
                 sp_from_qpoly(s0, K), sp_from_qpoly(t0, K)};
  for (int iter = 0; iter < 64; ++iter) {
    if (sp_sub(f, sp_mul(pair.g, pair.h)).is_zero()) break;
    pair = s_hensel_step(f, pair);
    if (iter == 63) throw AlgebraError("series lifting failed to converge");
  }
  s_lift_tree(pair.g, leaves, lo, mid, out);
  s_lift_tree(pair.h, leaves, mid, hi, out);
}

// (x - t0)^k as ascending integer-coefficient rational polys, cached
std::vector<QPoly> shift_powers(const mpq_class& t0, int K) {
  std::vector<QPoly> pw(static_cast<size_t>(K));
  pw[0] = {mpq_class(1)};
  QPoly base = {-t0, mpq_class(1)};
  for (int k = 1; k < K; ++k) pw[static_cast<size_t>(k)] = q_mul(pw[static_cast<size_t>(k) - 1], base);
  return pw;
}

// SPoly in (x - t0, y) -> BiPoly in (x, y), denominators cleared
BiPoly spoly_to_bipoly(const SPoly& f, const mpq_class& t0) {
  if (f.is_zero()) return BiPoly();
  int K = f.c[0].K();
  auto pw = shift_powers(t0, K);
  // rational coefficients in x per power of y
  std::vector<QPoly> xc(f.c.size());
  for (size_t j = 0; j < f.c.size(); ++j) {
    QPoly acc;
    for (int k = 0; k < K; ++k) {
      if (f.c[j].a[static_cast<size_t>(k)] == 0) continue;
      QPoly term = pw[static_cast<size_t>(k)];
      for (auto& c : term) c *= f.c[j].a[static_cast<size_t>(k)];
      if (acc.size() < term.size()) acc.resize(term.size(), mpq_class(0));
      for (size_t i = 0; i < term.size(); ++i) acc[i] += term[i];
    }
    q_trim(acc);
    xc[j] = std::move(acc);
  }
  mpz_class den(1);
  for (const auto& u : xc)
    for (const auto& c : u)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<UniPoly> coeffs;
  coeffs.reserve(xc.size());
  for (const auto& u : xc) {
    std::vector<mpz_class> zc;
    zc.reserve(u.size());
    for (const auto& c : u) zc.push_back(c.get_num() * (den / c.get_den()));
    coeffs.emplace_back(std::move(zc));
  }
  return BiPoly(std::move(coeffs));
}

BiPoly normalize_bifactor(const BiPoly& f) {
  if (f.is_zero()) return f;
  mpz_class cont = f.integer_content();
  BiPoly g = f;
  if (cont != 0 && cont != 1) {
    std::vector<UniPoly> cs;
    for (int j = 0; j <= g.degree_y(); ++j)
      cs.push_back(g.coeff_y(j).divide_exact(UniPoly::monomial(cont, 0)));
    g = BiPoly(std::move(cs));
  }
  if (g.leading_y().leading() < 0) g = -g;
  return g;
}

std::vector<BiPoly> factor_squarefree_bipoly(const BiPoly& f_in) {
  BiPoly f = normalize_bifactor(f_in);
  if (f.degree_y() == 0) throw AlgebraError("expected positive degree");
  if (f.degree_y() == 1 && f.content_y().degree() <= 0) return {f};

  // good specialization point: leading coefficient alive, image squarefree
  mpq_class t0;
  UniPoly u;
  bool found = false;
  for (long mag = 0; mag < 200 && !found; ++mag) {
    for (long sgn : {1L, -1L}) {
      if (mag == 0 && sgn < 0) continue;
      mpq_class t(sgn * mag);
      if (f.leading_y().eval_q(t) == 0) continue;
      UniPoly cand = f.specialize_x(t);
      if (cand.degree() != f.degree_y()) continue;
      if (UniPoly::gcd(cand, cand.derivative()).degree() > 0) continue;
      t0 = t;
      u = cand;
      found = true;
      break;
    }
  }
  if (!found) throw AlgebraError("no squarefree specialization found");

  std::vector<UniPoly> uf = factor_squarefree(u);
  if (uf.size() == 1) return {f};

  // monic rational versions, deterministic order
  std::sort(uf.begin(), uf.end(), [](const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
  });
  std::vector<QPoly> leaves;
  for (const auto& irr : uf) {
    QPoly q = q_from(irr);
    mpq_class lead = q.back();
    for (auto& c : q) c /= lead;
    leaves.push_back(std::move(q));
  }

  int K = 2 * std::max(f.degree_x(), 1) + 1;

  // f shifted to x = t0 + xhat, coefficients as truncated series
  SPoly F;
  for (int j = 0; j <= f.degree_y(); ++j) {
    // coefficient in x evaluated as a polynomial in xhat: c(t0 + xhat)
    const UniPoly& cx = f.coeff_y(j);
    Series s = Series::zero(K);
    // Taylor shift via iterated Horner in (t0 + xhat)
    // series of cx(t0 + xhat): start from highest coefficient
    for (int i = cx.degree(); i >= 0; --i) {
      // s = s * (t0 + xhat) + cx[i]
      Series next = Series::zero(K);
      for (int k = 0; k < K; ++k) {
        mpq_class v = s.a[static_cast<size_t>(k)] * t0;
        if (k > 0) v += s.a[static_cast<size_t>(k) - 1];
        next.a[static_cast<size_t>(k)] = v;
      }
      next.a[0] += mpq_class(cx.coeff(i));
      s = std::move(next);
    }
    F.c.push_back(std::move(s));
  }
  F.trim();

  // monic version of F (leading series is a unit by the choice of t0)
  SPoly M = F;
  Series lead_inv = s_inverse(M.c.back());
  for (auto& c : M.c) c = s_mul(c, lead_inv);

  std::vector<SPoly> lifted(leaves.size());
  s_lift_tree(M, leaves, 0, leaves.size(), &lifted);

  // leading coefficient of f as a series in xhat (for recombination)
  Series lc_series = F.c.back();

  std::vector<BiPoly> result;
  BiPoly rem = f;
  std::vector<SPoly> live = std::move(lifted);
  size_t s = 1;
  while (2 * s <= live.size()) {
    bool found_any = false;
    std::vector<size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      SPoly prod;
      prod.c.push_back(lc_series);
      for (size_t i : idx) prod = sp_mul(prod, live[i]);
      BiPoly cand = spoly_to_bipoly(prod, t0);
      if (!cand.is_zero()) {
        cand = normalize_bifactor(cand.primitive_part_y());
        BiPoly quot;
        if (cand.degree_y() > 0 && try_divide_y(rem, cand, &quot)) {
          result.push_back(cand);
          rem = normalize_bifactor(quot);
          std::vector<SPoly> rest;
          for (size_t i = 0, j = 0; i < live.size(); ++i) {
            if (j < idx.size() && idx[j] == i) {
              ++j;
              continue;
            }
            rest.push_back(std::move(live[i]));
          }
          live = std::move(rest);
          // recompute the leading-coefficient series from the new remainder
          {
            SPoly R;
            for (int j2 = 0; j2 <= rem.degree_y(); ++j2) {
              const UniPoly& cx = rem.coeff_y(j2);
              Series s2 = Series::zero(K);
              for (int i2 = cx.degree(); i2 >= 0; --i2) {
                Series next = Series::zero(K);
                for (int k = 0; k < K; ++k) {
                  mpq_class v = s2.a[static_cast<size_t>(k)] * t0;
                  if (k > 0) v += s2.a[static_cast<size_t>(k) - 1];
                  next.a[static_cast<size_t>(k)] = v;
                }
                next.a[0] += mpq_class(cx.coeff(i2));
                s2 = std::move(next);
              }
              R.c.push_back(std::move(s2));
            }
            R.trim();
            lc_series = R.c.back();
          }
          found_any = true;
          break;
        }
      }
      int pos = static_cast<int>(s) - 1;
      while (pos >= 0 &&
             idx[static_cast<size_t>(pos)] ==
                 live.size() - s + static_cast<size_t>(pos))
        --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (size_t k = static_cast<size_t>(pos) + 1; k < s; ++k)
        idx[k] = idx[k - 1] + 1;
    }
    if (!found_any) ++s;
  }
  if (rem.degree_y() > 0) result.push_back(normalize_bifactor(rem));
  return result;
}

}  // namespace

bool try_divide_y(const BiPoly& f, const BiPoly& g, BiPoly* quotient) {
  if (g.is_zero()) return false;
  if (f.is_zero()) {
    if (quotient) *quotient = BiPoly();
    return true;
  }
  if (g.degree_y() == 0) {
    // divide every coefficient by the univariate g
    const UniPoly& d = g.coeff_y(0);
    std::vector<UniPoly> cs;
    for (int j = 0; j <= f.degree_y(); ++j) {
      UniPoly q;
      if (!try_divide(f.coeff_y(j), d, &q)) return false;
      cs.push_back(std::move(q));
    }
    if (quotient) *quotient = BiPoly(std::move(cs));
    return true;
  }
  if (f.degree_y() < g.degree_y()) return false;
  auto div = pseudo_divide_y(f, g);
  if (!div.remainder.is_zero()) return false;
  // true quotient = pseudo-quotient / lc(g)^power
  UniPoly scale = UniPoly::monomial(1, 0);
  for (int k = 0; k < div.power; ++k) scale = scale * g.leading_y();
  std::vector<UniPoly> cs;
  for (int j = 0; j <= div.quotient.degree_y(); ++j) {
    UniPoly q;
    if (!try_divide(div.quotient.coeff_y(j), scale, &q)) return false;
    cs.push_back(std::move(q));
  }
  if (quotient) *quotient = BiPoly(std::move(cs));
  return true;
}

std::vector<BiFactor> factor_bipoly(const BiPoly& f) {
  if (f.is_zero()) throw AlgebraError("factorization of zero");
  std::vector<BiFactor> out;
  // content in x first
  UniPoly cont = f.content_y();
  for (auto& uf : factor_unipoly(cont))
    out.push_back({BiPoly::from_unipoly_in_x(uf.poly), uf.multiplicity});
  BiPoly w = normalize_bifactor(f.primitive_part_y());
  if (w.degree_y() == 0) return out;

  // Yun's decomposition in y
  BiPoly d = w.derivative_y();
  BiPoly u = gcd_y(w, d);
  BiPoly v, y;
  if (!try_divide_y(w, u, &v) || !try_divide_y(d, u, &y))
    throw AlgebraError("squarefree decomposition failed");
  int mult = 1;
  while (v.degree_y() > 0) {
    BiPoly z = y - v.derivative_y();
    BiPoly h = gcd_y(v, z);
    // gcd may carry spurious x-content; the true multiplicity-m part is
    // primitive in y here because v is
    h = normalize_bifactor(h.primitive_part_y());
    if (h.degree_y() > 0) {
      for (BiPoly& irr : factor_squarefree_bipoly(h))
        out.push_back({std::move(irr), mult});
      BiPoly v2, y2;
      if (!try_divide_y(v, h, &v2) || !try_divide_y(z, h, &y2))
        throw AlgebraError("squarefree decomposition failed");
      v = std::move(v2);
      y = std::move(y2);
    } else {
      y = std::move(z);
    }
    ++mult;
  }
  return out;
}

}  // namespace raspberry
