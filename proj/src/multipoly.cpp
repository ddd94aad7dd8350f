#include "raspberry/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace raspberry {

// ---- PolyRing --------------------------------------------------------------

PolyRing::PolyRing(std::vector<std::pair<std::string, Block>> vars)
    : vars_(std::move(vars)) {
  if (vars_.empty()) throw AlgebraError("empty ring");
  for (size_t i = 0; i < vars_.size(); ++i) {
    for (size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i].first == vars_[j].first)
        throw AlgebraError("duplicate indeterminate " + vars_[i].first);
  }
  int begin = 0;
  for (int i = 1; i <= static_cast<int>(vars_.size()); ++i) {
    if (i == static_cast<int>(vars_.size()) ||
        vars_[static_cast<size_t>(i)].second != vars_[static_cast<size_t>(begin)].second) {
      ranges_.emplace_back(begin, i);
      begin = i;
    }
  }
}

int PolyRing::index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].first == name) return static_cast<int>(i);
  throw AlgebraError("unknown indeterminate " + name);
}

RingPtr make_ring(std::vector<std::pair<std::string, Block>> vars) {
  return std::make_shared<const PolyRing>(std::move(vars));
}

// ---- MultiPoly -------------------------------------------------------------

void MultiPoly::add_term(const Exps& e, const mpq_class& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::constant(RingPtr ring, const mpq_class& c) {
  MultiPoly p(std::move(ring));
  p.add_term(Exps(static_cast<size_t>(p.ring_->size()), 0), c);
  return p;
}

MultiPoly MultiPoly::var(RingPtr ring, int i, int power) {
  MultiPoly p(std::move(ring));
  Exps e(static_cast<size_t>(p.ring_->size()), 0);
  e[static_cast<size_t>(i)] = power;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::var(RingPtr ring, const std::string& name, int power) {
  int i = ring->index(name);
  return var(std::move(ring), i, power);
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, mpq_class(-c));
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r(a.ring_);
  MultiPoly::Exps e(a.ring_ ? static_cast<size_t>(a.ring_->size()) : 0, 0);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly operator*(const mpq_class& c, const MultiPoly& a) {
  MultiPoly r(a.ring_);
  if (c == 0) return r;
  for (const auto& [e, k] : a.terms_) r.terms_.emplace(e, c * k);
  return r;
}

MultiPoly MultiPoly::operator-() const { return mpq_class(-1) * *this; }

int MultiPoly::degree(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, e[static_cast<size_t>(var)]);
  return terms_.empty() ? -1 : d;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (int x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

bool MultiPoly::even_in(int var) const {
  for (const auto& [e, c] : terms_)
    if (e[static_cast<size_t>(var)] % 2 != 0) return false;
  return true;
}

MultiPoly MultiPoly::odd_part(int var) const {
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_)
    if (e[static_cast<size_t>(var)] % 2 != 0) r.terms_.emplace(e, c);
  return r;
}

MultiPoly MultiPoly::even_part(int var) const {
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_)
    if (e[static_cast<size_t>(var)] % 2 == 0) r.terms_.emplace(e, c);
  return r;
}

MultiPoly MultiPoly::substitute_rational(int var, const MultiPoly& num,
                                         const MultiPoly& den) const {
  if (den.is_zero()) throw AlgebraError("zero denominator in substitution");
  int d = degree(var);
  if (d <= 0) return *this;  // absent indeterminate: nothing to substitute
  // power tables
  std::vector<MultiPoly> num_pow, den_pow;
  num_pow.reserve(static_cast<size_t>(d) + 1);
  den_pow.reserve(static_cast<size_t>(d) + 1);
  num_pow.push_back(MultiPoly::constant(ring_, 1));
  den_pow.push_back(MultiPoly::constant(ring_, 1));
  for (int k = 1; k <= d; ++k) {
    num_pow.push_back(num_pow.back() * num);
    den_pow.push_back(den_pow.back() * den);
  }
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_) {
    Exps e2 = e;
    int k = e2[static_cast<size_t>(var)];
    e2[static_cast<size_t>(var)] = 0;
    MultiPoly mono(ring_);
    mono.terms_.emplace(e2, c);
    r += mono * num_pow[static_cast<size_t>(k)] *
         den_pow[static_cast<size_t>(d - k)];
  }
  return r;
}

MultiPoly MultiPoly::substitute_square(int var, const MultiPoly& repl) const {
  int d = degree(var);
  std::vector<MultiPoly> pow;
  pow.push_back(MultiPoly::constant(ring_, 1));
  for (int k = 1; 2 * k <= d; ++k) pow.push_back(pow.back() * repl);
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<size_t>(var)];
    if (k % 2 != 0)
      throw AlgebraError("odd power of " + ring_->name(var) +
                         " in square substitution");
    Exps e2 = e;
    e2[static_cast<size_t>(var)] = 0;
    MultiPoly mono(ring_);
    mono.terms_.emplace(e2, c);
    r += mono * pow[static_cast<size_t>(k / 2)];
  }
  return r;
}

MultiPoly MultiPoly::rename(RingPtr target, const std::vector<int>& var_map) const {
  MultiPoly r(target);
  Exps e2(static_cast<size_t>(target->size()), 0);
  for (const auto& [e, c] : terms_) {
    std::fill(e2.begin(), e2.end(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      int t = var_map[i];
      if (t < 0) throw AlgebraError("rename drops a used indeterminate");
      e2[static_cast<size_t>(t)] += e[i];
    }
    r.add_term(e2, c);
  }
  return r;
}

namespace {

template <typename T>
T from_mpq(const mpq_class& c);

template <>
BigScalar from_mpq<BigScalar>(const mpq_class& c) {
  return BigScalar(c);
}
template <>
Interval from_mpq<Interval>(const mpq_class& c) {
  return Interval::from_mpq(c);
}
template <>
mpq_class from_mpq<mpq_class>(const mpq_class& c) {
  return c;
}

}  // namespace

template <typename T>
T MultiPoly::eval(const std::vector<T>& point) const {
  T acc = from_mpq<T>(mpq_class(0));
  for (const auto& [e, c] : terms_) {
    T t = from_mpq<T>(c);
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t = t * point[i];
    acc = acc + t;
  }
  return acc;
}

template BigScalar MultiPoly::eval<BigScalar>(const std::vector<BigScalar>&) const;
template Interval MultiPoly::eval<Interval>(const std::vector<Interval>&) const;
template mpq_class MultiPoly::eval<mpq_class>(const std::vector<mpq_class>&) const;

MultiPoly MultiPoly::primitive_integer() const {
  if (terms_.empty()) return *this;
  mpz_class den_lcm(1);
  for (const auto& [e, c] : terms_)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  mpz_class content(0);
  for (const auto& [e, c] : terms_) {
    mpz_class num = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
  }
  if (content == 0) content = 1;
  // sign from the lexicographically largest monomial (map's last entry)
  mpq_class lead = terms_.rbegin()->second;
  if (lead < 0) content = -content;
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_)
    r.terms_.emplace(e, mpq_class(c.get_num() * (den_lcm / c.get_den()) / content));
  return r;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    mpq_class a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool any_var = false;
    for (int x : e) any_var = any_var || x > 0;
    if (a != 1 || !any_var) {
      os << a.get_str();
      if (any_var) os << "*";
    }
    bool started = false;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (started) os << "*";
      started = true;
      os << ring_->name(static_cast<int>(i));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

// ---- TermOrder -------------------------------------------------------------

namespace {

// degrevlex comparison restricted to [lo, hi): returns <0 if a smaller.
int degrevlex_cmp(const MultiPoly::Exps& a, const MultiPoly::Exps& b, int lo,
                  int hi) {
  int da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a[static_cast<size_t>(i)];
    db += b[static_cast<size_t>(i)];
  }
  if (da != db) return da < db ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i) {
    int ai = a[static_cast<size_t>(i)], bi = b[static_cast<size_t>(i)];
    if (ai != bi) return ai > bi ? -1 : 1;  // larger exponent in later var = smaller
  }
  return 0;
}

}  // namespace

int TermOrder::compare(const MultiPoly::Exps& a, const MultiPoly::Exps& b) const {
  for (const auto& [lo, hi] : ring_->block_ranges()) {
    int c = degrevlex_cmp(a, b, lo, hi);
    if (c != 0) return c;
  }
  return 0;
}

const MultiPoly::Exps* TermOrder::leading(const MultiPoly& p) const {
  const MultiPoly::Exps* best = nullptr;
  for (const auto& [e, c] : p.terms()) {
    if (!best || compare(*best, e) < 0) best = &e;
  }
  return best;
}

// ---- group_and_square ------------------------------------------------------

MultiPoly group_and_square(MultiPoly p, const std::vector<int>& vars) {
  for (int v : vars) {
    if (p.even_in(v)) continue;
    MultiPoly x = p.odd_part(v);
    MultiPoly y = p.even_part(v);
    p = x * x - y * y;
  }
  return p;
}

// ---- BiPoly ----------------------------------------------------------------

namespace {
const UniPoly kZeroUni;
}

void BiPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

BiPoly::BiPoly(std::vector<UniPoly> y_coeffs) : coeffs_(std::move(y_coeffs)) {
  normalize();
}

BiPoly BiPoly::from_unipoly_in_x(const UniPoly& p) {
  if (p.is_zero()) return BiPoly();
  return BiPoly({p});
}

BiPoly BiPoly::from_unipoly_in_y(const UniPoly& p) {
  std::vector<UniPoly> cs;
  for (int j = 0; j <= p.degree(); ++j)
    cs.push_back(UniPoly::monomial(p.coeff(j), 0));
  return BiPoly(std::move(cs));
}

BiPoly BiPoly::constant(const mpz_class& c) {
  if (c == 0) return BiPoly();
  return BiPoly({UniPoly::monomial(c, 0)});
}

int BiPoly::degree_x() const {
  int d = -1;
  for (const auto& c : coeffs_) d = std::max(d, c.degree());
  return d;
}

const UniPoly& BiPoly::coeff_y(int j) const {
  if (j < 0 || j >= static_cast<int>(coeffs_.size())) return kZeroUni;
  return coeffs_[static_cast<size_t>(j)];
}

const UniPoly& BiPoly::leading_y() const {
  if (coeffs_.empty()) throw AlgebraError("leading coefficient of zero");
  return coeffs_.back();
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  std::vector<UniPoly> cs(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t j = 0; j < cs.size(); ++j)
    cs[j] = a.coeff_y(static_cast<int>(j)) + b.coeff_y(static_cast<int>(j));
  return BiPoly(std::move(cs));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) {
  std::vector<UniPoly> cs(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t j = 0; j < cs.size(); ++j)
    cs[j] = a.coeff_y(static_cast<int>(j)) - b.coeff_y(static_cast<int>(j));
  return BiPoly(std::move(cs));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return BiPoly();
  std::vector<UniPoly> cs(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      cs[i + j] = cs[i + j] + a.coeffs_[i] * b.coeffs_[j];
  }
  return BiPoly(std::move(cs));
}

BiPoly BiPoly::operator-() const {
  std::vector<UniPoly> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(-c);
  return BiPoly(std::move(cs));
}

BiPoly BiPoly::mul_scalar(const mpz_class& c) const {
  if (c == 0) return BiPoly();
  std::vector<UniPoly> cs;
  cs.reserve(coeffs_.size());
  for (const auto& u : coeffs_) cs.push_back(u * UniPoly::monomial(c, 0));
  return BiPoly(std::move(cs));
}

BiPoly BiPoly::mul_unipoly_in_x(const UniPoly& c) const {
  if (c.is_zero()) return BiPoly();
  std::vector<UniPoly> cs;
  cs.reserve(coeffs_.size());
  for (const auto& u : coeffs_) cs.push_back(u * c);
  return BiPoly(std::move(cs));
}

BiPoly BiPoly::derivative_y() const {
  if (coeffs_.size() <= 1) return BiPoly();
  std::vector<UniPoly> cs;
  cs.reserve(coeffs_.size() - 1);
  for (size_t j = 1; j < coeffs_.size(); ++j)
    cs.push_back(coeffs_[j] * UniPoly::monomial(mpz_class(static_cast<long>(j)), 0));
  return BiPoly(std::move(cs));
}

BiPoly BiPoly::swap_xy() const {
  std::vector<UniPoly> cs(static_cast<size_t>(std::max(degree_x(), 0)) + 1);
  if (is_zero()) return BiPoly();
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    for (int i = 0; i <= coeffs_[j].degree(); ++i) {
      const mpz_class& c = coeffs_[j].coeff(i);
      if (c == 0) continue;
      cs[static_cast<size_t>(i)] =
          cs[static_cast<size_t>(i)] +
          UniPoly::monomial(c, static_cast<int>(j));
    }
  }
  return BiPoly(std::move(cs));
}

UniPoly BiPoly::content_y() const {
  UniPoly g;
  for (const auto& c : coeffs_) g = UniPoly::gcd(g, c);
  return g;
}

BiPoly BiPoly::primitive_part_y() const {
  if (is_zero()) return *this;
  UniPoly g = content_y();
  return divide_exact_unipoly_in_x(g);
}

mpz_class BiPoly::integer_content() const {
  mpz_class g(0);
  for (const auto& c : coeffs_) {
    mpz_class cc = c.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cc.get_mpz_t());
  }
  return g;
}

UniPoly BiPoly::specialize_x(const mpq_class& t) const {
  // evaluate each coefficient at t; clear the common denominator den^deg_x
  std::vector<mpq_class> vals;
  vals.reserve(coeffs_.size());
  mpz_class den_lcm(1);
  for (const auto& c : coeffs_) {
    vals.push_back(c.eval_q(t));
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            vals.back().get_den().get_mpz_t());
  }
  std::vector<mpz_class> zs;
  zs.reserve(vals.size());
  UniPoly out;
  for (size_t j = 0; j < vals.size(); ++j) {
    mpz_class z = vals[j].get_num() * (den_lcm / vals[j].get_den());
    out = out + UniPoly::monomial(z, static_cast<int>(j));
  }
  return out;
}

UniPoly BiPoly::specialize_y(const mpq_class& t) const {
  return swap_xy().specialize_x(t);
}

mpq_class BiPoly::eval_q(const mpq_class& x, const mpq_class& y) const {
  mpq_class acc(0);
  for (size_t j = coeffs_.size(); j-- > 0;) acc = acc * y + coeffs_[j].eval_q(x);
  return acc;
}

namespace {

BigScalar uni_eval(const UniPoly& p, const BigScalar& x) { return p.eval(x); }
Interval uni_eval(const UniPoly& p, const Interval& x) {
  return p.interval_eval(x);
}

}  // namespace

template <typename T>
T BiPoly::eval(const T& x, const T& y) const {
  T acc;  // zero
  for (size_t j = coeffs_.size(); j-- > 0;) acc = acc * y + uni_eval(coeffs_[j], x);
  return acc;
}

template BigScalar BiPoly::eval<BigScalar>(const BigScalar&, const BigScalar&) const;
template Interval BiPoly::eval<Interval>(const Interval&, const Interval&) const;

BiPoly BiPoly::divide_exact_unipoly_in_x(const UniPoly& d) const {
  if (d.is_zero()) throw AlgebraError("division by zero");
  std::vector<UniPoly> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(c.divide_exact(d));
  return BiPoly(std::move(cs));
}

std::string BiPoly::str(const std::string& xname, const std::string& yname) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t j = coeffs_.size(); j-- > 0;) {
    if (coeffs_[j].is_zero()) continue;
    std::string c = coeffs_[j].str(xname);
    if (!first) os << " + ";
    first = false;
    if (j == 0) {
      os << "(" << c << ")";
    } else {
      os << "(" << c << ")*" << yname;
      if (j > 1) os << "^" << j;
    }
  }
  return os.str();
}

// ---- pseudo-division and subresultants -------------------------------------

BiDivision pseudo_divide_y(const BiPoly& f, const BiPoly& g) {
  if (g.is_zero()) throw AlgebraError("pseudo-division by zero");
  int df = f.degree_y(), dg = g.degree_y();
  BiDivision out;
  if (df < dg) {
    out.remainder = f;
    out.power = 0;
    return out;
  }
  const UniPoly& lg = g.leading_y();
  BiPoly r = f;
  BiPoly q;
  int steps = df - dg + 1;
  out.power = steps;
  for (int k = 0; k < steps; ++k) {
    int dr = r.degree_y();
    q = q.mul_unipoly_in_x(lg);
    if (dr < dg || r.is_zero()) {
      r = r.mul_unipoly_in_x(lg);
      continue;
    }
    const UniPoly& lr = r.leading_y();
    // q += lr * y^(dr-dg); r = lg*r - lr*y^(dr-dg)*g
    std::vector<UniPoly> mono(static_cast<size_t>(dr - dg) + 1);
    mono.back() = lr;
    BiPoly m(std::move(mono));
    q = q + m;
    r = r.mul_unipoly_in_x(lg) - m * g;
  }
  out.quotient = q;
  out.remainder = r;
  return out;
}

namespace {

UniPoly uni_pow(const UniPoly& p, int k) {
  UniPoly r = UniPoly::monomial(1, 0);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

// Subresultant PRS core: returns the full remainder sequence.
std::vector<BiPoly> subresultant_prs(BiPoly a, BiPoly b) {
  std::vector<BiPoly> seq;
  if (a.degree_y() < b.degree_y()) std::swap(a, b);
  seq.push_back(a);
  if (b.is_zero()) return seq;
  seq.push_back(b);
  UniPoly g = UniPoly::monomial(1, 0);
  UniPoly h = UniPoly::monomial(1, 0);
  while (true) {
    int d = seq[seq.size() - 2].degree_y() - seq.back().degree_y();
    BiDivision div = pseudo_divide_y(seq[seq.size() - 2], seq.back());
    BiPoly r = div.remainder;
    if (r.is_zero()) return seq;
    // divide by g * h^d exactly
    UniPoly divisor = g * uni_pow(h, d);
    r = r.divide_exact_unipoly_in_x(divisor);
    g = seq.back().leading_y();
    // h = h^(1-d) g^d
    if (d == 0) {
      // h unchanged ... h := h * (g/h)^0
    } else {
      UniPoly gd = uni_pow(g, d);
      UniPoly hd = uni_pow(h, d - 1);
      h = gd.divide_exact(hd);
    }
    seq.push_back(r);
    if (seq.back().degree_y() == 0) return seq;
  }
}

}  // namespace

UniPoly resultant_y(const BiPoly& f, const BiPoly& g) {
  if (f.is_zero() || g.is_zero()) return UniPoly();
  if (f.degree_y() == 0 && g.degree_y() == 0) return UniPoly::monomial(1, 0);
  if (f.degree_y() == 0) return uni_pow(f.coeff_y(0), g.degree_y());
  if (g.degree_y() == 0) return uni_pow(g.coeff_y(0), f.degree_y());
  auto seq = subresultant_prs(f, g);
  const BiPoly& last = seq.back();
  if (last.degree_y() > 0) return UniPoly();  // common factor: resultant = 0
  // last = s in Z[x]; previous has degree da
  const BiPoly& prev = seq[seq.size() - 2];
  int da = prev.degree_y();
  UniPoly s = last.coeff_y(0);
  if (da <= 1) return s;
  // subresultant normalization: res = s^da / h^(da-1) where h is the final h
  // of the sequence; recompute h by rerunning the scalar recurrence.
  UniPoly g2 = UniPoly::monomial(1, 0), h2 = UniPoly::monomial(1, 0);
  for (size_t i = 1; i + 1 < seq.size(); ++i) {
    int d = seq[i - 1].degree_y() - seq[i].degree_y();
    g2 = seq[i].leading_y();
    if (d > 0) h2 = uni_pow(g2, d).divide_exact(uni_pow(h2, d - 1));
  }
  return uni_pow(s, da).divide_exact(uni_pow(h2, da - 1));
}

BiPoly gcd_y(const BiPoly& f, const BiPoly& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  UniPoly cf = f.content_y();
  UniPoly cg = g.content_y();
  UniPoly cont = UniPoly::gcd(cf, cg);
  BiPoly pf = f.primitive_part_y();
  BiPoly pg = g.primitive_part_y();
  if (pf.degree_y() == 0 || pg.degree_y() == 0)
    return BiPoly::from_unipoly_in_x(cont);
  auto seq = subresultant_prs(pf, pg);
  BiPoly last = seq.back();
  if (last.degree_y() == 0) return BiPoly::from_unipoly_in_x(cont);
  return last.primitive_part_y().mul_unipoly_in_x(cont);
}

BiPoly to_bipoly(const MultiPoly& p) {
  const RingPtr& ring = p.ring();
  if (ring->size() != 2) throw AlgebraError("bivariate conversion needs 2 vars");
  MultiPoly q = p.primitive_integer();
  int dy = q.degree(1);
  std::vector<UniPoly> cs(static_cast<size_t>(std::max(dy, 0)) + 1);
  for (const auto& [e, c] : q.terms()) {
    cs[static_cast<size_t>(e[1])] =
        cs[static_cast<size_t>(e[1])] + UniPoly::monomial(c.get_num(), e[0]);
  }
  return BiPoly(std::move(cs));
}

}  // namespace raspberry
