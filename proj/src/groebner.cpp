#include "raspberry/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

namespace raspberry {

namespace {

using Exps = MultiPoly::Exps;
using Clock = std::chrono::steady_clock;

bool divides(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps quotient(const Exps& b, const Exps& a) {
  Exps q(b.size());
  for (size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
  return q;
}

Exps lcm_exps(const Exps& a, const Exps& b) {
  Exps l(a.size());
  for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

bool disjoint_support(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

int total(const Exps& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

MultiPoly times_monomial(const MultiPoly& p, const Exps& m, const mpq_class& c) {
  MultiPoly mono(p.ring());
  mono.add_term(m, c);
  return p * mono;
}

struct BudgetClock {
  Clock::time_point start = Clock::now();
  const EliminationBudget* budget;
  size_t bytes_per_term;

  explicit BudgetClock(const EliminationBudget& b, int nvars)
      : budget(&b),
        bytes_per_term(96 + 16 * static_cast<size_t>(nvars)) {}

  void check(size_t live_terms) const {
    double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > budget->seconds ||
        live_terms * bytes_per_term > budget->bytes)
      throw AlgebraError("elimination budget exhausted");
  }
};

struct Pair {
  int i, j;
  Exps lcm;
  int sugar;
};

struct Worker {
  TermOrder ord;
  BudgetClock clock;
  std::vector<MultiPoly> basis;
  std::vector<Exps> lead;       // leading exponent of basis[k]
  std::vector<mpq_class> lc;    // leading coefficient of basis[k]
  std::vector<int> sugar;
  std::vector<Pair> pairs;
  size_t live_terms = 0;

  Worker(const TermOrder& o, const EliminationBudget& b, int nvars)
      : ord(o), clock(b, nvars) {}

  // full normal form; also the hot loop, so budget-checked
  MultiPoly reduce(MultiPoly p) const {
    MultiPoly out(p.ring());
    while (!p.is_zero()) {
      clock.check(live_terms + p.terms().size());
      const Exps* lm = ord.leading(p);
      mpq_class c = p.terms().at(*lm);
      bool reduced = false;
      for (size_t k = 0; k < basis.size(); ++k) {
        if (!divides(lead[k], *lm)) continue;
        p = p - times_monomial(basis[k], quotient(*lm, lead[k]), c / lc[k]);
        reduced = true;
        break;
      }
      if (!reduced) {
        MultiPoly mono(p.ring());
        mono.add_term(*lm, c);
        out += mono;
        p = p - mono;
      }
    }
    return out;
  }

  void queue_pairs_with(int j) {
    for (int i = 0; i < j; ++i) {
      if (disjoint_support(lead[static_cast<size_t>(i)],
                           lead[static_cast<size_t>(j)]))
        continue;  // coprime leading monomials: S-polynomial reduces to zero
      Pair p;
      p.i = i;
      p.j = j;
      p.lcm = lcm_exps(lead[static_cast<size_t>(i)], lead[static_cast<size_t>(j)]);
      int si = sugar[static_cast<size_t>(i)] +
               total(quotient(p.lcm, lead[static_cast<size_t>(i)]));
      int sj = sugar[static_cast<size_t>(j)] +
               total(quotient(p.lcm, lead[static_cast<size_t>(j)]));
      p.sugar = std::max(si, sj);
      pairs.push_back(std::move(p));
    }
  }

  void add(MultiPoly p, int sug) {
    const Exps* lm = ord.leading(p);
    basis.push_back(p);
    lead.push_back(*lm);
    lc.push_back(p.terms().at(*lm));
    sugar.push_back(sug);
    live_terms += p.terms().size();
    queue_pairs_with(static_cast<int>(basis.size()) - 1);
  }

  std::optional<Pair> pop_pair() {
    if (pairs.empty()) return std::nullopt;
    auto best = pairs.begin();
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      if (it->sugar != best->sugar) {
        if (it->sugar < best->sugar) best = it;
      } else if (total(it->lcm) < total(best->lcm)) {
        best = it;
      }
    }
    Pair p = *best;
    pairs.erase(best);
    return p;
  }

  void run() {
    while (auto pr = pop_pair()) {
      clock.check(live_terms);
      const MultiPoly& f = basis[static_cast<size_t>(pr->i)];
      const MultiPoly& g = basis[static_cast<size_t>(pr->j)];
      MultiPoly s =
          times_monomial(f, quotient(pr->lcm, lead[static_cast<size_t>(pr->i)]),
                         mpq_class(1) / lc[static_cast<size_t>(pr->i)]) -
          times_monomial(g, quotient(pr->lcm, lead[static_cast<size_t>(pr->j)]),
                         mpq_class(1) / lc[static_cast<size_t>(pr->j)]);
      MultiPoly r = reduce(s);
      if (!r.is_zero()) add(std::move(r), pr->sugar);
    }
  }

  // minimal + tail-reduced basis, primitive integer normalized
  std::vector<MultiPoly> reduced() const {
    std::vector<int> keep;
    for (size_t k = 0; k < basis.size(); ++k) {
      bool redundant = false;
      for (size_t m = 0; m < basis.size(); ++m) {
        if (m == k || !divides(lead[m], lead[k])) continue;
        if (lead[m] == lead[k] && m > k) continue;  // keep the first of equals
        redundant = true;
        break;
      }
      if (!redundant) keep.push_back(static_cast<int>(k));
    }
    std::vector<MultiPoly> out;
    for (int k : keep) {
      Worker sub(ord, *clock.budget, 0);
      sub.clock = clock;  // share the wall clock
      for (int m : keep) {
        if (m == k) continue;
        sub.basis.push_back(basis[static_cast<size_t>(m)]);
        sub.lead.push_back(lead[static_cast<size_t>(m)]);
        sub.lc.push_back(lc[static_cast<size_t>(m)]);
      }
      out.push_back(sub.reduce(basis[static_cast<size_t>(k)]).primitive_integer());
    }
    std::sort(out.begin(), out.end(), [this](const MultiPoly& a, const MultiPoly& b) {
      return ord.compare(*ord.leading(a), *ord.leading(b)) < 0;
    });
    return out;
  }
};

}  // namespace

MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis,
                      const TermOrder& ord) {
  EliminationBudget unlimited;
  unlimited.seconds = 1e18;
  unlimited.bytes = static_cast<size_t>(-1);
  Worker w(ord, unlimited, p.ring() ? p.ring()->size() : 0);
  for (const auto& b : basis) {
    if (b.is_zero()) continue;
    const Exps* lm = ord.leading(b);
    w.basis.push_back(b);
    w.lead.push_back(*lm);
    w.lc.push_back(b.terms().at(*lm));
  }
  return w.reduce(p);
}

std::vector<MultiPoly> groebner_basis(std::vector<MultiPoly> gens,
                                      const TermOrder& ord,
                                      const EliminationBudget& budget) {
  int nvars = 0;
  for (const auto& g : gens)
    if (g.ring()) nvars = g.ring()->size();
  Worker w(ord, budget, nvars);
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    MultiPoly r = w.reduce(g);
    if (!r.is_zero()) w.add(std::move(r), r.total_degree());
  }
  w.run();
  return w.reduced();
}

std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens, Block keep,
                                 const EliminationBudget& budget) {
  RingPtr ring;
  for (const auto& g : gens)
    if (g.ring()) ring = g.ring();
  if (!ring) throw AlgebraError("elimination over an empty system");
  TermOrder ord(ring);
  // first declaration index whose block is `keep`
  int cut = -1;
  for (int i = 0; i < ring->size(); ++i) {
    if (ring->block(i) == keep) {
      cut = i;
      break;
    }
  }
  if (cut < 0) throw AlgebraError("ring has no such block");
  auto gb = groebner_basis(gens, ord, budget);
  std::vector<MultiPoly> out;
  for (const auto& p : gb) {
    bool inside = true;
    for (const auto& [e, c] : p.terms()) {
      for (int i = 0; i < cut && inside; ++i)
        if (e[static_cast<size_t>(i)] > 0) inside = false;
      if (!inside) break;
    }
    if (inside) out.push_back(p);
  }
  return out;
}

}  // namespace raspberry
