#include "raspberry/derive.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "raspberry/factorize.hpp"
#include "raspberry/geometry.hpp"

namespace raspberry {
namespace {

using json = nlohmann::json;
using SteadyClock = std::chrono::steady_clock;

double ms_since(SteadyClock::time_point t0) {
  return std::chrono::duration<double, std::milli>(SteadyClock::now() - t0)
      .count();
}

// Fold one more angle into a running (cos, sin) pair of an angle sum.
void rotate_sum(MultiPoly* cos_sum, MultiPoly* sin_sum, const MultiPoly& s,
                const MultiPoly& c) {
  MultiPoly nc = *cos_sum * c - *sin_sum * s;
  MultiPoly ns = *sin_sum * c + *cos_sum * s;
  *cos_sum = std::move(nc);
  *sin_sum = std::move(ns);
}

// Shared ring for the substitution route.  p1/p2 are the sines of the
// head-to-bead-1 / head-to-bead-2 tangency angles; u, v, w the cosines of
// the (1,1), (1,2), (2,2) berry-pair tangencies.
struct MainRing {
  RingPtr ring;
  int s11, s12, s22;
  int c11, c12, c22;
  int p1, p2;
  int u, v, w;
  int r1, r2;
};

MainRing make_main_ring() {
  MainRing m;
  m.ring = make_ring({
      {"s11", Block::SinDihedral},
      {"s12", Block::SinDihedral},
      {"s22", Block::SinDihedral},
      {"c11", Block::CosDihedral},
      {"c12", Block::CosDihedral},
      {"c22", Block::CosDihedral},
      {"p1", Block::SinTangency},
      {"p2", Block::SinTangency},
      {"u", Block::CosTangency},
      {"v", Block::CosTangency},
      {"w", Block::CosTangency},
      {"r1", Block::Radius},
      {"r2", Block::Radius},
  });
  m.s11 = m.ring->index("s11");
  m.s12 = m.ring->index("s12");
  m.s22 = m.ring->index("s22");
  m.c11 = m.ring->index("c11");
  m.c12 = m.ring->index("c12");
  m.c22 = m.ring->index("c22");
  m.p1 = m.ring->index("p1");
  m.p2 = m.ring->index("p2");
  m.u = m.ring->index("u");
  m.v = m.ring->index("v");
  m.w = m.ring->index("w");
  m.r1 = m.ring->index("r1");
  m.r2 = m.ring->index("r2");
  return m;
}

RingPtr radius_ring() {
  return make_ring({{"r1", Block::Radius}, {"r2", Block::Radius}});
}

// cos/sin of the head's dihedral angle sum; the sum only depends on the
// multiset of angles, so the counts are all that is needed.
void closure_pair(const MainRing& m, const DihedralCounts& n,
                  MultiPoly* cos_sum, MultiPoly* sin_sum) {
  *cos_sum = MultiPoly::constant(m.ring, 1);
  *sin_sum = MultiPoly(m.ring);
  auto at = [&](int i) { return MultiPoly::var(m.ring, i); };
  for (int k = 0; k < n.n11; ++k)
    rotate_sum(cos_sum, sin_sum, at(m.s11), at(m.c11));
  for (int k = 0; k < n.n12; ++k)
    rotate_sum(cos_sum, sin_sum, at(m.s12), at(m.c12));
  for (int k = 0; k < n.n22; ++k)
    rotate_sum(cos_sum, sin_sum, at(m.s22), at(m.c22));
}

void check_head(const NecklaceCode& code) {
  if (code.head != 1 && code.head != 2)
    throw AlgebraError("head labels outside {1,2} are not supported");
}

void log_stage(json* log, const char* stage, const MultiPoly& p,
               SteadyClock::time_point t0) {
  if (log == nullptr) return;
  (*log)["stages"].push_back(
      {{"stage", stage}, {"terms", p.nterms()}, {"ms", ms_since(t0)}});
}

}  // namespace

MultiPoly expand_cos_sum(int m) {
  if (m < 2) throw AlgebraError("angle sum expansion needs at least two angles");
  std::vector<std::pair<std::string, Block>> vars;
  for (int j = 0; j < m; ++j)
    vars.emplace_back("s" + std::to_string(j), Block::SinDihedral);
  for (int j = 0; j < m; ++j)
    vars.emplace_back("c" + std::to_string(j), Block::CosDihedral);
  RingPtr ring = make_ring(std::move(vars));
  MultiPoly cos_sum = MultiPoly::constant(ring, 1);
  MultiPoly sin_sum(ring);
  for (int j = 0; j < m; ++j)
    rotate_sum(&cos_sum, &sin_sum, MultiPoly::var(ring, j),
               MultiPoly::var(ring, m + j));
  return cos_sum - MultiPoly::constant(ring, 1);
}

DihedralCounts dihedral_counts(const NecklaceCode& code) {
  const auto& b = code.beads;
  if (b.size() < 3) throw NecklaceError("no lune/hemisphere necklaces");
  DihedralCounts n;
  for (size_t j = 0; j < b.size(); ++j) {
    int x = b[j];
    int y = b[(j + 1) % b.size()];
    if ((x != 1 && x != 2) || (y != 1 && y != 2))
      throw AlgebraError("bead labels outside {1,2} are not supported");
    if (x == 1 && y == 1)
      ++n.n11;
    else if (x == 2 && y == 2)
      ++n.n22;
    else
      ++n.n12;
  }
  return n;
}

MultiPoly closure_radius_poly(const NecklaceCode& code, json* log) {
  check_head(code);
  const DihedralCounts n = dihedral_counts(code);
  const MainRing m = make_main_ring();
  auto at = [&](int i) { return MultiPoly::var(m.ring, i); };
  const MultiPoly one = MultiPoly::constant(m.ring, 1);

  auto t0 = SteadyClock::now();
  MultiPoly cos_sum(m.ring), sin_sum(m.ring);
  closure_pair(m, n, &cos_sum, &sin_sum);
  MultiPoly p = cos_sum - one;
  log_stage(log, "closure expansion", p, t0);

  // First step: remove the dihedral sines.  Squaring may enlarge the zero
  // set (sign branches, angle wrapping); the final factor selection prunes.
  t0 = SteadyClock::now();
  p = group_and_square(p, {m.s11, m.s12, m.s22});
  p = p.substitute_square(m.s11, one - at(m.c11) * at(m.c11));
  p = p.substitute_square(m.s12, one - at(m.c12) * at(m.c12));
  p = p.substitute_square(m.s22, one - at(m.c22) * at(m.c22));
  log_stage(log, "dihedral sine squaring", p, t0);

  // Dihedral cosines via the spherical law of cosines on the projected
  // contact triangle: cos th(x,y) * p_x * p_y = cos t(x,y) - hx * hy, where
  // hx, hy are the cosines of the head-to-x and head-to-y tangency angles.
  const MultiPoly hx = (code.head == 1) ? at(m.u) : at(m.v);
  const MultiPoly hy = (code.head == 1) ? at(m.v) : at(m.w);
  t0 = SteadyClock::now();
  p = p.substitute_rational(m.c11, at(m.u) - hx * hx, at(m.p1) * at(m.p1));
  p = p.substitute_rational(m.c12, at(m.v) - hx * hy, at(m.p1) * at(m.p2));
  p = p.substitute_rational(m.c22, at(m.w) - hy * hy, at(m.p2) * at(m.p2));
  log_stage(log, "dihedral cosine substitution", p, t0);

  // The mixed-pair count around a cycle is even, so every tangency sine now
  // appears with even degree and the Pythagorean substitution is enough; no
  // second grouping-and-squaring happens here.
  if (!p.even_in(m.p1) || !p.even_in(m.p2))
    throw AlgebraError("internal: odd tangency-sine degree after substitution");
  t0 = SteadyClock::now();
  p = p.substitute_square(m.p1, one - hx * hx);
  p = p.substitute_square(m.p2, one - hy * hy);
  log_stage(log, "tangency sine squaring", p, t0);

  // Second step: tangency cosines in terms of the radii (planar law of
  // cosines on the triangle of centers with the unit pit).
  const MultiPoly r1 = at(m.r1), r2 = at(m.r2);
  const MultiPoly d1 = one + r1, d2 = one + r2;
  t0 = SteadyClock::now();
  p = p.substitute_rational(m.u, d1 * d1 - mpq_class(2) * (r1 * r1), d1 * d1);
  p = p.substitute_rational(m.v, one + r1 + r2 - r1 * r2, d1 * d2);
  p = p.substitute_rational(m.w, d2 * d2 - mpq_class(2) * (r2 * r2), d2 * d2);
  p = p.primitive_integer();
  log_stage(log, "radius substitution", p, t0);

  std::vector<int> var_map(static_cast<size_t>(m.ring->size()), -1);
  var_map[static_cast<size_t>(m.r1)] = 0;
  var_map[static_cast<size_t>(m.r2)] = 1;
  return p.rename(radius_ring(), var_map);
}

// ---- certified curve sampling ----------------------------------------------

namespace {

// Every label the code touches; the scanned label is 2 when two sizes are
// present, otherwise the single label itself.
struct ScanSetup {
  std::vector<int> labels;
  int scan_label = 0;
  bool one_size = false;
};

ScanSetup make_setup(const NecklaceCode& code) {
  std::set<int> ls(code.beads.begin(), code.beads.end());
  ls.insert(code.head);
  ScanSetup s;
  s.labels.assign(ls.begin(), ls.end());
  s.one_size = ls.size() == 1;
  s.scan_label = s.one_size ? *ls.begin() : 2;
  return s;
}

template <typename T>
LabeledRadii<T> scan_radii(const ScanSetup& s, const T& fixed, const T& x) {
  std::map<int, T> berries;
  for (int l : s.labels) berries.emplace(l, l == s.scan_label ? x : fixed);
  return LabeledRadii<T>::unit_pit(std::move(berries));
}

// Sign of dihedral_sum - 2*pi at exact rational radii, with round-to-nearest
// scalars; nullopt when the configuration is not realizable there.
std::optional<int> point_sign(const NecklaceCode& code, const ScanSetup& s,
                              const mpq_class& fixed, const mpq_class& x) {
  try {
    auto radii = scan_radii(s, BigScalar(fixed), BigScalar(x));
    BigScalar g = dihedral_sum(code, radii) - BigScalar::two_pi();
    int sign = g.sign();
    return sign == 0 ? std::nullopt : std::optional<int>(sign);
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

// Same sign, but certified: the enclosure must exclude zero.
std::optional<int> certified_sign(const NecklaceCode& code, const ScanSetup& s,
                                  const mpq_class& fixed, const mpq_class& x) {
  try {
    auto radii =
        scan_radii(s, Interval::from_mpq(fixed), Interval::from_mpq(x));
    Interval g = dihedral_sum(code, radii) - Interval::two_pi();
    if (g.lo().sign() > 0) return 1;
    if (g.hi().sign() < 0) return -1;
    return std::nullopt;
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

// The dihedral sum must evaluate on the whole bracket for the intermediate
// value theorem to apply (a successful enclosure also shows every tangency
// stays realizable across it).
bool continuous_on(const NecklaceCode& code, const ScanSetup& s,
                   const mpq_class& fixed, const mpq_class& lo,
                   const mpq_class& hi) {
  try {
    auto radii =
        scan_radii(s, Interval::from_mpq(fixed), Interval::from_mpq(lo, hi));
    dihedral_sum(code, radii);
    return true;
  } catch (const GeometryError&) {
    return false;
  }
}

// Shrink [lo, hi] (certified opposite signs at the ends) below `target`,
// deciding each cut rigorously; when a cut point sits too close to the curve
// to classify, nearby fractions are tried, and the current bracket is kept
// if all of them are ambiguous.
void bisect_bracket(const NecklaceCode& code, const ScanSetup& s,
                    const mpq_class& fixed, mpq_class* lo, mpq_class* hi,
                    int sign_lo, const mpq_class& target) {
  static const std::pair<int, int> cuts[] = {{1, 2}, {9, 16}, {7, 16}};
  while (mpq_class(*hi - *lo) > target) {
    bool moved = false;
    for (const auto& [num, den] : cuts) {
      mpq_class x = *lo + (*hi - *lo) * mpq_class(num, den);
      x.canonicalize();
      auto sx = certified_sign(code, s, fixed, x);
      if (!sx) continue;
      (*sx == sign_lo ? *lo : *hi) = x;
      moved = true;
      break;
    }
    if (!moved) return;
  }
}

// Scan x over the grid j/16, j = 1..1600, bracket sign changes of the
// dihedral defect, certify and shrink each, and return up to max_probes
// certified probes for this fixed radius.
std::vector<CurveProbe> scan_brackets(const NecklaceCode& code,
                                      const ScanSetup& s,
                                      const mpq_class& fixed, int digits,
                                      int max_probes) {
  std::vector<CurveProbe> out;
  mpq_class target(1);
  {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10,
                  static_cast<unsigned long>(std::max(1, digits - 12)));
    target = mpq_class(1, den);
    target.canonicalize();
  }
  std::optional<int> prev;
  int prev_j = 0;
  for (int j = 1; j <= 1600 && static_cast<int>(out.size()) < max_probes;
       ++j) {
    mpq_class x(j, 16);
    x.canonicalize();
    auto sj = point_sign(code, s, fixed, x);
    if (sj && prev && *prev != *sj) {
      mpq_class lo(prev_j, 16), hi(j, 16);
      lo.canonicalize();
      hi.canonicalize();
      auto slo = certified_sign(code, s, fixed, lo);
      auto shi = certified_sign(code, s, fixed, hi);
      if (slo && shi && *slo != *shi) {
        bisect_bracket(code, s, fixed, &lo, &hi, *slo, target);
        if (mpq_class(hi - lo) <= target * 256 &&
            continuous_on(code, s, fixed, lo, hi)) {
          Interval bracket = Interval::from_mpq(lo, hi);
          Interval fixed_iv = Interval::from_mpq(fixed);
          CurveProbe probe;
          if (s.scan_label == 2) {
            probe.r1 = fixed_iv;
            probe.r2 = bracket;
          } else {
            probe.r1 = bracket;
            probe.r2 = fixed_iv;
          }
          out.push_back(probe);
        }
      }
    }
    prev = sj;
    prev_j = j;
  }
  return out;
}

}  // namespace

std::vector<CurveProbe> sample_closure_curve(const NecklaceCode& code,
                                             int count, int digits) {
  check_head(code);
  dihedral_counts(code);  // validates the bead alphabet
  const ScanSetup s = make_setup(code);
  ScopedDigits guard(digits + 15);
  std::vector<CurveProbe> probes;
  if (s.one_size) {
    probes = scan_brackets(code, s, mpq_class(1), digits, count);
  } else {
    for (int k = 9; k <= 1280 && static_cast<int>(probes.size()) < count;
         k += 7) {
      mpq_class fixed(k, 16);
      fixed.canonicalize();
      auto got = scan_brackets(code, s, fixed, digits, 1);
      probes.insert(probes.end(), got.begin(), got.end());
    }
  }
  if (probes.empty()) throw AlgebraError("factor selection failed");
  return probes;
}

// ---- factor selection -------------------------------------------------------

namespace {

MultiPoly from_bipoly(const RingPtr& ring, const BiPoly& b) {
  MultiPoly p(ring);
  for (int j = 0; j <= b.degree_y(); ++j) {
    const UniPoly& cj = b.coeff_y(j);
    for (int i = 0; i <= cj.degree(); ++i) {
      if (cj.coeff(i) == 0) continue;
      p.add_term({i, j}, mpq_class(cj.coeff(i)));
    }
  }
  return p;
}

json interval_json(const Interval& iv) {
  return json::array({iv.lo().str(), iv.hi().str()});
}

}  // namespace

NecklacePolynomial necklace_polynomial(const NecklaceCode& code, int n_sizes,
                                       const DeriveOptions& opt) {
  auto t_total = SteadyClock::now();
  auto label_ok = [&](int l) { return l >= 1 && l < n_sizes; };
  if (!label_ok(code.head) ||
      !std::all_of(code.beads.begin(), code.beads.end(), label_ok))
    throw AlgebraError("code labels exceed size count");

  json log;
  log["code"] = code.str();
  const DihedralCounts n = dihedral_counts(code);
  log["counts"] = {{"pair11", n.n11}, {"pair12", n.n12}, {"pair22", n.n22}};

  MultiPoly cleared = closure_radius_poly(code, &log);

  auto t0 = SteadyClock::now();
  std::vector<BiFactor> factors = factor_bipoly(to_bipoly(cleared));
  {
    json fl = json::array();
    for (const auto& f : factors)
      fl.push_back({{"poly", f.poly.str()},
                    {"degree_r1", f.poly.degree_x()},
                    {"degree_r2", f.poly.degree_y()},
                    {"multiplicity", f.multiplicity}});
    log["factorization"] = {{"factors", fl}, {"ms", ms_since(t0)}};
  }

  int digits = opt.probe_digits;
  for (int pass = 0; pass <= opt.refinements; ++pass, digits += 20) {
    t0 = SteadyClock::now();
    std::vector<CurveProbe> probes =
        sample_closure_curve(code, opt.probes, digits);
    ScopedDigits guard(digits + 15);
    json sel;
    sel["digits"] = digits;
    sel["probes"] = json::array();
    std::vector<int> unanimous;
    bool consistent = true;
    for (const auto& probe : probes) {
      std::vector<int> containing;
      for (size_t i = 0; i < factors.size(); ++i) {
        Interval val = factors[i].poly.eval<Interval>(probe.r1, probe.r2);
        if (val.contains_zero()) containing.push_back(static_cast<int>(i));
      }
      sel["probes"].push_back({{"r1", interval_json(probe.r1)},
                               {"r2", interval_json(probe.r2)},
                               {"containing", containing}});
      if (&probe == &probes.front())
        unanimous = containing;
      else if (containing != unanimous)
        consistent = false;
    }
    sel["ms"] = ms_since(t0);
    log["selection"] = sel;
    if (consistent && unanimous.size() == 1) {
      const BiFactor& chosen = factors[static_cast<size_t>(unanimous[0])];
      log["selection"]["selected"] = unanimous[0];
      log["selection"]["poly"] = chosen.poly.str();
      log["ms"] = ms_since(t_total);
      NecklacePolynomial result{code, from_bipoly(radius_ring(), chosen.poly),
                                std::move(log)};
      return result;
    }
    log["selection"]["retry"] = true;
  }
  throw AlgebraError("factor selection failed");
}

// ---- Groebner cross-check route ---------------------------------------------

std::vector<MultiPoly> necklace_eliminant(const NecklaceCode& code,
                                          const EliminationBudget& budget) {
  check_head(code);
  const DihedralCounts n = dihedral_counts(code);
  const MainRing m = make_main_ring();
  auto at = [&](int i) { return MultiPoly::var(m.ring, i); };
  const MultiPoly one = MultiPoly::constant(m.ring, 1);
  const MultiPoly hx = (code.head == 1) ? at(m.u) : at(m.v);
  const MultiPoly hy = (code.head == 1) ? at(m.v) : at(m.w);

  MultiPoly cos_sum(m.ring), sin_sum(m.ring);
  closure_pair(m, n, &cos_sum, &sin_sum);
  std::vector<MultiPoly> gens = {cos_sum - one, sin_sum};

  auto pythagoras = [&](int sv, int cv) {
    gens.push_back(at(sv) * at(sv) + at(cv) * at(cv) - one);
  };
  if (n.n11 > 0) {
    pythagoras(m.s11, m.c11);
    gens.push_back(at(m.c11) * at(m.p1) * at(m.p1) - (at(m.u) - hx * hx));
  }
  if (n.n12 > 0) {
    pythagoras(m.s12, m.c12);
    gens.push_back(at(m.c12) * at(m.p1) * at(m.p2) - (at(m.v) - hx * hy));
  }
  if (n.n22 > 0) {
    pythagoras(m.s22, m.c22);
    gens.push_back(at(m.c22) * at(m.p2) * at(m.p2) - (at(m.w) - hy * hy));
  }
  if (n.n11 > 0 || n.n12 > 0)
    gens.push_back(at(m.p1) * at(m.p1) - (one - hx * hx));
  if (n.n12 > 0 || n.n22 > 0)
    gens.push_back(at(m.p2) * at(m.p2) - (one - hy * hy));

  const MultiPoly r1 = at(m.r1), r2 = at(m.r2);
  const MultiPoly d1 = one + r1, d2 = one + r2;
  auto used_by_gens = [&](int var) {
    return std::any_of(gens.begin(), gens.end(),
                       [&](const MultiPoly& g) { return g.uses(var); });
  };
  if (used_by_gens(m.u))
    gens.push_back(at(m.u) * d1 * d1 - (d1 * d1 - mpq_class(2) * (r1 * r1)));
  if (used_by_gens(m.v))
    gens.push_back(at(m.v) * d1 * d2 - (one + r1 + r2 - r1 * r2));
  if (used_by_gens(m.w))
    gens.push_back(at(m.w) * d2 * d2 - (d2 * d2 - mpq_class(2) * (r2 * r2)));

  // Shrink to the indeterminates this code actually touches (plus both
  // radii), keeping declaration order so the block order is preserved.
  std::vector<int> var_map(static_cast<size_t>(m.ring->size()), -1);
  std::vector<std::pair<std::string, Block>> kept;
  for (int i = 0; i < m.ring->size(); ++i) {
    if (m.ring->block(i) != Block::Radius && !used_by_gens(i)) continue;
    var_map[static_cast<size_t>(i)] = static_cast<int>(kept.size());
    kept.emplace_back(m.ring->name(i), m.ring->block(i));
  }
  RingPtr sub = make_ring(std::move(kept));
  std::vector<MultiPoly> renamed;
  renamed.reserve(gens.size());
  for (const auto& g : gens) renamed.push_back(g.rename(sub, var_map));

  std::vector<MultiPoly> members = eliminate(renamed, Block::Radius, budget);

  std::vector<int> back(static_cast<size_t>(sub->size()), -1);
  back[static_cast<size_t>(sub->index("r1"))] = 0;
  back[static_cast<size_t>(sub->index("r2"))] = 1;
  RingPtr rr = radius_ring();
  std::vector<MultiPoly> out;
  out.reserve(members.size());
  for (const auto& g : members) out.push_back(g.rename(rr, back));
  return out;
}

}  // namespace raspberry
