#include "raspberry/catalog.hpp"

#include <gmpxx.h>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "raspberry/geometry.hpp"

namespace raspberry {
namespace {

#include "catalog_data.inc"

// Base 10 always: the gmpxx string constructors default to base detection,
// which silently reads a leading zero ("0414" from "0.414") as octal.
mpq_class parse_q(const std::string& s) {
  mpq_class q(s, 10);
  q.canonicalize();
  return q;
}

// "0.1248" -> 1248/10000 (exact value of the printed decimal).
mpq_class parse_decimal(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return mpq_class(mpz_class(s, 10));
  mpz_class num(s.substr(0, dot) + s.substr(dot + 1), 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

int printed_decimals(const std::string& s) {
  auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

mpq_class q_pow10_inv(int k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return mpq_class(1, den);
}

UniPoly parse_poly(const std::string& s) {
  if (s.empty()) return UniPoly();
  std::vector<mpz_class> c;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) c.emplace_back(tok, 10);
  return UniPoly(std::move(c));
}

// "c,i,j;..." with c * r1^i * r2^j.
BiPoly parse_curve(const std::string& s) {
  if (s.empty()) return BiPoly();
  std::map<int, std::map<int, mpz_class>> by_j;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t end = s.find(';', pos);
    if (end == std::string::npos) end = s.size();
    const std::string term = s.substr(pos, end - pos);
    const auto c1 = term.find(',');
    const auto c2 = term.find(',', c1 + 1);
    by_j[std::stoi(term.substr(c2 + 1))][std::stoi(term.substr(c1 + 1, c2 - c1 - 1))] =
        mpz_class(term.substr(0, c1), 10);
    pos = end + 1;
  }
  std::vector<UniPoly> ys(static_cast<size_t>(by_j.rbegin()->first) + 1);
  for (const auto& [j, xs] : by_j) {
    std::vector<mpz_class> cs(static_cast<size_t>(xs.rbegin()->first) + 1);
    for (const auto& [i, c] : xs) cs[static_cast<size_t>(i)] = c;
    ys[static_cast<size_t>(j)] = UniPoly(std::move(cs));
  }
  return BiPoly(std::move(ys));
}

std::vector<NecklaceCode> parse_code_list(const std::string& s) {
  std::vector<NecklaceCode> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(NecklaceCode::parse(tok));
  return out;
}

struct Tables {
  std::vector<NamedConstant> constants;
  std::vector<CodePolynomialRow> rows;
  std::vector<RaspberryEntry> entries;
  std::vector<std::pair<NecklaceCode, int>> counts;
  std::vector<KnownFailure> failures;
};

const Tables& tables() {
  static const Tables t = [] {
    Tables t;
    for (const auto& c : k_constants) {
      t.constants.push_back(
          {c.name, parse_poly(c.poly), {parse_q(c.lo), parse_q(c.hi)}});
    }
    for (const auto& r : k_poly_rows) {
      t.rows.push_back({NecklaceCode::parse(std::string("01:") + r.beads),
                        parse_curve(r.terms), r.homogeneous, r.r1_lo, r.r1_hi});
    }
    for (const auto& e : k_entries) {
      RaspberryEntry entry;
      entry.id = e.id;
      entry.kind = static_cast<EntryKind>(e.kind);
      entry.codes = parse_code_list(e.codes);
      entry.p1 = parse_poly(e.p1);
      entry.p2 = parse_poly(e.p2);
      entry.w1 = {parse_q(e.w1_lo), parse_q(e.w1_hi)};
      entry.w2 = {parse_q(e.w2_lo), parse_q(e.w2_hi)};
      entry.approx1 = e.approx1;
      entry.approx2 = e.approx2;
      entry.curve = parse_curve(e.curve);
      for (const auto& s : e.samples) {
        if (s.r1[0] == '\0') continue;
        entry.samples.push_back({parse_q(s.r1), {parse_q(s.lo), parse_q(s.hi)}});
      }
      t.entries.push_back(std::move(entry));
    }
    for (const auto& c : k_pair_counts) {
      t.counts.emplace_back(NecklaceCode::parse(std::string("01:") + c.beads),
                            c.count);
    }
    for (const auto& f : k_failures) {
      t.failures.push_back({f.r1, f.r2,
                            NecklaceCode::parse(std::string("01:") + f.beads01),
                            NecklaceCode::parse(std::string("02:") + f.beads02),
                            f.geometric});
    }
    return t;
  }();
  return t;
}

// The designated root of p inside w, refined to the working precision.
BigScalar refined_root(const UniPoly& p, const RootBox& w) {
  RootBox b = refine_root_q(p, w, q_pow10_inv(working_digits() + 5));
  return BigScalar(mpq_class((b.lo + b.hi) / 2));
}

bool bipoly_associates(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const BiPoly pa =
      a.divide_exact_unipoly_in_x(UniPoly(std::vector<mpz_class>{a.integer_content()}));
  const BiPoly pb =
      b.divide_exact_unipoly_in_x(UniPoly(std::vector<mpz_class>{b.integer_content()}));
  return pa == pb || pa == -pb;
}

}  // namespace

BigScalar NamedConstant::value() const { return refined_root(poly, window); }

Interval NamedConstant::enclosure() const {
  RootBox b = refine_root_q(poly, window, q_pow10_inv(working_digits()));
  return Interval::from_mpq(b.lo, b.hi);
}

const std::vector<NamedConstant>& named_constants() { return tables().constants; }

const NamedConstant& named_constant(const std::string& name) {
  for (const auto& c : tables().constants) {
    if (c.name == name) return c;
  }
  throw CatalogError("unknown constant: " + name);
}

const std::vector<CodePolynomialRow>& code_polynomial_table() {
  return tables().rows;
}

const CodePolynomialRow& code_polynomial_row(const NecklaceCode& code) {
  for (const auto& r : tables().rows) {
    if (r.code == code) return r;
  }
  throw CatalogError("no polynomial row for " + code.str());
}

namespace {

Interval endpoint_enclosure(const std::string& name) {
  if (!name.empty() && (std::isdigit(static_cast<unsigned char>(name[0])) != 0)) {
    const mpq_class q = parse_q(name);
    return Interval::from_mpq(q, q);
  }
  return named_constant(name).enclosure();
}

}  // namespace

Interval r1_range(const CodePolynomialRow& row) {
  const Interval lo = endpoint_enclosure(row.r1_lo);
  const Interval hi = endpoint_enclosure(row.r1_hi);
  return Interval(lo.lo(), hi.hi());
}

PointRadii RaspberryEntry::radii() const {
  if (kind == EntryKind::flexible) {
    throw CatalogError("entry " + id +
                       " is a flexible family; evaluate a sample instead");
  }
  std::map<int, BigScalar> r;
  r.emplace(1, refined_root(p1, w1));
  if (!p2.is_zero()) r.emplace(2, refined_root(p2, w2));
  return PointRadii::unit_pit(std::move(r));
}

const std::vector<RaspberryEntry>& entries() { return tables().entries; }

const RaspberryEntry& entry(const std::string& id) {
  for (const auto& e : tables().entries) {
    if (e.id == id) return e;
  }
  throw CatalogError("unknown entry: " + id);
}

VerifyReport verify_entry(const RaspberryEntry& e) {
  VerifyReport rep;
  rep.id = e.id;
  const int wd = working_digits();
  const BigScalar tol = BigScalar::pow10(-(wd - 10));
  const auto add = [&rep](std::string name, bool pass, BigScalar margin) {
    rep.checks.push_back({std::move(name), pass, std::move(margin)});
  };

  // One radius assignment to verify per rigid entry; one per flexible sample.
  struct Instance {
    std::string prefix;
    PointRadii radii;
  };
  std::vector<Instance> instances;

  // Window isolation + match against the tabulated decimal approximation;
  // returns the refined designated root.
  const auto checked_root = [&](const std::string& tag, const UniPoly& p,
                                const RootBox& w, const std::string& approx)
      -> std::optional<BigScalar> {
    const auto boxes = isolate_real_roots_q(p, w.lo, w.hi);
    const bool one = boxes.size() == 1;
    add("window " + tag, one, BigScalar(one ? 1 : -1));
    if (!one) return std::nullopt;
    const RootBox b = refine_root_q(p, boxes[0], q_pow10_inv(wd + 5));
    const mpq_class mid = (b.lo + b.hi) / 2;
    if (!approx.empty()) {
      // Tabulated values are truncations: match within one final-digit ulp.
      const mpq_class ulp =
          q_pow10_inv(printed_decimals(approx)) + q_pow10_inv(6);
      mpq_class dev = mid - parse_decimal(approx);
      if (dev < 0) dev = -dev;
      add("approximation " + tag, dev <= ulp, BigScalar(mpq_class(ulp - dev)));
    }
    return BigScalar(mid);
  };

  if (e.kind == EntryKind::flexible) {
    int si = 0;
    for (const auto& s : e.samples) {
      ++si;
      const std::string pre = "sample " + std::to_string(si) + ": ";
      const UniPoly spec = e.curve.specialize_x(s.r1);
      const auto boxes = isolate_real_roots_q(spec, s.r2.lo, s.r2.hi);
      const bool one = boxes.size() == 1;
      add(pre + "window r2", one, BigScalar(one ? 1 : -1));
      if (!one) continue;
      const RootBox b = refine_root_q(spec, boxes[0], q_pow10_inv(wd + 5));
      std::map<int, BigScalar> r;
      r.emplace(1, BigScalar(mpq_class(s.r1)));
      r.emplace(2, BigScalar(mpq_class((b.lo + b.hi) / 2)));
      instances.push_back({pre, PointRadii::unit_pit(std::move(r))});
    }
  } else {
    const auto r1 = checked_root("r1", e.p1, e.w1, e.approx1);
    std::optional<BigScalar> r2;
    if (!e.p2.is_zero()) r2 = checked_root("r2", e.p2, e.w2, e.approx2);
    if (r1 && (e.p2.is_zero() || r2)) {
      std::map<int, BigScalar> r;
      r.emplace(1, *r1);
      if (r2) r.emplace(2, *r2);
      instances.push_back({"", PointRadii::unit_pit(std::move(r))});
    }
  }

  const auto cc = is_complementation_closed(e.codes);
  add("complementation", cc.closed, BigScalar(cc.closed ? 1 : -1));

  for (const auto& inst : instances) {
    for (const auto& code : e.codes) {
      const BigScalar dev =
          abs(dihedral_sum(code, inst.radii) - BigScalar::two_pi());
      add(inst.prefix + "closure " + code.str(), dev < tol, tol - dev);
    }
    for (const auto& code : e.codes) {
      const bool mixed_head1 =
          code.head == 1 && std::count(code.beads.begin(), code.beads.end(), 2) > 0;
      if (!mixed_head1 || !inst.radii.has(2)) continue;
      const BigScalar res = abs(code_polynomial_row(code).poly.eval(
          inst.radii.at(1), inst.radii.at(2)));
      add(inst.prefix + "variety " + code.str(), res < tol, tol - res);
    }

    std::vector<Triangulation> shapes;
    try {
      shapes = all_triangulations(e.codes, inst.radii);
    } catch (const RealizationError&) {
      shapes.clear();
    }
    add(inst.prefix + "triangulation", !shapes.empty(),
        BigScalar(static_cast<long>(shapes.size())));
    if (shapes.empty()) continue;
    rep.detail += inst.prefix + std::to_string(shapes.size()) +
                  (shapes.size() == 1 ? " triangulation; " : " triangulations; ");

    const EmbedOutcome emb = try_embed(shapes.front(), inst.radii);
    const BigScalar emb_tol = BigScalar::pow10(-(wd - 15));
    add(inst.prefix + "embedding", emb.arrangement.has_value(),
        emb_tol - emb.max_residual);
    if (!emb.arrangement) continue;
    for (const auto& line : validate(*emb.arrangement).checks) {
      add(inst.prefix + line.name, line.pass, line.margin);
    }
  }

  rep.pass = !rep.checks.empty() &&
             std::all_of(rep.checks.begin(), rep.checks.end(),
                         [](const CheckLine& c) { return c.pass; });
  if (!rep.detail.empty()) rep.detail.resize(rep.detail.size() - 2);
  return rep;
}

CrossCheckReport cross_check_polynomials(
    const std::map<NecklaceCode, BiPoly>& derived) {
  CrossCheckReport rep;
  rep.all_match = true;
  for (const auto& row : tables().rows) {
    CrossCheckRow out;
    out.code = row.code;

    // Some rows are recorded a second time as a flexible-family curve; the
    // verdict must hold against every recorded form.
    std::vector<const BiPoly*> forms{&row.poly};
    for (const auto& e : tables().entries) {
      if (e.kind == EntryKind::flexible && e.codes.front() == row.code) {
        forms.push_back(&e.curve);
      }
    }
    for (size_t i = 1; i < forms.size(); ++i) {
      out.variants_agree = out.variants_agree && (*forms[i] == *forms[0]);
    }
    if (forms.size() > 1) {
      out.note = row.homogeneous_form
                     ? "recorded twice, once homogenized in the pit radius; "
                       "the forms coincide after setting the pit radius to 1"
                     : "recorded twice; the forms coincide";
    }

    const auto it = derived.find(row.code);
    out.derived_present = it != derived.end();
    if (out.derived_present) {
      out.match = true;
      for (const BiPoly* f : forms) {
        out.match = out.match && bipoly_associates(it->second, *f);
      }
    }
    rep.all_match = rep.all_match && out.derived_present && out.match &&
                    out.variants_agree;
    rep.rows.push_back(std::move(out));
  }
  return rep;
}

const std::vector<std::pair<NecklaceCode, int>>& candidate_pair_counts() {
  return tables().counts;
}

mpq_class KnownFailure::r1_q() const { return parse_decimal(r1); }
mpq_class KnownFailure::r2_q() const { return parse_decimal(r2); }

const std::vector<KnownFailure>& known_failures() { return tables().failures; }

namespace {

nlohmann::ordered_json poly_json(const UniPoly& p) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
  return arr;
}

nlohmann::ordered_json curve_json(const BiPoly& p) {
  auto arr = nlohmann::ordered_json::array();
  for (int j = 0; j <= p.degree_y(); ++j) {
    const auto& cj = p.coeff_y(j).coeffs();
    for (size_t i = 0; i < cj.size(); ++i) {
      if (cj[i] == 0) continue;
      arr.push_back({cj[i].get_str(), i, j});
    }
  }
  return arr;
}

nlohmann::ordered_json window_json(const RootBox& w) {
  return {w.lo.get_str(), w.hi.get_str()};
}

}  // namespace

std::string catalog_json() {
  nlohmann::ordered_json doc;

  doc["constants"] = nlohmann::ordered_json::array();
  for (const auto& c : named_constants()) {
    doc["constants"].push_back({{"name", c.name},
                                {"poly", poly_json(c.poly)},
                                {"window", window_json(c.window)}});
  }

  doc["polynomials"] = nlohmann::ordered_json::array();
  for (const auto& r : code_polynomial_table()) {
    doc["polynomials"].push_back({{"code", r.code.str()},
                                  {"terms", curve_json(r.poly)},
                                  {"homogeneous_form", r.homogeneous_form},
                                  {"r1_range", {r.r1_lo, r.r1_hi}}});
  }

  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries()) {
    nlohmann::ordered_json je;
    je["id"] = e.id;
    je["kind"] = e.kind == EntryKind::two_size
                     ? "two-size"
                     : (e.kind == EntryKind::one_size ? "one-size" : "flexible");
    je["codes"] = nlohmann::ordered_json::array();
    for (const auto& c : e.codes) je["codes"].push_back(c.str());
    if (e.kind == EntryKind::flexible) {
      je["curve"] = curve_json(e.curve);
      je["samples"] = nlohmann::ordered_json::array();
      for (const auto& s : e.samples) {
        je["samples"].push_back(
            {{"r1", s.r1.get_str()}, {"r2_window", window_json(s.r2)}});
      }
    } else {
      je["p1"] = poly_json(e.p1);
      je["r1_window"] = window_json(e.w1);
      je["approx1"] = e.approx1;
      if (!e.p2.is_zero()) {
        je["p2"] = poly_json(e.p2);
        je["r2_window"] = window_json(e.w2);
        je["approx2"] = e.approx2;
      }
    }
    doc["entries"].push_back(std::move(je));
  }

  doc["candidate_pair_counts"] = nlohmann::ordered_json::array();
  for (const auto& [code, n] : candidate_pair_counts()) {
    doc["candidate_pair_counts"].push_back({{"code", code.str()}, {"count", n}});
  }

  doc["known_failures"] = nlohmann::ordered_json::array();
  for (const auto& f : known_failures()) {
    doc["known_failures"].push_back(
        {{"r1", f.r1},
         {"r2", f.r2},
         {"codes", {f.code01.str(), f.code02.str()}},
         {"stage", f.geometric ? "geometry" : "tiling"}});
  }

  return doc.dump(2) + "\n";
}

}  // namespace raspberry
