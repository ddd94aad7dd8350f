#pragma once

// The verified census of raspberries with at most two sizes of berry: the
// fifteen large-bead code polynomials with their admissible r1 ranges, the
// thirty rigid two-size entries plus the one-size and flexible families, the
// named threshold radii, the per-code candidate-pair counts, and the seven
// radius pairs that pass every interval test yet fail realization.
//
// Every numeric fact is stored exactly — integer polynomial coefficients and
// rational root windows — and re-checked at the working precision on demand.
// verify_entry() reports margins instead of raising: a failed check is data.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raspberry/multipoly.hpp"
#include "raspberry/necklace.hpp"
#include "raspberry/numerics.hpp"
#include "raspberry/realization.hpp"
#include "raspberry/unipoly.hpp"

namespace raspberry {

class CatalogError : public std::runtime_error {
 public:
  explicit CatalogError(const std::string& what) : std::runtime_error(what) {}
};

// A threshold radius described exactly: the designated root of `poly` inside
// `window` (which isolates it from the polynomial's other roots).
struct NamedConstant {
  std::string name;
  UniPoly poly;
  RootBox window;

  // The root, refined to the current working precision.
  BigScalar value() const;
  Interval enclosure() const;
};

const std::vector<NamedConstant>& named_constants();
const NamedConstant& named_constant(const std::string& name);

// One row of the code-polynomial table: a head-1 code with at least one
// large bead, the polynomial relating r1 and r2 on its closure variety, and
// the admissible r1 range (endpoints are rationals or constant names).
struct CodePolynomialRow {
  NecklaceCode code;
  BiPoly poly;            // pit radius set to 1
  bool homogeneous_form;  // tabulated with explicit pit-radius powers
  std::string r1_lo, r1_hi;
};

const std::vector<CodePolynomialRow>& code_polynomial_table();
const CodePolynomialRow& code_polynomial_row(const NecklaceCode& code);

// Admissible r1 range of a table row as an outward-rounded enclosure at the
// current working precision.
Interval r1_range(const CodePolynomialRow& row);

enum class EntryKind { two_size, one_size, flexible };

// A point of a flexible family: exact rational r1, and a window isolating
// the matching r2 on the family curve.
struct EntrySample {
  mpq_class r1;
  RootBox r2;
};

struct RaspberryEntry {
  std::string id;  // "1".."30", "one-size-1..3", "flexible-1..3"
  EntryKind kind = EntryKind::two_size;
  std::vector<NecklaceCode> codes;

  // Rigid entries: minimal polynomials of the radii with isolating windows
  // for the designated roots (one-size entries use p1/w1 only).
  UniPoly p1, p2;
  RootBox w1, w2;
  std::string approx1, approx2;  // tabulated decimal approximations

  // Flexible entries: the single curve relating r1 and r2, plus two checked
  // family points.
  BiPoly curve;
  std::vector<EntrySample> samples;

  // Designated roots refined to the working precision (rigid entries only;
  // throws CatalogError for flexible ones — pick a sample instead).
  PointRadii radii() const;
};

const std::vector<RaspberryEntry>& entries();
const RaspberryEntry& entry(const std::string& id);

// Re-check one entry end to end: window isolation, approximation match,
// dihedral closure of every code, complementation closure, triangulation
// search, embedding, and the full arrangement validation.  Flexible entries
// run the whole battery at each sample point.
struct VerifyReport {
  std::string id;
  bool pass = false;
  std::vector<CheckLine> checks;
  std::string detail;  // census notes (e.g. number of distinct triangulations)
};

VerifyReport verify_entry(const RaspberryEntry& e);

// Compare independently derived polynomials against the table, up to a
// nonzero rational factor.  The four-bead 2211 row is recorded twice in the
// source tables (once homogenized in the pit radius); its cross-check row
// carries the verdict against both recorded forms.
struct CrossCheckRow {
  NecklaceCode code;
  bool derived_present = false;
  bool match = false;           // associate equality with the derived form
  bool variants_agree = true;   // all recorded forms of this row coincide
  std::string note;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  bool all_match = false;
};

CrossCheckReport cross_check_polynomials(
    const std::map<NecklaceCode, BiPoly>& derived);

// Candidate 01/02 code pairs surviving the interval screen, per 01-code.
const std::vector<std::pair<NecklaceCode, int>>& candidate_pair_counts();

// Radius pairs with consistent codes that nevertheless admit no raspberry:
// six fail to tile (no compatible labeled triangulation exists) and one
// fails geometrically at the embedding stage.
struct KnownFailure {
  std::string r1, r2;  // decimal approximations, verbatim
  NecklaceCode code01, code02;
  bool geometric = false;

  mpq_class r1_q() const;
  mpq_class r2_q() const;
};

const std::vector<KnownFailure>& known_failures();

// The whole catalog as deterministic JSON (all numbers as decimal strings).
std::string catalog_json();

}  // namespace raspberry
