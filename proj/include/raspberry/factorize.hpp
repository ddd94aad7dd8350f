#pragma once

#include <vector>

#include "raspberry/multipoly.hpp"
#include "raspberry/unipoly.hpp"

namespace raspberry {

struct UniFactor {
  UniPoly poly;  // irreducible over the rationals, primitive, positive lead
  int multiplicity = 1;
};

struct BiFactor {
  BiPoly poly;  // irreducible over the rationals, primitive, normalized sign
  int multiplicity = 1;
};

// Irreducible factorization over the rationals, returned in primitive integer
// form.  The integer content (and overall sign) is dropped; the product of
// poly^multiplicity equals the input up to a rational unit.
std::vector<UniFactor> factor_unipoly(const UniPoly& f);
std::vector<BiFactor> factor_bipoly(const BiPoly& f);

// Exact division helpers: true and *quotient filled iff g divides f.
bool try_divide(const UniPoly& f, const UniPoly& g, UniPoly* quotient);
bool try_divide_y(const BiPoly& f, const BiPoly& g, BiPoly* quotient);

}  // namespace raspberry
