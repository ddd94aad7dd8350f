#pragma once

#include <vector>

#include "raspberry/multipoly.hpp"

namespace raspberry {

// Resource ceiling for a Groebner-basis run. Memory is an estimate derived
// from stored term counts, not an allocator measurement; it exists to stop
// runaway eliminations long before the machine does.
struct EliminationBudget {
  double seconds = 600.0;
  std::size_t bytes = std::size_t(8) * 1024 * 1024 * 1024;
};

// Full normal form of p modulo basis under ord (every term reduced).
MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis,
                      const TermOrder& ord);

// Reduced Groebner basis of the ideal generated by gens, under the ring's
// block order. Members are returned in primitive integer form. Throws
// AlgebraError("elimination budget exhausted") when the budget runs out.
std::vector<MultiPoly> groebner_basis(std::vector<MultiPoly> gens,
                                      const TermOrder& ord,
                                      const EliminationBudget& budget = {});

// Members of the reduced Groebner basis supported entirely on indeterminates
// whose block is `keep` or later in declaration order — i.e. the elimination
// ideal once every earlier block has been projected away.
std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens,
                                 Block keep,
                                 const EliminationBudget& budget = {});

}  // namespace raspberry
