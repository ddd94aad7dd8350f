#pragma once

// From necklace code to radius polynomial.  Closing a necklace around its
// head forces the dihedral angles at the head's pit contact to sum to 2*pi.
// This module turns that transcendental closure into polynomial form: expand
// cos(sum) - 1 over the per-edge dihedral sines and cosines, square away the
// dihedral sines, substitute the spherical law of cosines (dihedral cosines
// in terms of tangency angles) and the tangency cosines in terms of radii,
// clear denominators, factor the result, and select the unique irreducible
// factor that vanishes on certified numerical solutions of the closure
// equation.  The squaring and the substitutions enlarge the variety (angle
// wrapping, reflected branches, cleared denominators), which is exactly why
// the final factor selection is done against rigorously enclosed sample
// points instead of trusting the elimination output.
//
// A Groebner-basis elimination over the same relation system is exposed as
// an independent cross-check route (necklace_eliminant); the selected factor
// must divide every member it returns.

#include <vector>

#include <json.hpp>

#include "raspberry/groebner.hpp"
#include "raspberry/multipoly.hpp"
#include "raspberry/necklace.hpp"
#include "raspberry/numerics.hpp"

namespace raspberry {

// cos(t_0 + ... + t_{m-1}) - 1 expanded over {sin t_j, cos t_j}, in a fresh
// ring {s0..s(m-1) | SinDihedral, c0..c(m-1) | CosDihedral}.  m >= 2.
MultiPoly expand_cos_sum(int m);

// Multiplicities of the head's dihedral angles by unordered bead-pair label:
// consecutive bead pairs (1,1), (1,2)/(2,1), (2,2) around the cycle.  The
// mixed count is even for every cyclic word.
struct DihedralCounts {
  int n11 = 0;
  int n12 = 0;
  int n22 = 0;

  int total() const { return n11 + n12 + n22; }
};

DihedralCounts dihedral_counts(const NecklaceCode& code);

// The cleared-denominator closure polynomial W over the ring {r1, r2}:
// primitive with integer coefficients, vanishing on (at least) every radius
// pair that closes the necklace.  Carries extraneous factors by construction.
// If `log` is given, per-stage sizes and timings are appended to it.
MultiPoly closure_radius_poly(const NecklaceCode& code,
                              nlohmann::json* log = nullptr);

// A certified point on the closure curve: both radii enclosed in intervals
// (one endpoint pair is an exact rational, the other a bisection bracket on
// which the dihedral sum provably crosses 2*pi).
struct CurveProbe {
  Interval r1;
  Interval r2;
};

// Deterministic rational-grid scan + interval bisection.  Returns up to
// `count` probes with bracket width below 10^-(digits-12); for one-size
// codes the closure locus is a finite root set, so fewer (at least one)
// may be all there is.  Throws AlgebraError("factor selection failed") if
// no certified point can be produced at all.
std::vector<CurveProbe> sample_closure_curve(const NecklaceCode& code,
                                             int count, int digits);

struct NecklacePolynomial {
  NecklaceCode code;
  MultiPoly poly;       // irreducible, primitive integer, over {r1, r2}
  nlohmann::json log;   // stage sizes, factorization, selection record
};

struct DeriveOptions {
  int probes = 5;        // membership samples for two-size factor selection
  int probe_digits = 40; // certified bracket width ~ 1e-(digits-12)
  int refinements = 2;   // extra sampling passes (+20 digits each) when
                         // factor selection is ambiguous
};

// End to end: closure_radius_poly, factorization, probe-based selection.
// n_sizes counts the distinct sphere sizes including the pit, so bead and
// head labels must lie in {1, ..., n_sizes-1}.  Throws AlgebraError
// ("factor selection failed") when no factor — or more than one — survives
// unanimously on the certified probes after all refinement passes.
NecklacePolynomial necklace_polynomial(const NecklaceCode& code, int n_sizes,
                                       const DeriveOptions& opt = {});

// Cross-check route: Groebner elimination of the full relation system
// (closure cosine and sine, Pythagorean identities, law-of-cosines products,
// tangency-to-radius relations) down to the Radius block, over a per-code
// ring containing only the indeterminates the code uses.  Every returned
// member vanishes on the closure curve, so the selected necklace polynomial
// divides each of them.  Throws AlgebraError("elimination budget exhausted")
// when the budget is hit.
std::vector<MultiPoly> necklace_eliminant(const NecklaceCode& code,
                                          const EliminationBudget& budget = {});

}  // namespace raspberry
