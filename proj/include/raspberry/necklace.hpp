#pragma once

// Necklace codes: the cyclic words of berry labels around a head berry, in
// canonical form, plus the two combinatorial constraints a raspberry imposes
// on them — the dihedral angles around a head must sum to 2*pi, and every
// bead triple must be answered by a complementary necklace around its middle
// bead.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "raspberry/geometry.hpp"
#include "raspberry/numerics.hpp"

namespace raspberry {

class NecklaceError : public std::runtime_error {
 public:
  explicit NecklaceError(const std::string& what) : std::runtime_error(what) {}
};

// Beads are compared with higher labels first (2 before 1), so canonical
// strings lead with 2s: 01:2211, 01:2121, matching the tabulated forms.
struct NecklaceCode {
  int head = 0;
  std::vector<int> beads;  // canonical cyclic word

  int length() const { return static_cast<int>(beads.size()); }
  std::string str() const;                          // "01:2211"
  static NecklaceCode parse(const std::string& s);  // inverse of str()

  friend bool operator==(const NecklaceCode& a, const NecklaceCode& b) {
    return a.head == b.head && a.beads == b.beads;
  }
  friend bool operator!=(const NecklaceCode& a, const NecklaceCode& b) {
    return !(a == b);
  }
  friend bool operator<(const NecklaceCode& a, const NecklaceCode& b);
};

// Minimal representative over all rotations and reflections of the bead
// word.  Throws NecklaceError("no lune/hemisphere necklaces") for words
// shorter than 3.
NecklaceCode canonicalize(int head, std::vector<int> beads);

// All canonical codes with the given head, bead alphabet and lengths
// (inclusive range) that satisfy `keep` (empty = keep all), sorted.
std::vector<NecklaceCode> enumerate_codes(
    int head, const std::vector<int>& alphabet, int min_len, int max_len,
    const std::function<bool(const NecklaceCode&)>& keep = nullptr);

// Sum of the dihedral angles at the head's contact point between consecutive
// beads, around the whole necklace.  Closes to 2*pi on a realized raspberry.
template <typename T>
T dihedral_sum(const NecklaceCode& code, const LabeledRadii<T>& radii);

// One requirement per consecutive bead triple (a, b, c) around head h: the
// code set must contain a head-b necklace with consecutive beads (a, h, c),
// up to reflection.
struct TripleRequirement {
  int source_head = 0;            // h of the emitting necklace
  int head = 0;                   // b: required necklace's head
  std::array<int, 3> around{};    // (a, h, c)
  std::string str() const;

  friend bool operator==(const TripleRequirement& x, const TripleRequirement& y);
  friend bool operator<(const TripleRequirement& x, const TripleRequirement& y);
};

std::vector<TripleRequirement> complement_requirements(const NecklaceCode& code);

// Does the cyclic bead word contain (a, h, c) consecutively, in either
// direction?
bool contains_triple(const NecklaceCode& code, int a, int h, int c);

struct ClosureCheck {
  bool closed = false;
  std::optional<TripleRequirement> unmet;  // witness when not closed
};

ClosureCheck is_complementation_closed(const std::vector<NecklaceCode>& codes);

// Greatest subset of `codes` on which every member's requirements are met
// within the subset (may be empty).
std::vector<NecklaceCode> largest_closed_subset(std::vector<NecklaceCode> codes);

}  // namespace raspberry
