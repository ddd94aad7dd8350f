#pragma once

// Spherical-trigonometry kernels on the unit pit: the tangency angle between
// two contact points, the dihedral angle of the projected contact triangle at
// a vertex, and the triangle's Girard (spherical-excess) area.  Each kernel
// has a point (BigScalar) and a rigorous enclosure (Interval) variant.

#include <map>
#include <stdexcept>
#include <string>

#include "raspberry/numerics.hpp"

namespace raspberry {

class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Radii keyed by label; label 0 is the pit and always has radius exactly 1.
template <typename T>
struct LabeledRadii {
  std::map<int, T> radii;

  // Builds {0: 1} ∪ berries; throws if a label-0 entry is present but not 1.
  static LabeledRadii unit_pit(std::map<int, T> berries);

  const T& at(int label) const;
  bool has(int label) const { return radii.count(label) != 0; }
};

using PointRadii = LabeledRadii<BigScalar>;
using IntervalRadii = LabeledRadii<Interval>;

// Cosine of the angle at sphere c's center between the contact points with a
// and b (planar law of cosines on the triangle of centers), clamped into
// [-1, 1] when within the rounding tolerance.
template <typename T>
T tangency_cos(int c, int a, int b, const LabeledRadii<T>& radii);

// The angle itself, in (0, pi).
template <typename T>
T tangency_angle(int c, int a, int b, const LabeledRadii<T>& radii);

// Dihedral angle at vertex h of the spherical contact triangle (h, a, b)
// projected on the pit: spherical law of cosines from the three pit-centered
// tangency angles.
template <typename T>
T dihedral_angle(int h, int a, int b, const LabeledRadii<T>& radii);

// Girard area of the projected contact triangle: sum of its three dihedral
// angles minus pi.  Strictly positive for a genuine triangle.
template <typename T>
T triangle_area(int h, int a, int b, const LabeledRadii<T>& radii);

// Cosines within 10^-(working_digits()-10) outside [-1, 1] are clamped and
// counted here instead of raising, so configurations sitting exactly on a
// variety survive rounding.  Larger excursions raise GeometryError.
long clamp_warning_count();
void reset_clamp_warnings();

}  // namespace raspberry
