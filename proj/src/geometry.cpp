#include "raspberry/geometry.hpp"

#include <atomic>
#include <type_traits>

namespace raspberry {

namespace {

std::atomic<long> g_clamp_warnings{0};

BigScalar clamp_tolerance() {
  return BigScalar::pow10(-(working_digits() - 10));
}

// Clamp a cosine into [-1, 1]; tolerate overshoot up to the rounding
// tolerance, raise beyond it.
BigScalar clamp_cos(const BigScalar& c) {
  if (c >= BigScalar(-1) && c <= BigScalar(1)) return c;
  BigScalar tol = clamp_tolerance();
  if (c > BigScalar(1)) {
    if (c - BigScalar(1) > tol) throw GeometryError("non-realizable triple");
    g_clamp_warnings.fetch_add(1, std::memory_order_relaxed);
    return BigScalar(1);
  }
  if (BigScalar(-1) - c > tol) throw GeometryError("non-realizable triple");
  g_clamp_warnings.fetch_add(1, std::memory_order_relaxed);
  return BigScalar(-1);
}

Interval clamp_cos(const Interval& c) {
  if (c.lo() >= BigScalar(-1) && c.hi() <= BigScalar(1)) return c;
  BigScalar tol = clamp_tolerance();
  if (c.lo() - BigScalar(1) > tol || BigScalar(-1) - c.hi() > tol)
    throw GeometryError("non-realizable triple");
  g_clamp_warnings.fetch_add(1, std::memory_order_relaxed);
  BigScalar lo = max(min(c.lo(), BigScalar(1)), BigScalar(-1));
  BigScalar hi = max(min(c.hi(), BigScalar(1)), BigScalar(-1));
  return Interval(lo, hi);
}

// sin of an angle in (0, pi) from its cosine; raises on degeneracy.
BigScalar sin_from_cos(const BigScalar& c) {
  BigScalar s2 = BigScalar(1) - c * c;
  if (s2.sign() <= 0) throw GeometryError("collinear contact points");
  return sqrt(s2);
}

Interval sin_from_cos(const Interval& c) {
  Interval s2 = Interval(1) - c * c;
  if (s2.hi().sign() <= 0) throw GeometryError("collinear contact points");
  if (s2.lo().sign() < 0) s2 = Interval(BigScalar(0), s2.hi());
  Interval s = sqrt(s2);
  if (s.contains_zero()) throw GeometryError("collinear contact points");
  return s;
}

}  // namespace

long clamp_warning_count() { return g_clamp_warnings.load(); }
void reset_clamp_warnings() { g_clamp_warnings.store(0); }

template <typename T>
LabeledRadii<T> LabeledRadii<T>::unit_pit(std::map<int, T> berries) {
  LabeledRadii<T> r;
  r.radii = std::move(berries);
  auto it = r.radii.find(0);
  T one(1);
  if (it == r.radii.end()) {
    r.radii.emplace(0, one);
  } else if (!(it->second.lo() == BigScalar(1) && it->second.hi() == BigScalar(1))) {
    throw GeometryError("pit radius must be exactly 1");
  }
  return r;
}

template <>
LabeledRadii<BigScalar> LabeledRadii<BigScalar>::unit_pit(
    std::map<int, BigScalar> berries) {
  LabeledRadii<BigScalar> r;
  r.radii = std::move(berries);
  auto it = r.radii.find(0);
  if (it == r.radii.end()) {
    r.radii.emplace(0, BigScalar(1));
  } else if (it->second != BigScalar(1)) {
    throw GeometryError("pit radius must be exactly 1");
  }
  return r;
}

template <typename T>
const T& LabeledRadii<T>::at(int label) const {
  auto it = radii.find(label);
  if (it == radii.end())
    throw GeometryError("unknown label " + std::to_string(label));
  return it->second;
}

template <typename T>
T tangency_cos(int c, int a, int b, const LabeledRadii<T>& radii) {
  const T& rc = radii.at(c);
  const T& ra = radii.at(a);
  const T& rb = radii.at(b);
  T ca = rc + ra;  // center distances: spheres are externally tangent
  T cb = rc + rb;
  T ab = ra + rb;
  T cosv = (ca * ca + cb * cb - ab * ab) / (T(2) * ca * cb);
  return clamp_cos(cosv);
}

template <typename T>
T tangency_angle(int c, int a, int b, const LabeledRadii<T>& radii) {
  return acos(tangency_cos(c, a, b, radii));
}

template <typename T>
T dihedral_angle(int h, int a, int b, const LabeledRadii<T>& radii) {
  T cos_ab = tangency_cos(0, a, b, radii);
  T cos_ha = tangency_cos(0, h, a, radii);
  T cos_hb = tangency_cos(0, h, b, radii);
  T num = cos_ab - cos_ha * cos_hb;
  T den = sin_from_cos(cos_ha) * sin_from_cos(cos_hb);
  return acos(clamp_cos(num / den));
}

template <typename T>
T triangle_area(int h, int a, int b, const LabeledRadii<T>& radii) {
  T sum = dihedral_angle(h, a, b, radii) + dihedral_angle(a, b, h, radii) +
          dihedral_angle(b, h, a, radii);
  if constexpr (std::is_same_v<T, Interval>) {
    return sum - Interval::pi();
  } else {
    return sum - BigScalar::pi();
  }
}

template struct LabeledRadii<BigScalar>;
template struct LabeledRadii<Interval>;
template BigScalar tangency_cos<BigScalar>(int, int, int, const LabeledRadii<BigScalar>&);
template Interval tangency_cos<Interval>(int, int, int, const LabeledRadii<Interval>&);
template BigScalar tangency_angle<BigScalar>(int, int, int, const LabeledRadii<BigScalar>&);
template Interval tangency_angle<Interval>(int, int, int, const LabeledRadii<Interval>&);
template BigScalar dihedral_angle<BigScalar>(int, int, int, const LabeledRadii<BigScalar>&);
template Interval dihedral_angle<Interval>(int, int, int, const LabeledRadii<Interval>&);
template BigScalar triangle_area<BigScalar>(int, int, int, const LabeledRadii<BigScalar>&);
template Interval triangle_area<Interval>(int, int, int, const LabeledRadii<Interval>&);

}  // namespace raspberry
