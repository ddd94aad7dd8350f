#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <random>
#include <vector>

#include "raspberry/geometry.hpp"
#include "raspberry/numerics.hpp"
#include "raspberry/unipoly.hpp"

using raspberry::BigScalar;
using raspberry::GeometryError;
using raspberry::Interval;
using raspberry::IntervalRadii;
using raspberry::PointRadii;
using raspberry::ScopedDigits;
using raspberry::UniPoly;

namespace {

// Tight rational enclosure of the unique root of p in (lo, hi).
raspberry::RootBox root_box(const UniPoly& p, long lo, long hi) {
  auto boxes = raspberry::isolate_real_roots_q(p, mpq_class(lo), mpq_class(hi));
  REQUIRE(boxes.size() == 1);
  mpz_class den("1" + std::string(52, '0'));
  return raspberry::refine_root_q(p, boxes[0], mpq_class(mpz_class(1), den));
}

PointRadii one_size_point(const raspberry::RootBox& b) {
  mpq_class mid = (b.lo + b.hi) / 2;
  mid.canonicalize();
  return PointRadii::unit_pit({{1, BigScalar(mid)}});
}

IntervalRadii one_size_interval(const raspberry::RootBox& b) {
  return IntervalRadii::unit_pit({{1, Interval::from_mpq(b.lo, b.hi)}});
}

}  // namespace

TEST_CASE("unit berries subtend pi/3 at the pit") {
  ScopedDigits guard(60);
  PointRadii r = PointRadii::unit_pit({{1, BigScalar(1)}, {2, BigScalar(1)}});
  BigScalar t = raspberry::tangency_angle(0, 1, 2, r);
  CHECK(abs(t - BigScalar::pi() / BigScalar(3)) < BigScalar::pow10(-55));

  IntervalRadii ir = IntervalRadii::unit_pit({{1, Interval(1)}, {2, Interval(1)}});
  Interval ti = raspberry::tangency_angle(0, 1, 2, ir);
  CHECK(ti.intersects(acos(Interval::from_mpq(mpq_class(1, 2)))));
  CHECK(ti.width() < BigScalar::pow10(-50));
}

TEST_CASE("tangency matches the closed form for equal radii") {
  ScopedDigits guard(60);
  // cos = 1 - 2r^2/(1+r)^2 for two radius-r berries on the unit pit
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(1, 400);
  for (int trial = 0; trial < 50; ++trial) {
    mpq_class r(num(rng), 100);
    r.canonicalize();
    PointRadii pr = PointRadii::unit_pit({{1, BigScalar(r)}, {2, BigScalar(r)}});
    BigScalar lhs = cos(raspberry::tangency_angle(0, 1, 2, pr));
    mpq_class expect = 1 - 2 * r * r / ((1 + r) * (1 + r));
    CHECK(abs(lhs - BigScalar(expect)) < BigScalar::pow10(-55));
  }
}

TEST_CASE("tangency and dihedral are symmetric in the last two labels") {
  ScopedDigits guard(50);
  PointRadii r = PointRadii::unit_pit(
      {{1, BigScalar(mpq_class(7, 5))}, {2, BigScalar(mpq_class(9, 4))}, {3, BigScalar(mpq_class(11, 10))}});
  CHECK(raspberry::tangency_angle(0, 1, 2, r) == raspberry::tangency_angle(0, 2, 1, r));
  CHECK(raspberry::dihedral_angle(3, 1, 2, r) == raspberry::dihedral_angle(3, 2, 1, r));

  BigScalar area = raspberry::triangle_area(1, 2, 3, r);
  const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  for (const auto& p : perms) {
    BigScalar other = raspberry::triangle_area(p[0], p[1], p[2], r);
    CHECK(abs(area - other) < BigScalar::pow10(-45));
  }
}

TEST_CASE("four equal beads close at dihedral pi/2") {
  ScopedDigits guard(60);
  UniPoly p = UniPoly::from_ints({-1, -2, 1});  // r = 1 + sqrt(2)
  auto box = root_box(p, 2, 3);

  PointRadii pr = one_size_point(box);
  BigScalar d = raspberry::dihedral_angle(1, 1, 1, pr);
  CHECK(abs(d * BigScalar(4) - BigScalar::two_pi()) < BigScalar::pow10(-40));
  BigScalar area = raspberry::triangle_area(1, 1, 1, pr);
  CHECK(abs(area * BigScalar(8) - BigScalar(4) * BigScalar::pi()) < BigScalar::pow10(-40));

  IntervalRadii ir = one_size_interval(box);
  Interval di = raspberry::dihedral_angle(1, 1, 1, ir);
  CHECK(di.mul_int(4).intersects(Interval::two_pi()));
  CHECK(di.width() < BigScalar::pow10(-40));
}

TEST_CASE("three equal beads close at dihedral 2pi/3") {
  ScopedDigits guard(60);
  UniPoly p = UniPoly::from_ints({-2, -4, 1});  // r = 2 + sqrt(6)
  auto box = root_box(p, 4, 5);

  PointRadii pr = one_size_point(box);
  BigScalar d = raspberry::dihedral_angle(1, 1, 1, pr);
  CHECK(abs(d * BigScalar(3) - BigScalar::two_pi()) < BigScalar::pow10(-40));
  BigScalar area = raspberry::triangle_area(1, 1, 1, pr);
  CHECK(abs(area * BigScalar(4) - BigScalar(4) * BigScalar::pi()) < BigScalar::pow10(-40));
}

TEST_CASE("five equal beads close at dihedral 2pi/5") {
  ScopedDigits guard(60);
  UniPoly p = UniPoly::from_ints({1, 4, 1, -6, 1});  // icosahedral radius
  auto box = root_box(p, 1, 2);

  PointRadii pr = one_size_point(box);
  BigScalar d = raspberry::dihedral_angle(1, 1, 1, pr);
  CHECK(abs(d * BigScalar(5) - BigScalar::two_pi()) < BigScalar::pow10(-30));
  BigScalar area = raspberry::triangle_area(1, 1, 1, pr);
  CHECK(abs(area * BigScalar(20) - BigScalar(4) * BigScalar::pi()) < BigScalar::pow10(-30));

  IntervalRadii ir = one_size_interval(box);
  Interval di = raspberry::dihedral_angle(1, 1, 1, ir);
  CHECK(di.mul_int(5).intersects(Interval::two_pi()));
}

TEST_CASE("point results lie inside interval results") {
  ScopedDigits guard(40);
  std::mt19937_64 rng(20260818);
  std::uniform_int_distribution<long> num(50, 300);
  std::uniform_int_distribution<long> wob(1, 30);
  int realizable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    mpq_class r1(num(rng), 100), r2(num(rng), 100), r3(num(rng), 100);
    mpq_class w(wob(rng), 10000);
    for (auto* q : {&r1, &r2, &r3}) q->canonicalize();
    PointRadii pr = PointRadii::unit_pit(
        {{1, BigScalar(r1)}, {2, BigScalar(r2)}, {3, BigScalar(r3)}});
    IntervalRadii ir = IntervalRadii::unit_pit(
        {{1, Interval::from_mpq(r1 - w, r1 + w)},
         {2, Interval::from_mpq(r2 - w, r2 + w)},
         {3, Interval::from_mpq(r3 - w, r3 + w)}});
    try {
      Interval td = raspberry::dihedral_angle(1, 2, 3, ir);
      BigScalar pd = raspberry::dihedral_angle(1, 2, 3, pr);
      CHECK(td.contains(pd));
      Interval ta = raspberry::triangle_area(1, 2, 3, ir);
      BigScalar pa = raspberry::triangle_area(1, 2, 3, pr);
      CHECK(ta.contains(pa));
      ++realizable;
    } catch (const GeometryError&) {
      // interval radii may straddle a non-realizable region; skip
    }
  }
  CHECK(realizable > 100);
}

TEST_CASE("impossible triples and unknown labels raise") {
  ScopedDigits guard(40);
  PointRadii r = PointRadii::unit_pit(
      {{1, BigScalar(mpq_class(1, 100))}, {2, BigScalar(100)}, {3, BigScalar(100)}});
  // two giant berries cannot both touch a speck that sits between them
  CHECK_THROWS_WITH_AS((void)raspberry::dihedral_angle(1, 2, 3, r),
                       "non-realizable triple", GeometryError);
  CHECK_THROWS_AS((void)raspberry::tangency_angle(0, 1, 7, r), GeometryError);
  CHECK_THROWS_AS(PointRadii::unit_pit({{0, BigScalar(2)}}), GeometryError);
}

TEST_CASE("exactly flat triples clamp instead of failing") {
  ScopedDigits guard(50);
  // Unit pit, two unit berries tangent to each other, and the small berry
  // filling the planar gap between all three: 3r^2 + 6r - 1 = 0.  All four
  // centers are coplanar, so the small berry's contact point lies on the
  // great circle through the other two and its dihedral angle is exactly pi.
  UniPoly p = UniPoly::from_ints({-1, 6, 3});
  auto box = root_box(p, 0, 1);

  raspberry::reset_clamp_warnings();
  IntervalRadii ir = IntervalRadii::unit_pit(
      {{1, Interval::from_mpq(box.lo, box.hi)}, {2, Interval(1)}, {3, Interval(1)}});
  Interval d = raspberry::dihedral_angle(1, 2, 3, ir);
  CHECK(d.contains(BigScalar::pi()));
  CHECK(raspberry::clamp_warning_count() > 0);

  raspberry::reset_clamp_warnings();
  CHECK(raspberry::clamp_warning_count() == 0);
  mpq_class mid = (box.lo + box.hi) / 2;
  mid.canonicalize();
  PointRadii pr = PointRadii::unit_pit(
      {{1, BigScalar(mid)}, {2, BigScalar(1)}, {3, BigScalar(1)}});
  BigScalar dp = raspberry::dihedral_angle(1, 2, 3, pr);
  CHECK(abs(dp - BigScalar::pi()) < BigScalar::pow10(-20));
}
