#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <random>
#include <vector>

#include "raspberry/numerics.hpp"
#include "raspberry/unipoly.hpp"

using raspberry::BigScalar;
using raspberry::Interval;
using raspberry::NumericsError;
using raspberry::ScopedDigits;
using raspberry::UniPoly;

// mpmath oracle values (50 significant digits).
static const char* kOneSqrt2 =
    "2.4142135623730950488016887242096980785696718753769";
static const char* kGamma =
    "1.1085085392554660376908799231149806318957832131594";
static const char* kPi =
    "3.1415926535897932384626433832795028841971693993751";
static const char* kAcosThird =
    "1.2309594173407746821349291782479873757103400093551";

TEST_CASE("big scalar round trip and arithmetic") {
  ScopedDigits guard(60);
  BigScalar a("1.5");
  BigScalar b(3);
  CHECK((a * b) == BigScalar(mpq_class(9, 2)));
  CHECK((a + a) == b);
  CHECK((b / BigScalar(2)).to_double() == doctest::Approx(1.5));
  CHECK(BigScalar(mpz_class("123456789123456789123456789")).str(27) ==
        "123456789123456789123456789");
  CHECK(BigScalar(-7).sign() == -1);
  CHECK(BigScalar(0).sign() == 0);
  CHECK(abs(BigScalar(-7)) == BigScalar(7));
}

TEST_CASE("big scalar agrees with reference constants") {
  ScopedDigits guard(60);
  BigScalar ref(kOneSqrt2);
  BigScalar mine = BigScalar(1) + sqrt(BigScalar(2));
  CHECK(abs(mine - ref) < BigScalar(mpq_class(1) / mpz_class("10000000000000000000000000000000000000000000000")));

  CHECK(abs(BigScalar::pi() - BigScalar(kPi)) <
        BigScalar::pow10(-45));
  CHECK(abs(acos(BigScalar(mpq_class(1, 3))) - BigScalar(kAcosThird)) <
        BigScalar::pow10(-45));
}

TEST_CASE("big scalar precision scopes") {
  raspberry::set_working_digits(30);
  BigScalar coarse = sqrt(BigScalar(2));
  {
    ScopedDigits guard(80);
    BigScalar fine = sqrt(BigScalar(2));
    BigScalar diff = abs(fine - coarse);
    CHECK(diff < BigScalar::pow10(-28));
    CHECK(diff > BigScalar::pow10(-85));  // coarse really is coarse
  }
  CHECK(raspberry::working_digits() == 30);
  raspberry::set_working_digits(60);
}

TEST_CASE("big scalar domain errors") {
  ScopedDigits guard(40);
  CHECK_THROWS_AS((void)sqrt(BigScalar(-1)), NumericsError);
  CHECK_THROWS_AS((void)acos(BigScalar(2)), NumericsError);
}

TEST_CASE("interval outward rounding keeps true values inside") {
  ScopedDigits guard(40);
  mpq_class third(1, 3);
  Interval x = Interval::from_mpq(third);
  CHECK(x.contains(third));
  CHECK(x.width().sign() > 0);  // 1/3 is not dyadic, so the hull is fat

  Interval y = x * x;                     // 1/9
  CHECK(y.contains(mpq_class(1, 9)));
  Interval z = Interval(1) / x;           // 3
  CHECK(z.contains(mpq_class(3)));
  Interval s = sqrt(Interval::from_mpq(mpq_class(2)));
  Interval one_plus = s + Interval(1);
  CHECK(one_plus.contains(BigScalar(kOneSqrt2)));
}

TEST_CASE("interval acos flips endpoints and stays enclosing") {
  ScopedDigits guard(40);
  Interval x = Interval::from_mpq(mpq_class(1, 3), mpq_class(1, 2));
  Interval a = acos(x);
  CHECK(a.lo() <= a.hi());
  CHECK(a.contains(BigScalar(kAcosThird)));
  // acos(1/2) = pi/3
  CHECK(a.contains(BigScalar::pi() / BigScalar(3)));
  CHECK_THROWS_AS((void)acos(Interval::from_mpq(mpq_class(9, 8))), NumericsError);
}

TEST_CASE("interval division and intersection guards") {
  ScopedDigits guard(40);
  Interval z = Interval::from_mpq(mpq_class(-1), mpq_class(1));
  CHECK_THROWS_WITH_AS((void)(Interval(1) / z),
                       "interval division by zero-containing interval",
                       NumericsError);
  Interval a = Interval::from_mpq(mpq_class(0), mpq_class(1));
  Interval b = Interval::from_mpq(mpq_class(2), mpq_class(3));
  CHECK_THROWS_WITH_AS((void)Interval::intersect(a, b), "empty intersection", NumericsError);
  CHECK(Interval::hull(a, b).contains(mpq_class(3, 2)));
}

TEST_CASE("polynomial arithmetic identities") {
  UniPoly x = UniPoly::monomial(1, 1);
  UniPoly p = UniPoly::from_ints({-1, 0, 1});       // x^2 - 1
  CHECK(p == (x - UniPoly::from_ints({1})) * (x + UniPoly::from_ints({1})));
  CHECK(p.derivative() == UniPoly::from_ints({0, 2}));
  CHECK(p.degree() == 2);

  UniPoly q = UniPoly::from_ints({-2, 1});          // x - 2
  UniPoly r = UniPoly::from_ints({3, 1});           // x + 3
  UniPoly sq = q * q * r;
  CHECK(UniPoly::associates(sq.squarefree_part(), q * r));
  CHECK(UniPoly::associates(UniPoly::gcd(sq, q * q), q * q));
  CHECK(sq.divide_exact(q) == q * r);
}

TEST_CASE("polynomial exact evaluation") {
  UniPoly p = UniPoly::from_ints({-1, -2, 1});      // x^2 - 2x - 1
  CHECK(p.eval_q(mpq_class(0)) == mpq_class(-1));
  CHECK(p.sign_at(mpq_class(2)) == -1);
  CHECK(p.sign_at(mpq_class(3)) == 1);
  CHECK(p.sign_at(mpq_class(5, 2)) == 1);           // p(5/2) = 1/4
}

TEST_CASE("root isolation finds and separates every real root") {
  UniPoly p = UniPoly::from_ints({-1, -2, 1});      // roots 1 +- sqrt(2)
  auto boxes = raspberry::isolate_real_roots_q(p, mpq_class(0), mpq_class(10));
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].lo < mpq_class(241422, 100000));
  CHECK(boxes[0].hi > mpq_class(241421, 100000));

  // quartic with four real roots: -0.4596, -0.3446, 1.1085, 5.6957
  UniPoly q = UniPoly::from_ints({1, 4, 1, -6, 1});
  auto qb = raspberry::isolate_real_roots_q(q, mpq_class(-10), mpq_class(10));
  REQUIRE(qb.size() == 4);
  for (size_t i = 1; i < qb.size(); ++i) {
    CHECK(qb[i - 1].hi <= qb[i].lo);  // ordered
    CHECK(!(qb[i - 1].hi == qb[i].lo && !qb[i - 1].exact() && !qb[i].exact()));
  }
  CHECK(qb[2].lo < mpq_class(11086, 10000));
  CHECK(qb[2].hi > mpq_class(11085, 10000));
}

TEST_CASE("root isolation handles exact rational roots") {
  // (x - 1)(x - 2)(x^2 - 3): domain endpoints are roots, sqrt(3) interior
  UniPoly p = UniPoly::from_ints({-1, 1}) * UniPoly::from_ints({-2, 1}) *
              UniPoly::from_ints({-3, 0, 1});
  auto boxes = raspberry::isolate_real_roots_q(p, mpq_class(1), mpq_class(2));
  REQUIRE(boxes.size() == 3);
  CHECK(boxes.front().exact());
  CHECK(boxes.front().lo == mpq_class(1));
  CHECK(boxes.back().exact());
  CHECK(boxes.back().lo == mpq_class(2));
  CHECK(!boxes[1].exact());
  CHECK(boxes[1].lo > mpq_class(1));
  CHECK(boxes[1].hi < mpq_class(2));

  // multiple root collapses to one box: (x-1)^3 (x+1)
  UniPoly m = UniPoly::from_ints({-1, 1}) * UniPoly::from_ints({-1, 1}) *
              UniPoly::from_ints({-1, 1}) * UniPoly::from_ints({1, 1});
  auto mb = raspberry::isolate_real_roots_q(m, mpq_class(-5), mpq_class(5));
  REQUIRE(mb.size() == 2);
}

TEST_CASE("root refinement reaches forty digits") {
  ScopedDigits guard(60);
  UniPoly p = UniPoly::from_ints({-1, -2, 1});      // root 1 + sqrt(2)
  auto boxes = raspberry::isolate_real_roots_q(p, mpq_class(0), mpq_class(10));
  REQUIRE(boxes.size() == 1);
  mpz_class den45("1" + std::string(45, '0'));
  mpz_class den44("1" + std::string(44, '0'));
  auto tight = raspberry::refine_root_q(p, boxes[0], mpq_class(mpz_class(1), den45));
  BigScalar ref(kOneSqrt2);
  // the enclosure may be far tighter than the 50-digit reference constant,
  // so compare against a band around the reference instead
  Interval band = Interval(ref).inflate(BigScalar::pow10(-48));
  CHECK(band.contains(Interval::from_mpq(tight.lo, tight.hi)));
  CHECK(mpq_class(tight.hi - tight.lo) < mpq_class(mpz_class(1), den44));

  UniPoly q = UniPoly::from_ints({1, 4, 1, -6, 1});
  auto qb = raspberry::isolate_real_roots_q(q, mpq_class(1), mpq_class(2));
  REQUIRE(qb.size() == 1);
  Interval iso = Interval::from_mpq(qb[0].lo, qb[0].hi);
  Interval fine = raspberry::refine_root(q, iso, 45);
  CHECK(Interval(BigScalar(kGamma)).inflate(BigScalar::pow10(-48)).contains(fine));
  CHECK(fine.width() < BigScalar::pow10(-44));
}

TEST_CASE("interval evaluation contains exact values on random rationals") {
  ScopedDigits guard(40);
  std::mt19937_64 rng(20260818);
  std::uniform_int_distribution<long> num(-500, 500);
  std::uniform_int_distribution<long> den(1, 200);
  std::uniform_int_distribution<int> deg(0, 6);
  std::uniform_int_distribution<long> coef(-20, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<long> cs(static_cast<size_t>(deg(rng)) + 1);
    for (auto& c : cs) c = coef(rng);
    UniPoly p = UniPoly::from_ints(cs);
    mpq_class t(num(rng), den(rng));
    t.canonicalize();
    mpq_class w(1, den(rng));
    Interval x = Interval::from_mpq(t - w, t + w);
    // sample points inside x, including endpoints
    const std::vector<mpq_class> samples = {t, mpq_class(t - w), mpq_class(t + w),
                                            mpq_class(t + w / 3)};
    Interval px = p.interval_eval(x);
    for (const mpq_class& s : samples) CHECK(px.contains(p.eval_q(s)));
  }
}
