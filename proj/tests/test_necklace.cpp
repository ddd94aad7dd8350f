#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "raspberry/necklace.hpp"
#include "raspberry/numerics.hpp"
#include "raspberry/unipoly.hpp"

using raspberry::BigScalar;
using raspberry::NecklaceCode;
using raspberry::NecklaceError;
using raspberry::PointRadii;
using raspberry::ScopedDigits;

namespace {

// Orbit partitioning that never consults the canonical order: collect every
// rotation/reflection of each word and count distinct orbits.
int orbit_count(int len) {
  std::set<std::vector<int>> seen;
  int orbits = 0;
  std::vector<int> w(static_cast<size_t>(len), 1);
  while (true) {
    if (!seen.count(w)) {
      ++orbits;
      std::vector<int> r(w.rbegin(), w.rend());
      for (int k = 0; k < len; ++k) {
        std::vector<int> a, b;
        for (int i = 0; i < len; ++i) {
          a.push_back(w[static_cast<size_t>((i + k) % len)]);
          b.push_back(r[static_cast<size_t>((i + k) % len)]);
        }
        seen.insert(a);
        seen.insert(b);
      }
    }
    int pos = len - 1;
    while (pos >= 0 && w[static_cast<size_t>(pos)] == 2) w[static_cast<size_t>(pos--)] = 1;
    if (pos < 0) break;
    w[static_cast<size_t>(pos)] = 2;
  }
  return orbits;
}

}  // namespace

TEST_CASE("canonical forms lead with the larger label") {
  CHECK(raspberry::canonicalize(1, {1, 2, 2, 1}).str() == "01:2211");
  CHECK(raspberry::canonicalize(1, {2, 1, 2, 1}).str() == "01:2121");
  CHECK(raspberry::canonicalize(2, {1, 1, 2, 1, 1, 2}).str() == "02:211211");
  CHECK(raspberry::canonicalize(1, {1, 1, 1}).str() == "01:111");
  CHECK_THROWS_WITH_AS((void)raspberry::canonicalize(1, {1, 2}),
                       "no lune/hemisphere necklaces", NecklaceError);
}

TEST_CASE("canonicalize is idempotent and constant on orbits") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(3, 9);
  std::uniform_int_distribution<int> lab(1, 2);
  for (int trial = 0; trial < 500; ++trial) {
    int m = len(rng);
    std::vector<int> w(static_cast<size_t>(m));
    for (auto& x : w) x = lab(rng);
    NecklaceCode c = raspberry::canonicalize(1, w);
    CHECK(raspberry::canonicalize(1, c.beads) == c);
    // arbitrary rotation and the reflection land on the same representative
    std::uniform_int_distribution<int> rot(0, m - 1);
    int k = rot(rng);
    std::vector<int> v;
    for (int i = 0; i < m; ++i) v.push_back(w[static_cast<size_t>((i + k) % m)]);
    CHECK(raspberry::canonicalize(1, v) == c);
    std::reverse(v.begin(), v.end());
    CHECK(raspberry::canonicalize(1, v) == c);
  }
}

TEST_CASE("parse round trips and rejects junk") {
  for (const char* s : {"01:2211", "02:211211", "01:21111", "02:2222"}) {
    CHECK(NecklaceCode::parse(s).str() == s);
  }
  CHECK(NecklaceCode::parse("01:1122").str() == "01:2211");  // non-canonical in
  CHECK_THROWS_AS((void)NecklaceCode::parse("1:111"), NecklaceError);
  CHECK_THROWS_AS((void)NecklaceCode::parse("01-111"), NecklaceError);
  CHECK_THROWS_AS((void)NecklaceCode::parse("01:x11"), NecklaceError);
  CHECK_THROWS_AS((void)NecklaceCode::parse("01:11"), NecklaceError);
}

TEST_CASE("enumeration over two labels matches the known fifteen") {
  auto has2 = [](const NecklaceCode& c) {
    return std::count(c.beads.begin(), c.beads.end(), 2) > 0;
  };
  auto codes = raspberry::enumerate_codes(1, {1, 2}, 3, 5, has2);
  std::vector<std::string> got;
  for (const auto& c : codes) got.push_back(c.str());
  std::vector<std::string> expect = {
      "01:211",   "01:221",   "01:222",   "01:2111",  "01:2121",
      "01:2211",  "01:2221",  "01:2222",  "01:21111", "01:21211",
      "01:22111", "01:22121", "01:22211", "01:22221", "01:22222"};
  std::sort(got.begin(), got.end());
  std::sort(expect.begin(), expect.end());
  CHECK(got == expect);

  auto ones = raspberry::enumerate_codes(1, {1}, 3, 5);
  REQUIRE(ones.size() == 3);
  CHECK(ones[0].str() == "01:111");
  CHECK(ones[1].str() == "01:1111");
  CHECK(ones[2].str() == "01:11111");

  auto three = raspberry::enumerate_codes(2, {1, 2}, 3, 3);
  std::vector<std::string> got3;
  for (const auto& c : three) got3.push_back(c.str());
  std::sort(got3.begin(), got3.end());
  CHECK(got3 == std::vector<std::string>{"02:111", "02:211", "02:221", "02:222"});
}

TEST_CASE("enumeration size equals brute-force orbit count") {
  for (int len = 3; len <= 7; ++len) {
    auto codes = raspberry::enumerate_codes(1, {1, 2}, len, len);
    CHECK(static_cast<int>(codes.size()) == orbit_count(len));
  }
}

TEST_CASE("dihedral sums close on the octahedral necklace") {
  ScopedDigits guard(60);
  raspberry::UniPoly p = raspberry::UniPoly::from_ints({-1, -2, 1});
  auto boxes = raspberry::isolate_real_roots_q(p, mpq_class(2), mpq_class(3));
  REQUIRE(boxes.size() == 1);
  mpz_class den("1" + std::string(50, '0'));
  auto box = raspberry::refine_root_q(p, boxes[0], mpq_class(mpz_class(1), den));
  mpq_class mid = (box.lo + box.hi) / 2;
  mid.canonicalize();

  PointRadii r = PointRadii::unit_pit({{1, BigScalar(mid)}});
  NecklaceCode octa = NecklaceCode::parse("01:1111");
  BigScalar sum = raspberry::dihedral_sum(octa, r);
  CHECK(abs(sum - BigScalar::two_pi()) < BigScalar::pow10(-40));
}

TEST_CASE("dihedral sums close exactly on the alternating variety") {
  ScopedDigits guard(50);
  // r1*r2 = r1 + r2 + 1 holds at (2, 3)
  PointRadii on = PointRadii::unit_pit({{1, BigScalar(2)}, {2, BigScalar(3)}});
  NecklaceCode alt = NecklaceCode::parse("01:2121");
  CHECK(abs(raspberry::dihedral_sum(alt, on) - BigScalar::two_pi()) <
        BigScalar::pow10(-45));

  PointRadii off = PointRadii::unit_pit({{1, BigScalar(2)}, {2, BigScalar(4)}});
  CHECK(abs(raspberry::dihedral_sum(alt, off) - BigScalar::two_pi()) >
        BigScalar(mpq_class(1, 100)));
}

TEST_CASE("dihedral sum ignores the representative chosen") {
  ScopedDigits guard(40);
  PointRadii r = PointRadii::unit_pit(
      {{1, BigScalar(mpq_class(3, 2))}, {2, BigScalar(mpq_class(5, 2))}});
  NecklaceCode canon = raspberry::canonicalize(1, {2, 2, 1, 1, 1});
  NecklaceCode rotated{1, {1, 1, 2, 2, 1}};  // same cycle, different spelling
  BigScalar a = raspberry::dihedral_sum(canon, r);
  BigScalar b = raspberry::dihedral_sum(rotated, r);
  CHECK(abs(a - b) < BigScalar::pow10(-35));
}

TEST_CASE("complement requirements transcribe bead triples") {
  NecklaceCode alt = NecklaceCode::parse("01:2121");
  auto reqs = raspberry::complement_requirements(alt);
  REQUIRE(reqs.size() == 2);
  // head 1 must carry (2,1,2); head 2 must carry (1,1,1)
  CHECK(reqs[0].head == 1);
  CHECK(reqs[0].around == std::array<int, 3>{2, 1, 2});
  CHECK(reqs[1].head == 2);
  CHECK(reqs[1].around == std::array<int, 3>{1, 1, 1});

  NecklaceCode tetra = NecklaceCode::parse("01:111");
  auto treqs = raspberry::complement_requirements(tetra);
  REQUIRE(treqs.size() == 1);
  CHECK(treqs[0].head == 1);
  CHECK(treqs[0].around == std::array<int, 3>{1, 1, 1});
}

TEST_CASE("closure detection and witnesses") {
  auto closed = raspberry::is_complementation_closed({NecklaceCode::parse("01:111")});
  CHECK(closed.closed);

  auto pair = raspberry::is_complementation_closed(
      {NecklaceCode::parse("01:2211"), NecklaceCode::parse("02:211211")});
  CHECK(pair.closed);

  auto lone = raspberry::is_complementation_closed({NecklaceCode::parse("01:2121")});
  CHECK(!lone.closed);
  REQUIRE(lone.unmet.has_value());
  CHECK(lone.unmet->head == 2);

  auto both = raspberry::is_complementation_closed(
      {NecklaceCode::parse("01:2121"), NecklaceCode::parse("02:111")});
  CHECK(both.closed);
}

TEST_CASE("largest closed subset prunes to a fixpoint") {
  std::vector<NecklaceCode> mixed = {NecklaceCode::parse("01:2121"),
                                     NecklaceCode::parse("02:222")};
  auto kept = raspberry::largest_closed_subset(mixed);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].str() == "02:222");

  std::vector<NecklaceCode> triple = {NecklaceCode::parse("01:2121"),
                                      NecklaceCode::parse("02:111"),
                                      NecklaceCode::parse("01:211")};
  CHECK(raspberry::largest_closed_subset(triple).size() == 3);

  std::vector<NecklaceCode> hopeless = {NecklaceCode::parse("01:2221")};
  CHECK(raspberry::largest_closed_subset(hopeless).empty());
}
