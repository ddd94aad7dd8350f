// Building triangulations from code sets, embedding them on the pit, and
// validating the resulting sphere arrangements.  The one-size raspberries
// are rigid references: their contact graphs are the boundary complexes of
// the tetrahedron, octahedron and icosahedron, with radii given by small
// explicit polynomials.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <set>

#include "raspberry/numerics.hpp"
#include "raspberry/realization.hpp"
#include "raspberry/unipoly.hpp"

using namespace raspberry;

namespace {

UniPoly uni(const std::vector<long>& asc) { return UniPoly::from_ints(asc); }

NecklaceCode nc(const std::string& s) { return NecklaceCode::parse(s); }

// Positive root of p inside [lo, hi], refined to working precision.
BigScalar root_in(const UniPoly& p, long lo, long hi) {
  auto boxes = isolate_real_roots(p, Interval(BigScalar(lo), BigScalar(hi)));
  REQUIRE(boxes.size() == 1);
  return refine_root(p, boxes.front(), working_digits() - 5).mid();
}

void check_euler(const Triangulation& t) {
  int V = t.vertex_count();
  int F = t.face_count();
  int E = static_cast<int>(t.edges().size());
  CHECK(V - E + F == 2);
  CHECK(3 * F == 2 * E);
}

}  // namespace

TEST_CASE("one-size raspberries assemble into the platonic contact graphs") {
  struct Row {
    const char* code;
    UniPoly radius_poly;
    long lo, hi;
    int vertices;
  };
  // minimal polynomials of the three one-size radii
  std::vector<Row> rows = {
      {"01:111", uni({-2, -4, 1}), 4, 5, 4},
      {"01:1111", uni({-1, -2, 1}), 2, 3, 6},
      {"01:11111", uni({1, 4, 1, -6, 1}), 1, 2, 12},
  };
  for (const Row& row : rows) {
    CAPTURE(row.code);
    BigScalar r = root_in(row.radius_poly, row.lo, row.hi);
    PointRadii radii = PointRadii::unit_pit({{1, r}});
    auto outcome = build_triangulation({nc(row.code)}, radii);
    REQUIRE(outcome.found.has_value());
    const Triangulation& t = *outcome.found;
    CHECK(t.vertex_count() == row.vertices);
    check_euler(t);
    for (int v = 0; v < t.vertex_count(); ++v)
      CHECK(t.link_code(v).str() == row.code);

    // the shape is unique up to relabeling
    auto all = all_triangulations({nc(row.code)}, radii, 4);
    CHECK(all.size() == 1);

    SphereArrangement arr = embed(t, radii);
    REQUIRE(arr.berries.size() == static_cast<size_t>(row.vertices));
    ValidationReport report = validate(arr);
    for (const auto& line : report.checks) {
      CAPTURE(line.name);
      CHECK(line.pass);
    }
    CHECK(report.all_pass());
  }
}

TEST_CASE("the octahedral raspberry sits on the coordinate axes") {
  BigScalar r = BigScalar(1) + sqrt(BigScalar(2));
  PointRadii radii = PointRadii::unit_pit({{1, r}});
  auto outcome = build_triangulation({nc("01:1111")}, radii);
  REQUIRE(outcome.found.has_value());
  SphereArrangement arr = embed(*outcome.found, radii);
  REQUIRE(arr.berries.size() == 6);

  BigScalar eps = BigScalar::pow10(-40);
  BigScalar expect = BigScalar(2) + sqrt(BigScalar(2));  // 1 + radius
  std::vector<std::array<BigScalar, 3>> dirs;
  for (const auto& b : arr.berries) {
    BigScalar len = sqrt(b.center[0] * b.center[0] + b.center[1] * b.center[1] +
                         b.center[2] * b.center[2]);
    CHECK(abs(len - expect) < eps);
    dirs.push_back(
        {b.center[0] / len, b.center[1] / len, b.center[2] / len});
  }
  // pairwise contact directions: orthogonal when tangent, antipodal otherwise
  int right_angles = 0, antipodes = 0;
  for (size_t i = 0; i < dirs.size(); ++i) {
    for (size_t j = i + 1; j < dirs.size(); ++j) {
      BigScalar d = dirs[i][0] * dirs[j][0] + dirs[i][1] * dirs[j][1] +
                    dirs[i][2] * dirs[j][2];
      if (abs(d) < eps) ++right_angles;
      if (abs(d + 1) < eps) ++antipodes;
    }
  }
  CHECK(right_angles == 12);
  CHECK(antipodes == 3);
  CHECK(arr.contacts.size() == 12);
}

TEST_CASE("a two-size raspberry with six small and twelve large berries") {
  // 01:2222 with 02:221221 and 02:222121 close up at r1 = sqrt(2)-1, r2 = 1
  BigScalar r1 = sqrt(BigScalar(2)) - 1;
  PointRadii radii = PointRadii::unit_pit({{1, r1}, {2, BigScalar(1)}});
  std::vector<NecklaceCode> codes = {nc("01:2222"), nc("02:221221"),
                                     nc("02:222121")};
  auto all = all_triangulations(codes, radii, 8);
  REQUIRE(!all.empty());
  CHECK(all.size() == 2);  // the berries admit one twist

  std::set<std::string> sigs;
  for (const Triangulation& t : all) {
    check_euler(t);
    sigs.insert(t.signature());
    int small = 0, large = 0;
    for (int v = 0; v < t.vertex_count(); ++v) {
      (t.labels[v] == 1 ? small : large)++;
      CHECK(std::find(codes.begin(), codes.end(), t.link_code(v)) !=
            codes.end());
    }
    CHECK(small == 6);
    CHECK(large == 12);

    SphereArrangement arr = embed(t, radii);
    ValidationReport report = validate(arr);
    for (const auto& line : report.checks) {
      CAPTURE(line.name);
      CHECK(line.pass);
    }
  }
  CHECK(sigs.size() == all.size());
}

TEST_CASE("code sets that cannot close return an exhaustion witness") {
  // 01:211 needs large berries, but no head-2 code is allowed
  PointRadii radii =
      PointRadii::unit_pit({{1, BigScalar(3)}, {2, BigScalar(4)}});
  auto outcome = build_triangulation({nc("01:211")}, radii);
  CHECK(!outcome.found.has_value());
  CHECK(outcome.explored > 0);
}

TEST_CASE("an assembled graph with the wrong radius fails to embed") {
  // the octahedron needs r = 1 + sqrt(2); at r = 1 the fans do not close
  PointRadii radii = PointRadii::unit_pit({{1, BigScalar(1)}});
  auto outcome = build_triangulation({nc("01:1111")}, radii);
  REQUIRE(outcome.found.has_value());

  EmbedOutcome attempt = try_embed(*outcome.found, radii);
  CHECK(!attempt.arrangement.has_value());
  CHECK(attempt.max_residual > BigScalar::pow10(-2));

  CHECK_THROWS_AS(embed(*outcome.found, radii), RealizationError);
  try {
    embed(*outcome.found, radii);
  } catch (const RealizationError& e) {
    CHECK(std::string(e.what()).find("geometric failure") == 0);
  }
}

TEST_CASE("removing one berry breaks the coverage check") {
  BigScalar r = BigScalar(1) + sqrt(BigScalar(2));
  PointRadii radii = PointRadii::unit_pit({{1, r}});
  auto outcome = build_triangulation({nc("01:1111")}, radii);
  REQUIRE(outcome.found.has_value());
  SphereArrangement arr = embed(*outcome.found, radii);

  int gone = static_cast<int>(arr.berries.size()) - 1;
  arr.berries.pop_back();
  std::erase_if(arr.contacts,
                [&](const auto& c) { return c.first == gone || c.second == gone; });
  std::erase_if(arr.faces, [&](const auto& f) {
    return f[0] == gone || f[1] == gone || f[2] == gone;
  });

  ValidationReport report = validate(arr);
  CHECK(!report.all_pass());
  for (const auto& line : report.checks) {
    if (line.name == "coverage") CHECK(!line.pass);
    if (line.name == "disjointness") CHECK(line.pass);
    if (line.name == "pit-tangency") CHECK(line.pass);
  }
}

TEST_CASE("scene exports are deterministic and well-formed") {
  BigScalar r = BigScalar(1) + sqrt(BigScalar(2));
  PointRadii radii = PointRadii::unit_pit({{1, r}});
  auto outcome = build_triangulation({nc("01:1111")}, radii);
  REQUIRE(outcome.found.has_value());
  SphereArrangement arr = embed(*outcome.found, radii);

  std::string json_scene = export_scene(arr, SceneFormat::json);
  CHECK(json_scene == export_scene(arr, SceneFormat::json));
  auto parsed = nlohmann::json::parse(json_scene);
  CHECK(parsed["berries"].size() == 6);
  CHECK(parsed["pit"]["radius"] == "1");
  CHECK(parsed["contacts"].size() == 12);
  CHECK(parsed["faces"].size() == 8);
  // centers written as exact-precision decimal strings
  CHECK(parsed["berries"][0]["center"][0].is_string());

  std::string obj = export_scene(arr, SceneFormat::obj, 1);
  CHECK(obj == export_scene(arr, SceneFormat::obj, 1));
  size_t objects = 0;
  for (size_t at = obj.find("\no "); at != std::string::npos;
       at = obj.find("\no ", at + 1))
    ++objects;
  CHECK(objects == 7);  // pit + six berries

  std::string ply = export_scene(arr, SceneFormat::ply, 1);
  CHECK(ply.rfind("ply\nformat ascii 1.0\n", 0) == 0);
  CHECK(ply.find("element vertex 294") != std::string::npos);   // 7 * 42
  CHECK(ply.find("element face 560") != std::string::npos);     // 7 * 80
}
