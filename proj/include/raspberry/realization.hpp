#pragma once

// Assembling raspberries in space.  A backtracking search builds a labeled
// triangulated sphere whose vertex links realize the given necklace codes;
// the triangulation is then embedded on the pit by propagating exact
// spherical distances face by face, and the resulting sphere arrangement is
// checked against the defining conditions (tangency to the pit, pairwise
// disjointness, full coverage, no containing half-space).

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raspberry/geometry.hpp"
#include "raspberry/necklace.hpp"
#include "raspberry/numerics.hpp"

namespace raspberry {

class RealizationError : public std::runtime_error {
 public:
  explicit RealizationError(const std::string& what)
      : std::runtime_error(what) {}
};

// A triangulated sphere with labeled vertices.  Faces are consistently
// oriented (shared edges are traversed in opposite directions by their two
// faces), so an embedding can pick sides deterministically.
struct Triangulation {
  std::vector<int> labels;                // vertex id -> berry label
  std::vector<std::array<int, 3>> faces;  // oriented triangles

  int vertex_count() const { return static_cast<int>(labels.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  std::vector<std::pair<int, int>> edges() const;  // sorted, unique
  // Neighbors of v in rotation order around v.
  std::vector<int> link_cycle(int v) const;
  NecklaceCode link_code(int v) const;
  // Order-insensitive fingerprint, equal for isomorphic labeled
  // triangulations (canonical breadth-first signature).
  std::string signature() const;
};

struct SearchLimits {
  long max_states = 20000000;  // backtracking nodes before giving up
};

struct SearchOutcome {
  std::optional<Triangulation> found;  // absent = exhausted search space
  long explored = 0;                   // witness size for infeasibility
};

// First triangulation (in deterministic search order) whose vertex links all
// appear in `codes` and whose per-code areas fit on the pit at the given
// radii.  Throws RealizationError("search budget exhausted") if the state cap
// is hit before the space is exhausted.
SearchOutcome build_triangulation(const std::vector<NecklaceCode>& codes,
                                  const PointRadii& radii,
                                  const SearchLimits& limits = {});

// Every solution up to isomorphism, deterministically ordered with the more
// symmetric variant first; stops after max_found distinct shapes.
std::vector<Triangulation> all_triangulations(
    const std::vector<NecklaceCode>& codes, const PointRadii& radii,
    int max_found = 8, const SearchLimits& limits = {});

// A realized raspberry: unit pit at the origin plus one sphere per vertex.
struct SphereArrangement {
  struct Berry {
    std::array<BigScalar, 3> center;
    BigScalar radius;
    int label = 0;
  };
  std::vector<Berry> berries;
  std::vector<std::pair<int, int>> contacts;  // tangent berry pairs
  std::vector<std::array<int, 3>> faces;      // contact-graph triangles
};

struct EmbedOutcome {
  std::optional<SphereArrangement> arrangement;
  BigScalar max_residual;             // worst arc-length mismatch over edges
  std::pair<int, int> worst_edge{-1, -1};
};

// Place contact points on the pit by walking the faces from a seed triangle.
// A triangulation that cannot close up in space (the figure of merit being
// the residual on some cycle-closing edge) is reported, not thrown.
EmbedOutcome try_embed(const Triangulation& t, const PointRadii& radii);

// try_embed or throw RealizationError("geometric failure").
SphereArrangement embed(const Triangulation& t, const PointRadii& radii);

struct CheckLine {
  std::string name;
  bool pass = false;
  BigScalar margin;  // signed distance from the failure boundary
};

struct ValidationReport {
  std::vector<CheckLine> checks;
  bool all_pass() const;
};

// Tangency to the pit, pairwise disjointness, contact tangency, triangle
// coverage of the full 4*pi, and the origin strictly inside the hull of the
// contact directions.
ValidationReport validate(const SphereArrangement& a);

enum class SceneFormat { json, obj, ply };

// Deterministic serialization; obj/ply tessellate each sphere as a
// subdivided icosahedron with `subdiv` refinement levels.
std::string export_scene(const SphereArrangement& a, SceneFormat format,
                         int subdiv = 2);

}  // namespace raspberry
