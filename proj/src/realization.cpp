#include "raspberry/realization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

namespace raspberry {

namespace {

using Vec3 = std::array<BigScalar, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

BigScalar dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

BigScalar det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return dot(a, cross(b, c));
}

BigScalar norm(const Vec3& a) { return sqrt(dot(a, a)); }

// ---- combinatorial search ---------------------------------------------------
//
// The triangulation is grown face by face.  Each state picks its most
// constrained incomplete vertex, extends that vertex's fan at a fixed free
// edge, and branches over every admissible third corner: closing the fan,
// merging two of its arcs, identifying with another incomplete vertex, or
// adding a fresh vertex of either size.  Only one more face can ever sit on
// the chosen edge, so distinct branches explore disjoint sets of states and
// no state is reached twice; isomorphic end results (reachable through
// different corner orders or seeds) collapse by canonical signature in
// finalize().  Soundness comes from keeping every link a union of simple
// open paths until it closes into a single allowed cycle.

// Link of one vertex: neighbor -> adjacent neighbors within the link
// (at most two; two everywhere means the link has closed).
using Link = std::map<int, std::vector<int>>;

struct State {
  std::vector<int> labels;
  std::vector<Link> link;
  std::vector<char> complete;
  std::vector<std::array<int, 3>> faces;
  BigScalar area_used;
};

// Connect a-b inside one vertex's link; fails on degree overflow (an edge
// would acquire a third face) or duplication (the face already exists).
bool connect(Link& l, int a, int b) {
  auto& la = l[a];
  auto& lb = l[b];
  if (la.size() >= 2 || lb.size() >= 2) return false;
  if (std::find(la.begin(), la.end(), b) != la.end()) return false;
  la.push_back(b);
  lb.push_back(a);
  return true;
}

bool add_face(State& s, int u, int a, int b) {
  if (s.complete[u] || s.complete[a] || s.complete[b]) return false;
  if (!connect(s.link[u], a, b)) return false;
  if (!connect(s.link[a], u, b)) return false;
  if (!connect(s.link[b], u, a)) return false;
  s.faces.push_back({u, a, b});
  return true;
}

// Maximal paths of the (still open) link, each listed from its smaller
// endpoint; isolated neighbors are singleton paths.  A closed component is
// returned as a path starting at its smallest vertex so the caller can
// detect the mismatch (closed components are handled by completion checks).
std::vector<std::vector<int>> fan_components(const Link& l) {
  std::vector<std::vector<int>> comps;
  std::set<int> left;
  for (const auto& [k, v] : l) left.insert(k);
  auto walk = [&](int start) {
    std::vector<int> path{start};
    left.erase(start);
    int prev = -1, cur = start;
    for (;;) {
      int next = -1;
      for (int n : l.at(cur)) {
        if (n != prev && left.count(n)) {
          next = n;
          break;
        }
      }
      if (next < 0) break;
      path.push_back(next);
      left.erase(next);
      prev = cur;
      cur = next;
    }
    return path;
  };
  for (const auto& [k, v] : l)
    if (left.count(k) && v.size() <= 1) comps.push_back(walk(k));
  for (const auto& [k, v] : l)  // leftovers are cycles
    if (left.count(k)) comps.push_back(walk(k));
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return comps;
}

// If the link is one closed cycle, return it (starting at the smallest
// neighbor); empty vector otherwise.
std::vector<int> closed_cycle(const Link& l) {
  if (l.empty()) return {};
  for (const auto& [k, v] : l)
    if (v.size() != 2) return {};
  int start = l.begin()->first;
  std::vector<int> cyc{start};
  int prev = start, cur = l.at(start)[0];
  while (cur != start) {
    cyc.push_back(cur);
    for (int n : l.at(cur)) {
      if (n != prev) {
        prev = cur;
        cur = n;
        break;
      }
    }
  }
  if (cyc.size() != l.size()) return {};  // several disjoint cycles
  return cyc;
}

// Shape of one link: +1 when it is a single closed cycle (written to *out),
// 0 when it is a disjoint union of open paths, -1 when a closed loop
// coexists with anything else — such a vertex can never complete, because a
// saturated loop cannot absorb the remaining neighbors.
int link_shape(const Link& l, std::vector<int>* out) {
  if (l.empty()) return 0;
  bool open = false;
  for (const auto& [k, nb] : l) {
    if (nb.size() < 2) {
      open = true;
      break;
    }
  }
  if (!open) {
    auto cyc = closed_cycle(l);
    if (cyc.empty()) return -1;
    *out = std::move(cyc);
    return 1;
  }
  std::set<int> left;
  for (const auto& [k, nb] : l) left.insert(k);
  for (const auto& [k, nb] : l) {  // consume the open paths
    if (nb.size() == 2 || !left.count(k)) continue;
    int prev = -1, cur = k;
    left.erase(cur);
    for (;;) {
      int next = -1;
      for (int n : l.at(cur)) {
        if (n != prev && left.count(n)) {
          next = n;
          break;
        }
      }
      if (next < 0) break;
      left.erase(next);
      prev = cur;
      cur = next;
    }
  }
  return left.empty() ? 0 : -1;  // leftovers are trapped loops
}

struct CodeInfo {
  NecklaceCode code;
  std::string word;  // beads as characters
};

// Face kinds by sorted label triple; the sum of the three labels indexes
// them bijectively.
constexpr std::array<std::array<int, 3>, 4> k_face_kinds{
    {{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}}};

int kind_index(int a, int b, int c) { return a + b + c - 3; }

struct Searcher {
  const PointRadii* radii = nullptr;
  std::array<std::vector<CodeInfo>, 3> by_label;
  std::array<std::vector<std::string>, 3> doubled;  // cyclic subword probes
  std::array<size_t, 3> max_len{0, 0, 0};
  std::array<size_t, 3> min_len{0, 0, 0};
  std::set<std::string> allowed;

  std::array<BigScalar, 4> kind_area;
  std::array<char, 4> kind_feasible{0, 0, 0, 0};
  int seed_kind = 0;        // faces of a kind below the seed's are forbidden
  BigScalar min_face_area;  // over kinds usable under the current seed
  BigScalar budget;

  long explored = 0;
  long max_states = 0;
  int max_found = 1;
  bool done = false;
  std::vector<Triangulation> results;
  std::set<std::string> seen;

  void setup(const std::vector<NecklaceCode>& codes, const PointRadii& r) {
    radii = &r;
    budget = BigScalar(2) * BigScalar::two_pi() + BigScalar::pow10(-3);
    for (const NecklaceCode& c : codes) {
      if (c.head < 1 || c.head > 2)
        throw RealizationError("berry links must have head label 1 or 2");
      CodeInfo info;
      info.code = c;
      for (int b : c.beads) info.word.push_back(static_cast<char>('0' + b));
      allowed.insert(c.str());
      by_label[c.head].push_back(info);
    }
    for (int lab = 1; lab <= 2; ++lab) {
      auto& v = by_label[lab];
      std::sort(v.begin(), v.end(), [](const CodeInfo& a, const CodeInfo& b) {
        if (a.word.size() != b.word.size())
          return a.word.size() < b.word.size();
        return a.word < b.word;
      });
      for (const CodeInfo& ci : v) {
        doubled[lab].push_back(ci.word + ci.word);
        max_len[lab] = std::max(max_len[lab], ci.word.size());
        if (min_len[lab] == 0 || ci.word.size() < min_len[lab])
          min_len[lab] = ci.word.size();
      }
    }
    for (const auto& kind : k_face_kinds) {
      int k = kind_index(kind[0], kind[1], kind[2]);
      try {
        kind_area[k] = triangle_area(kind[0], kind[1], kind[2], r);
        kind_feasible[k] = 1;
      } catch (const GeometryError&) {
        kind_feasible[k] = 0;  // three such berries cannot meet at a face
      }
    }
  }

  // A kind is usable under the current seed if it is geometrically feasible,
  // not below the seed's kind, and made of sizes that have codes at all.
  bool kind_usable(int k) const {
    if (!kind_feasible[k] || k < seed_kind) return false;
    for (int lab : k_face_kinds[k])
      if (by_label[lab].empty()) return false;
    return true;
  }

  bool fan_fits(int label, const std::vector<std::vector<int>>& comps,
                const State& s) const {
    size_t total = 0;
    for (const auto& comp : comps) total += comp.size();
    if (total > max_len[label]) return false;
    for (const auto& comp : comps) {
      std::string w;
      for (int x : comp) w.push_back(static_cast<char>('0' + s.labels[x]));
      std::string rw(w.rbegin(), w.rend());
      bool ok = false;
      for (const std::string& d : doubled[label]) {
        if (w.size() > d.size() / 2) continue;
        if (d.find(w) != std::string::npos ||
            d.find(rw) != std::string::npos) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  }

  // Attempt the face (v, w, x) on a scratch state; false discards it.
  // Closure is checked only for the three touched vertices — they are the
  // only links that changed.
  bool try_face(State& s, int v, int w, int x) {
    int k = kind_index(s.labels[v], s.labels[w], s.labels[x]);
    if (!kind_feasible[k] || k < seed_kind) return false;
    if (!add_face(s, v, w, x)) return false;
    s.area_used += kind_area[k];
    if (s.area_used > budget) return false;
    for (int y : {v, w, x}) {
      std::vector<int> cyc;
      int shape = link_shape(s.link[y], &cyc);
      if (shape < 0) return false;
      if (shape > 0) {
        std::vector<int> beads;
        for (int z : cyc) beads.push_back(s.labels[z]);
        NecklaceCode got;
        try {
          got = canonicalize(s.labels[y], beads);
        } catch (const NecklaceError&) {
          return false;
        }
        if (!allowed.count(got.str())) return false;
        s.complete[y] = 1;
      }
    }
    for (int y : {v, w, x}) {
      if (s.complete[y]) continue;
      if (!fan_fits(s.labels[y], fan_components(s.link[y]), s)) return false;
    }
    // Optimistic completion cost: every incomplete link still needs enough
    // faces to close (one link edge per incident face, three link edges per
    // face overall), and each future face costs at least min_face_area.
    long total_edges = 0, single_max = 0;
    for (int y = 0; y < static_cast<int>(s.labels.size()); ++y) {
      if (s.complete[y]) continue;
      const Link& l = s.link[y];
      long t = static_cast<long>(l.size());
      long deg1 = 0;
      for (const auto& [z, nb] : l)
        if (nb.size() < 2) ++deg1;
      long c = deg1 / 2;  // open path components (no loops at this point)
      long needed =
          std::max(c, static_cast<long>(min_len[s.labels[y]]) - t + c);
      total_edges += needed;
      single_max = std::max(single_max, needed);
    }
    long remaining = std::max((total_edges + 2) / 3, single_max);
    if (s.area_used + BigScalar(remaining) * min_face_area > budget)
      return false;
    return true;
  }

  void dfs(const State& s) {
    if (done) return;
    int v = -1;
    long best = 0;
    for (int i = 0; i < static_cast<int>(s.labels.size()); ++i) {
      if (s.complete[i]) continue;
      long slack = static_cast<long>(max_len[s.labels[i]]) -
                   static_cast<long>(s.link[i].size());
      if (v < 0 || slack < best) {
        v = i;
        best = slack;
      }
    }
    if (v < 0) {
      finalize(s);
      return;
    }
    auto comps = fan_components(s.link[v]);
    int w = comps.front().back();  // the fixed free edge is (v, w)
    std::vector<int> moves;        // third corner; -label means fresh
    if (comps.size() == 1 && comps.front().size() >= 3)
      moves.push_back(comps.front().front());  // close the only gap
    for (size_t j = 1; j < comps.size(); ++j) {  // merge another arc
      moves.push_back(comps[j].front());
      if (comps[j].back() != comps[j].front()) moves.push_back(comps[j].back());
    }
    for (int x = 0; x < static_cast<int>(s.labels.size()); ++x)  // identify
      if (x != v && !s.complete[x] && !s.link[v].count(x)) moves.push_back(x);
    for (int lab = 1; lab <= 2; ++lab)  // grow a fresh berry
      if (!by_label[lab].empty()) moves.push_back(-lab);

    for (int x : moves) {
      if (++explored > max_states)
        throw RealizationError("search budget exhausted");
      State s2 = s;
      if (x < 0) {
        int lab = -x;
        x = static_cast<int>(s2.labels.size());
        s2.labels.push_back(lab);
        s2.link.emplace_back();
        s2.complete.push_back(0);
      }
      if (try_face(s2, v, w, x)) dfs(s2);
      if (done) return;
    }
  }

  void finalize(const State& s) {
    int V = static_cast<int>(s.labels.size());
    int F = static_cast<int>(s.faces.size());
    if (3 * F % 2 != 0) return;
    int E = 3 * F / 2;
    if (V - E + F != 2) return;  // not a sphere
    std::vector<char> seen_v(V, 0);
    std::vector<int> stack{0};
    seen_v[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& [k, nb] : s.link[x]) {
        if (!seen_v[k]) {
          seen_v[k] = 1;
          ++reached;
          stack.push_back(k);
        }
      }
    }
    if (reached != V) return;
    Triangulation t;
    t.labels = s.labels;
    t.faces = orient(s.faces);
    if (t.faces.empty()) return;
    std::string sig = t.signature();
    if (!seen.insert(sig).second) return;
    results.push_back(std::move(t));
    if (static_cast<int>(results.size()) >= max_found) done = true;
  }

  // Consistent global orientation via breadth-first flips; empty on failure
  // (cannot happen for a connected complex with Euler characteristic 2).
  static std::vector<std::array<int, 3>> orient(
      const std::vector<std::array<int, 3>>& faces) {
    std::map<std::pair<int, int>, std::vector<int>> at_edge;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
      const auto& f = faces[i];
      for (int e = 0; e < 3; ++e) {
        int a = f[e], b = f[(e + 1) % 3];
        at_edge[{std::min(a, b), std::max(a, b)}].push_back(i);
      }
    }
    std::vector<std::array<int, 3>> out(faces.size());
    std::vector<int> state(faces.size(), 0);  // 0 new, 1 done
    out[0] = faces[0];
    state[0] = 1;
    std::vector<int> queue{0};
    size_t qi = 0;
    auto traverses = [](const std::array<int, 3>& f, int a, int b) {
      for (int e = 0; e < 3; ++e)
        if (f[e] == a && f[(e + 1) % 3] == b) return true;
      return false;
    };
    while (qi < queue.size()) {
      int i = queue[qi++];
      for (int e = 0; e < 3; ++e) {
        int a = out[i][e], b = out[i][(e + 1) % 3];
        for (int j : at_edge.at({std::min(a, b), std::max(a, b)})) {
          if (j == i) continue;
          if (state[j]) {
            if (traverses(out[j], a, b)) return {};  // inconsistent
            continue;
          }
          out[j] = faces[j];
          if (traverses(out[j], a, b)) std::swap(out[j][1], out[j][2]);
          state[j] = 1;
          queue.push_back(j);
        }
      }
    }
    for (int st : state)
      if (!st) return {};
    return out;
  }
};

// Rotation system (successor around each vertex) of an oriented
// triangulation; mirrored when asked.
std::vector<std::map<int, int>> successors(const Triangulation& t,
                                           bool mirror) {
  std::vector<std::map<int, int>> succ(t.labels.size());
  for (const auto& f : t.faces) {
    for (int e = 0; e < 3; ++e) {
      int v = f[e], a = f[(e + 1) % 3], b = f[(e + 2) % 3];
      if (mirror)
        succ[v][b] = a;
      else
        succ[v][a] = b;
    }
  }
  return succ;
}

// Canonical breadth-first code of a rooted oriented labeled map.
std::string rooted_code(const std::vector<int>& labels,
                        const std::vector<std::map<int, int>>& succ, int ru,
                        int rv) {
  int V = static_cast<int>(labels.size());
  std::vector<int> id(V, -1), first(V, -1), order;
  id[ru] = 0;
  first[ru] = rv;
  order.push_back(ru);
  std::ostringstream os;
  for (size_t i = 0; i < order.size(); ++i) {
    int x = order[i];
    os << 'v' << labels[x] << ':';
    int start = first[x];
    int cur = start;
    do {
      if (id[cur] < 0) {
        id[cur] = static_cast<int>(order.size());
        first[cur] = x;
        order.push_back(cur);
      }
      os << id[cur] << ',';
      cur = succ[x].at(cur);
    } while (cur != start);
    os << ';';
  }
  return os.str();
}

// Minimal rooted code over all roots and both orientations, with the number
// of minimizing roots (the order of the full symmetry group).
std::pair<std::string, int> canonical_form(const Triangulation& t) {
  std::string best;
  int count = 0;
  for (int mirror = 0; mirror < 2; ++mirror) {
    auto succ = successors(t, mirror != 0);
    for (int u = 0; u < t.vertex_count(); ++u) {
      for (const auto& [v, w] : succ[u]) {
        std::string code = rooted_code(t.labels, succ, u, v);
        if (best.empty() || code < best) {
          best = code;
          count = 1;
        } else if (code == best) {
          ++count;
        }
      }
    }
  }
  return {best, count};
}

}  // namespace

// ---- Triangulation ----------------------------------------------------------

std::vector<std::pair<int, int>> Triangulation::edges() const {
  std::set<std::pair<int, int>> es;
  for (const auto& f : faces)
    for (int e = 0; e < 3; ++e)
      es.insert(std::minmax(f[e], f[(e + 1) % 3]));
  return {es.begin(), es.end()};
}

std::vector<int> Triangulation::link_cycle(int v) const {
  auto succ = successors(*this, false);
  const auto& around = succ.at(v);
  if (around.empty()) throw RealizationError("isolated vertex has no link");
  int start = around.begin()->first;
  std::vector<int> cyc{start};
  for (int cur = around.at(start); cur != start; cur = around.at(cur))
    cyc.push_back(cur);
  return cyc;
}

NecklaceCode Triangulation::link_code(int v) const {
  std::vector<int> beads;
  for (int x : link_cycle(v)) beads.push_back(labels[x]);
  return canonicalize(labels[v], beads);
}

std::string Triangulation::signature() const {
  return canonical_form(*this).first;
}

// ---- search entry points ----------------------------------------------------

static std::vector<Triangulation> run_search(
    const std::vector<NecklaceCode>& codes, const PointRadii& radii,
    int max_found, const SearchLimits& limits, long* explored) {
  Searcher sr;
  sr.setup(codes, radii);
  sr.max_states = limits.max_states;
  sr.max_found = max_found;
  // One seed per face kind; a seed only builds shapes whose smallest face
  // kind is its own, so no shape is reachable from two seeds.
  for (int k = 0; k < static_cast<int>(k_face_kinds.size()); ++k) {
    sr.seed_kind = k;
    if (!sr.kind_usable(k)) continue;
    bool first = true;
    for (int j = k; j < static_cast<int>(k_face_kinds.size()); ++j) {
      if (!sr.kind_usable(j)) continue;
      if (first || sr.kind_area[j] < sr.min_face_area)
        sr.min_face_area = sr.kind_area[j];
      first = false;
    }
    State s;
    s.labels = {k_face_kinds[k][0], k_face_kinds[k][1], k_face_kinds[k][2]};
    s.link.resize(3);
    s.complete.assign(3, 0);
    add_face(s, 0, 1, 2);
    s.area_used = sr.kind_area[k];
    bool viable = true;
    for (int y = 0; y < 3 && viable; ++y)
      viable = sr.fan_fits(s.labels[y], fan_components(s.link[y]), s);
    if (viable) sr.dfs(s);
    if (sr.done) break;
  }
  if (explored) *explored = sr.explored;
  // more symmetric shapes first, then canonical order
  std::vector<std::pair<std::pair<int, std::string>, Triangulation>> keyed;
  for (auto& t : sr.results) {
    auto [sig, sym] = canonical_form(t);
    keyed.push_back({{-sym, sig}, std::move(t)});
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Triangulation> out;
  for (auto& [k, t] : keyed) out.push_back(std::move(t));
  return out;
}

SearchOutcome build_triangulation(const std::vector<NecklaceCode>& codes,
                                  const PointRadii& radii,
                                  const SearchLimits& limits) {
  SearchOutcome outcome;
  auto found = run_search(codes, radii, 1, limits, &outcome.explored);
  if (!found.empty()) outcome.found = std::move(found.front());
  return outcome;
}

std::vector<Triangulation> all_triangulations(
    const std::vector<NecklaceCode>& codes, const PointRadii& radii,
    int max_found, const SearchLimits& limits) {
  return run_search(codes, radii, max_found, limits, nullptr);
}

// ---- spherical embedding ----------------------------------------------------

EmbedOutcome try_embed(const Triangulation& t, const PointRadii& radii) {
  EmbedOutcome out;
  out.max_residual = BigScalar();
  int V = t.vertex_count();
  if (V < 3 || t.faces.empty())
    throw RealizationError("embedding needs at least one face");
  BigScalar one(1);
  BigScalar clamp_eps = BigScalar::pow10(-(working_digits() - 10));

  std::map<std::pair<int, int>, BigScalar> cos_lab;
  auto target_cos = [&](int u, int v) {
    auto key = std::minmax(t.labels[u], t.labels[v]);
    auto it = cos_lab.find(key);
    if (it == cos_lab.end())
      it = cos_lab.emplace(key, tangency_cos(0, key.first, key.second, radii))
               .first;
    return it->second;
  };

  std::vector<Vec3> dir(V);
  std::vector<char> placed(V, 0);

  // third vertex of a positively oriented face (z, s, w), given s and w
  auto place_third = [&](int z, int s, int w) -> bool {
    const Vec3& S = dir[s];
    const Vec3& W = dir[w];
    BigScalar c = dot(S, W);
    BigScalar denom = one - c * c;
    if (denom.sign() <= 0) return false;
    BigScalar cs = target_cos(z, s), cw = target_cos(z, w);
    BigScalar alpha = (cs - c * cw) / denom;
    BigScalar beta = (cw - c * cs) / denom;
    BigScalar rad = one - alpha * cs - beta * cw;
    if (rad.sign() < 0) {
      if (abs(rad) > clamp_eps) return false;
      rad = BigScalar();
    }
    BigScalar gamma = sqrt(rad / denom);
    Vec3 X = cross(S, W);
    for (int k = 0; k < 3; ++k)
      dir[z][k] = alpha * S[k] + beta * W[k] + gamma * X[k];
    placed[z] = 1;
    return true;
  };

  const auto& f0 = t.faces[0];
  int a = f0[0], b = f0[1];
  dir[a] = {BigScalar(), BigScalar(), one};
  placed[a] = 1;
  BigScalar cab = target_cos(a, b);
  dir[b] = {sqrt(one - cab * cab), BigScalar(), cab};
  placed[b] = 1;
  if (!place_third(f0[2], f0[0], f0[1])) {
    out.worst_edge = {f0[0], f0[2]};
    out.max_residual = BigScalar(1);
    return out;
  }

  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& f : t.faces) {
      int unplaced = -1, n_placed = 0;
      for (int e = 0; e < 3; ++e) {
        if (placed[f[e]])
          ++n_placed;
        else
          unplaced = e;
      }
      if (n_placed != 2) continue;
      // (z, s, w) as an even rotation of the face keeps the orientation
      int z = f[unplaced], s = f[(unplaced + 1) % 3], w = f[(unplaced + 2) % 3];
      if (!place_third(z, s, w)) {
        out.worst_edge = {s, z};
        out.max_residual = BigScalar(1);
        return out;
      }
      progress = true;
    }
  }
  for (int v = 0; v < V; ++v)
    if (!placed[v]) throw RealizationError("contact graph is not connected");

  auto edges = t.edges();
  out.worst_edge = edges.front();
  for (const auto& [u, v] : edges) {
    BigScalar res = abs(dot(dir[u], dir[v]) - target_cos(u, v));
    if (res > out.max_residual) {
      out.max_residual = res;
      out.worst_edge = {u, v};
    }
  }
  BigScalar tol = BigScalar::pow10(-(working_digits() - 15));
  if (out.max_residual > tol) return out;

  SphereArrangement arr;
  for (int v = 0; v < V; ++v) {
    SphereArrangement::Berry berry;
    berry.radius = radii.at(t.labels[v]);
    berry.label = t.labels[v];
    BigScalar scale = one + berry.radius;
    for (int k = 0; k < 3; ++k) berry.center[k] = scale * dir[v][k];
    arr.berries.push_back(std::move(berry));
  }
  arr.contacts = edges;
  arr.faces = t.faces;
  out.arrangement = std::move(arr);
  return out;
}

SphereArrangement embed(const Triangulation& t, const PointRadii& radii) {
  EmbedOutcome out = try_embed(t, radii);
  if (!out.arrangement) {
    std::ostringstream os;
    os << "geometric failure: contact ring does not close (edge "
       << out.worst_edge.first << "-" << out.worst_edge.second
       << " off by " << out.max_residual.str(6) << ")";
    throw RealizationError(os.str());
  }
  return std::move(*out.arrangement);
}

// ---- validation -------------------------------------------------------------

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ValidationReport validate(const SphereArrangement& a) {
  ValidationReport report;
  int n = static_cast<int>(a.berries.size());
  BigScalar one(1);
  BigScalar tol = BigScalar::pow10(-(working_digits() - 10));

  BigScalar dev_pit;
  std::vector<Vec3> u(n);  // contact directions on the pit
  for (int i = 0; i < n; ++i) {
    const auto& b = a.berries[i];
    BigScalar len = norm(b.center);
    dev_pit = max(dev_pit, abs(len - (one + b.radius)));
    for (int k = 0; k < 3; ++k) u[i][k] = b.center[k] / len;
  }
  report.checks.push_back({"pit-tangency", dev_pit <= tol, tol - dev_pit});

  std::set<std::pair<int, int>> touching(a.contacts.begin(), a.contacts.end());
  BigScalar dev_contact;
  BigScalar gap_min(1000);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Vec3 d;
      for (int k = 0; k < 3; ++k) d[k] = a.berries[i].center[k] - a.berries[j].center[k];
      BigScalar sep = norm(d) - (a.berries[i].radius + a.berries[j].radius);
      if (touching.count({i, j}))
        dev_contact = max(dev_contact, abs(sep));
      else
        gap_min = min(gap_min, sep);
    }
  }
  report.checks.push_back(
      {"contact-tangency", dev_contact <= tol, tol - dev_contact});
  report.checks.push_back({"disjointness", gap_min >= -tol, gap_min});

  BigScalar area_sum;
  BigScalar det_min(1000);
  for (const auto& f : a.faces) {
    BigScalar corners;
    for (int e = 0; e < 3; ++e) {
      const Vec3& p = u[f[e]];
      const Vec3& q = u[f[(e + 1) % 3]];
      const Vec3& r = u[f[(e + 2) % 3]];
      BigScalar cpq = dot(p, q), cpr = dot(p, r);
      BigScalar val =
          (dot(q, r) - cpq * cpr) / (sqrt(one - cpq * cpq) * sqrt(one - cpr * cpr));
      val = min(max(val, BigScalar(-1)), one);
      corners += acos(val);
    }
    area_sum += corners - BigScalar::pi();
    det_min = min(det_min, det3(u[f[0]], u[f[1]], u[f[2]]));
  }
  BigScalar dev_area = abs(area_sum - BigScalar(2) * BigScalar::two_pi());
  report.checks.push_back({"coverage", dev_area <= tol, tol - dev_area});
  report.checks.push_back({"star-shaped", det_min.sign() > 0, det_min});
  return report;
}

// ---- scene export -----------------------------------------------------------

namespace {

struct Mesh {
  std::vector<std::array<double, 3>> v;
  std::vector<std::array<int, 3>> f;
};

Mesh icosphere(int subdiv) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh m;
  m.v = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
         {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
         {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  m.f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  auto normalize = [](std::array<double, 3>& p) {
    double s = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    for (double& x : p) x /= s;
  };
  for (auto& p : m.v) normalize(p);
  for (int pass = 0; pass < subdiv; ++pass) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int i, int j) {
      auto key = std::minmax(i, j);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      std::array<double, 3> p;
      for (int k = 0; k < 3; ++k) p[k] = (m.v[i][k] + m.v[j][k]) / 2;
      normalize(p);
      int id = static_cast<int>(m.v.size());
      m.v.push_back(p);
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& f : m.f) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.f = std::move(next);
  }
  return m;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x + 0.0);  // +0 avoids "-0"
  return buf;
}

}  // namespace

std::string export_scene(const SphereArrangement& a, SceneFormat format,
                         int subdiv) {
  if (format == SceneFormat::json) {
    nlohmann::ordered_json j;
    j["pit"] = {{"center", {"0", "0", "0"}}, {"radius", "1"}, {"label", 0}};
    auto berries = nlohmann::ordered_json::array();
    for (const auto& b : a.berries) {
      nlohmann::ordered_json jb;
      jb["center"] = {b.center[0].str(40), b.center[1].str(40),
                      b.center[2].str(40)};
      jb["radius"] = b.radius.str(40);
      jb["label"] = b.label;
      berries.push_back(std::move(jb));
    }
    j["berries"] = std::move(berries);
    auto contacts = nlohmann::ordered_json::array();
    for (const auto& [x, y] : a.contacts) contacts.push_back({x, y});
    j["contacts"] = std::move(contacts);
    auto faces = nlohmann::ordered_json::array();
    for (const auto& f : a.faces) faces.push_back({f[0], f[1], f[2]});
    j["faces"] = std::move(faces);
    return j.dump(2) + "\n";
  }

  Mesh unit = icosphere(subdiv);
  std::vector<std::array<double, 3>> centers{{0, 0, 0}};
  std::vector<double> scales{1.0};
  for (const auto& b : a.berries) {
    centers.push_back({b.center[0].to_double(), b.center[1].to_double(),
                       b.center[2].to_double()});
    scales.push_back(b.radius.to_double());
  }

  std::ostringstream os;
  if (format == SceneFormat::obj) {
    os << "# raspberry scene: unit pit plus " << a.berries.size()
       << " berries\n";
    int offset = 1;  // obj indices are 1-based
    for (size_t s = 0; s < centers.size(); ++s) {
      os << "o " << (s == 0 ? std::string("pit")
                            : "berry_" + std::to_string(s - 1))
         << "\n";
      for (const auto& p : unit.v) {
        os << "v";
        for (int k = 0; k < 3; ++k)
          os << " " << fmt(centers[s][k] + scales[s] * p[k]);
        os << "\n";
      }
      for (const auto& f : unit.f)
        os << "f " << f[0] + offset << " " << f[1] + offset << " "
           << f[2] + offset << "\n";
      offset += static_cast<int>(unit.v.size());
    }
    return os.str();
  }

  // ply
  size_t nv = unit.v.size() * centers.size();
  size_t nf = unit.f.size() * centers.size();
  os << "ply\nformat ascii 1.0\nelement vertex " << nv
     << "\nproperty float x\nproperty float y\nproperty float z\n"
        "element face "
     << nf << "\nproperty list uchar int vertex_indices\nend_header\n";
  for (size_t s = 0; s < centers.size(); ++s)
    for (const auto& p : unit.v) {
      for (int k = 0; k < 3; ++k)
        os << (k ? " " : "") << fmt(centers[s][k] + scales[s] * p[k]);
      os << "\n";
    }
  for (size_t s = 0; s < centers.size(); ++s) {
    int offset = static_cast<int>(s * unit.v.size());
    for (const auto& f : unit.f)
      os << "3 " << f[0] + offset << " " << f[1] + offset << " "
         << f[2] + offset << "\n";
  }
  return os.str();
}

}  // namespace raspberry
