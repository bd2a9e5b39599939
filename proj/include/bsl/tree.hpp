#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bsl/words.hpp"

namespace bsl {

// ---------------------------------------------------------------------------
// Bounded Bass-Serre tree neighborhoods. Vertices are the canonical coset
// prefixes from the word engine; balls are id-indexed with symmetric
// adjacency. Ball vertices at distance < radius carry their full neighbor
// list; frontier vertices (distance == radius) do not.
// ---------------------------------------------------------------------------

template <AmalgamBaseOracle O>
std::vector<AmalgamVertex> tree_neighbors(const O& o, const AmalgamVertex& v) {
  std::vector<AmalgamVertex> out;
  if (v.prefix.empty())
    out.push_back({{}, 1 - v.side});
  else
    out.push_back(vertex_parent(v));
  for (int i : o.rep_ids(v.side)) {
    std::vector<AmalgamSyllable> p = v.prefix;
    p.push_back({v.side, i});
    out.push_back({std::move(p), 1 - v.side});
  }
  return out;
}

template <HnnBaseOracle O>
std::vector<HnnVertex> tree_neighbors(const O& o, const HnnVertex& v) {
  std::vector<HnnVertex> out;
  for (int eps : {-1, 1}) {
    for (int rep : o.rep_ids(-eps)) {
      if (rep == 0 && !v.prefix.empty() && v.prefix.back().eps == -eps) {
        out.push_back(vertex_parent(v));
        continue;
      }
      std::vector<HnnSyllable> p = v.prefix;
      p.push_back({rep, eps});
      out.push_back({std::move(p)});
    }
  }
  return out;
}

template <class V>
struct Ball {
  V center;
  int radius = 0;
  std::vector<V> verts;  // BFS order from the center
  std::map<V, int> index;
  std::vector<std::vector<int>> adj;  // neighbors inside the ball
  std::vector<int> dist;

  bool contains(const V& v) const { return index.count(v) != 0; }
  int id(const V& v) const { return index.at(v); }
  bool interior(int vid) const { return dist[vid] < radius; }
};

template <class O, class V>
Ball<V> build_ball(const O& o, const V& center, int radius, int radius_cap = 8) {
  if (radius > radius_cap) fail(ErrorKind::Limit, "ball radius exceeds configured cap");
  Ball<V> ball;
  ball.center = center;
  ball.radius = radius;
  ball.verts.push_back(center);
  ball.index[center] = 0;
  ball.dist.push_back(0);
  for (std::size_t head = 0; head < ball.verts.size(); ++head) {
    if (ball.dist[head] == radius) continue;
    V current = ball.verts[head];
    for (const V& n : tree_neighbors(o, current)) {
      if (!ball.index.count(n)) {
        ball.index[n] = static_cast<int>(ball.verts.size());
        ball.verts.push_back(n);
        ball.dist.push_back(ball.dist[head] + 1);
      }
    }
  }
  ball.adj.assign(ball.verts.size(), {});
  for (std::size_t vid = 0; vid < ball.verts.size(); ++vid) {
    for (const V& n : tree_neighbors(o, ball.verts[vid])) {
      auto it = ball.index.find(n);
      if (it != ball.index.end()) ball.adj[vid].push_back(it->second);
    }
  }
  return ball;
}

// ---------------------------------------------------------------------------
// Points of the barycentric subdivisions. A T^(1) point is a tree vertex or
// an edge midpoint; a T^(2) point adds quarter points. Edges are stored with
// the lexicographically smaller endpoint first.
// ---------------------------------------------------------------------------

template <class V>
struct T1Point {
  bool midpoint = false;
  V a;
  V b;  // == a for plain vertices

  static T1Point vertex(V v) { return {false, v, v}; }
  static T1Point edge_mid(V u, V w) {
    if (w < u) std::swap(u, w);
    return {true, std::move(u), std::move(w)};
  }
  friend bool operator==(const T1Point&, const T1Point&) = default;
  friend auto operator<=>(const T1Point&, const T1Point&) = default;
};

enum class RefinedKind { Vertex, Half, QuarterNearA, QuarterNearB };

template <class V>
struct RefinedPoint {
  RefinedKind kind = RefinedKind::Vertex;
  V a;
  V b;  // == a for plain vertices; otherwise the canonical edge (a < b)

  static RefinedPoint vertex(V v) { return {RefinedKind::Vertex, v, v}; }
  static RefinedPoint on_edge(RefinedKind k, V u, V w) {
    if (w < u) {
      std::swap(u, w);
      if (k == RefinedKind::QuarterNearA)
        k = RefinedKind::QuarterNearB;
      else if (k == RefinedKind::QuarterNearB)
        k = RefinedKind::QuarterNearA;
    }
    return {k, std::move(u), std::move(w)};
  }
  friend bool operator==(const RefinedPoint&, const RefinedPoint&) = default;
  friend auto operator<=>(const RefinedPoint&, const RefinedPoint&) = default;
};

// ---------------------------------------------------------------------------
// Fixed sets, Ψ and Υ. Actions here have no edge inversions (vertex cosets
// on the two sides are preserved), so a midpoint is fixed exactly when both
// endpoints are, and Ψ members are always tree vertices.
// ---------------------------------------------------------------------------

template <class O, class W, class V>
std::vector<char> fixed_vertices(const O&, const Ball<V>& ball, const W& g,
                                 const std::function<V(const W&, const V&)>& act) {
  std::vector<char> fixed(ball.verts.size(), 0);
  for (std::size_t vid = 0; vid < ball.verts.size(); ++vid)
    fixed[vid] = act(g, ball.verts[vid]) == ball.verts[vid] ? 1 : 0;
  return fixed;
}

template <class V>
struct PsiResult {
  std::vector<T1Point<V>> members;       // fixed with a moved neighbor inside the ball
  std::vector<T1Point<V>> undetermined;  // fixed frontier points whose inside neighbors are all fixed
};

// Ψ within a sub-radius of the ball: membership is asserted only from
// evidence inside that radius, so truncation can produce no false positives.
template <class V>
PsiResult<V> psi_set(const Ball<V>& ball, const std::vector<char>& fixed, int radius) {
  PsiResult<V> out;
  for (std::size_t vid = 0; vid < ball.verts.size(); ++vid) {
    if (ball.dist[vid] > radius || !fixed[vid]) continue;
    bool moved_inside = false;
    for (int n : ball.adj[vid]) {
      if (ball.dist[n] > radius) continue;
      if (!fixed[n]) moved_inside = true;
    }
    if (moved_inside)
      out.members.push_back(T1Point<V>::vertex(ball.verts[vid]));
    else if (ball.dist[vid] == radius)
      out.undetermined.push_back(T1Point<V>::vertex(ball.verts[vid]));
  }
  return out;
}

// Smallest connected subtree of T^(1) containing the given tree vertices:
// the union of geodesics from the first point, plus all midpoints along it.
template <class V>
std::set<T1Point<V>> upsilon_hull(const std::vector<T1Point<V>>& points) {
  std::set<T1Point<V>> hull;
  if (points.empty()) return hull;
  for (const T1Point<V>& p : points) {
    if (!p.midpoint) continue;
    fail(ErrorKind::Domain, "hull seeds must be tree vertices");
  }
  const V& base = points.front().a;
  for (const T1Point<V>& p : points) {
    std::vector<V> path = geodesic(base, p.a);
    for (std::size_t k = 0; k < path.size(); ++k) {
      hull.insert(T1Point<V>::vertex(path[k]));
      if (k + 1 < path.size()) hull.insert(T1Point<V>::edge_mid(path[k], path[k + 1]));
    }
  }
  return hull;
}

// Adjacency inside a T^(1) subtree: midpoints link to their endpoints.
template <class V>
std::vector<std::vector<int>> t1_adjacency(const std::vector<T1Point<V>>& nodes) {
  std::map<T1Point<V>, int> ids;
  for (std::size_t k = 0; k < nodes.size(); ++k) ids[nodes[k]] = static_cast<int>(k);
  std::vector<std::vector<int>> adj(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!nodes[k].midpoint) continue;
    for (const V* end : {&nodes[k].a, &nodes[k].b}) {
      auto it = ids.find(T1Point<V>::vertex(*end));
      if (it != ids.end()) {
        adj[k].push_back(it->second);
        adj[it->second].push_back(static_cast<int>(k));
      }
    }
  }
  return adj;
}

template <class V>
std::vector<int> bfs_far(const std::vector<std::vector<int>>& adj, int start, std::vector<int>& dist) {
  dist.assign(adj.size(), -1);
  std::vector<int> order{start};
  std::vector<int> parent(adj.size(), -1);
  dist[start] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int n : adj[order[head]]) {
      if (dist[n] < 0) {
        dist[n] = dist[order[head]] + 1;
        parent[n] = order[head];
        order.push_back(n);
      }
    }
  }
  return parent;
}

// Diameter of a T^(1) subtree in T^(1) edge units (half-edges of T).
template <class V>
int t1_diameter(const std::set<T1Point<V>>& hull) {
  if (hull.empty()) return -1;
  std::vector<T1Point<V>> nodes(hull.begin(), hull.end());
  auto adj = t1_adjacency(nodes);
  std::vector<int> dist;
  bfs_far<V>(adj, 0, dist);
  int a = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  bfs_far<V>(adj, a, dist);
  return *std::max_element(dist.begin(), dist.end());
}

// Center of a finite T^(1) subtree as a point of T^(2): the midpoint of a
// diameter path, which is a T^(1) vertex or the quarter point of an edge.
template <class V>
RefinedPoint<V> center_of(const std::set<T1Point<V>>& hull) {
  if (hull.empty()) fail(ErrorKind::Domain, "center of an empty subtree");
  std::vector<T1Point<V>> nodes(hull.begin(), hull.end());
  auto adj = t1_adjacency(nodes);
  std::vector<int> dist;
  bfs_far<V>(adj, 0, dist);
  int a = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
  std::vector<int> dist2;
  std::vector<int> parent = bfs_far<V>(adj, a, dist2);
  int b = static_cast<int>(std::max_element(dist2.begin(), dist2.end()) - dist2.begin());
  std::vector<int> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  int len = static_cast<int>(path.size()) - 1;  // T^(1) edges on the diameter path
  auto as_refined = [&](const T1Point<V>& p) {
    return p.midpoint ? RefinedPoint<V>::on_edge(RefinedKind::Half, p.a, p.b)
                      : RefinedPoint<V>::vertex(p.a);
  };
  if (len % 2 == 0) return as_refined(nodes[path[len / 2]]);
  // middle T^(1) edge: one end is a vertex, the other the midpoint of the
  // incident tree edge; the center is the quarter point nearer that vertex
  const T1Point<V>& x = nodes[path[len / 2]];
  const T1Point<V>& y = nodes[path[len / 2 + 1]];
  const T1Point<V>& vert = x.midpoint ? y : x;
  const T1Point<V>& mid = x.midpoint ? x : y;
  RefinedKind k = vert.a == mid.a ? RefinedKind::QuarterNearA : RefinedKind::QuarterNearB;
  return RefinedPoint<V>::on_edge(k, mid.a, mid.b);
}

// ---------------------------------------------------------------------------
// Fledgedness reports.
// ---------------------------------------------------------------------------

enum class FledgeVerdict { BoundedWitness, GrowingWitness, Inconclusive };

struct FledgeReport {
  std::vector<std::pair<int, int>> diameter_per_radius;  // (radius, T^(1) diameter; -1 if Ψ empty)
  FledgeVerdict verdict = FledgeVerdict::Inconclusive;
};

inline FledgeVerdict fledge_verdict(const std::vector<std::pair<int, int>>& diams) {
  if (diams.empty()) return FledgeVerdict::Inconclusive;
  bool growing = diams.size() >= 2;
  for (std::size_t k = 1; k < diams.size(); ++k)
    if (diams[k].second <= diams[k - 1].second) growing = false;
  if (growing) return FledgeVerdict::GrowingWitness;
  std::size_t half_start = diams.size() / 2;
  bool stable = diams.back().second >= 0;
  for (std::size_t k = half_start; k < diams.size(); ++k)
    if (diams[k].second != diams[half_start].second) stable = false;
  if (stable) return FledgeVerdict::BoundedWitness;
  return FledgeVerdict::Inconclusive;
}

// Derives every sub-radius report from one prebuilt ball.
template <class O, class W, class V>
FledgeReport fledge_report_on(const O& o, const Ball<V>& ball, const W& g,
                              const std::vector<int>& radii,
                              const std::function<V(const W&, const V&)>& act) {
  if (radii.empty()) fail(ErrorKind::Domain, "fledge report needs at least one radius");
  std::vector<int> sorted = radii;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() > ball.radius) fail(ErrorKind::Limit, "radius exceeds the prebuilt ball");
  std::vector<char> fixed = fixed_vertices<O, W, V>(o, ball, g, act);
  FledgeReport report;
  for (int r : sorted) {
    PsiResult<V> psi = psi_set(ball, fixed, r);
    std::set<T1Point<V>> hull = upsilon_hull(psi.members);
    report.diameter_per_radius.push_back({r, t1_diameter(hull)});
  }
  report.verdict = fledge_verdict(report.diameter_per_radius);
  return report;
}

template <class O, class W, class V>
FledgeReport fledge_report(const O& o, const W& g, const std::vector<int>& radii, const V& center,
                           const std::function<V(const W&, const V&)>& act, int radius_cap = 8) {
  std::vector<int> sorted = radii;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) fail(ErrorKind::Domain, "fledge report needs at least one radius");
  Ball<V> ball = build_ball(o, center, sorted.back(), radius_cap);
  return fledge_report_on<O, W, V>(o, ball, g, radii, act);
}

// ---------------------------------------------------------------------------
// The equivariant map δ: centers for elliptic elements, attracting ray
// prefixes for hyperbolic ones.
// ---------------------------------------------------------------------------

template <class V>
struct DeltaResult {
  bool hyperbolic = false;
  std::optional<RefinedPoint<V>> center;  // elliptic case
  std::vector<V> ray;                     // hyperbolic case: geodesic along the axis
};

template <class V>
bool rays_converge(const std::vector<V>& a, const std::vector<V>& b) {
  std::map<V, std::size_t> pos_b;
  for (std::size_t k = 0; k < b.size(); ++k) pos_b.emplace(b[k], k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = pos_b.find(a[i]);
    if (it == pos_b.end()) continue;
    std::size_t j = it->second;
    for (std::size_t t = 0; i + t < a.size() && j + t < b.size(); ++t)
      if (!(a[i + t] == b[j + t])) return false;
    return true;
  }
  return false;
}

template <class O, class W, class V>
RefinedPoint<V> act_refined(const W& g, const RefinedPoint<V>& p,
                            const std::function<V(const W&, const V&)>& act) {
  if (p.kind == RefinedKind::Vertex) return RefinedPoint<V>::vertex(act(g, p.a));
  return RefinedPoint<V>::on_edge(p.kind, act(g, p.a), act(g, p.b));
}

namespace detail {

// Attracting ray from a vertex on the axis: successive geodesics through the
// orbit of the base vertex under the cyclically reduced core.
template <class O, class W, class V>
std::vector<V> axis_ray(const O&, const W& conjugator, const W& core, const V& base, int length,
                        const std::function<W(const W&, const W&)>& mul_words,
                        const std::function<V(const W&, const V&)>& act) {
  std::vector<V> ray{act(conjugator, base)};
  W acc = conjugator;
  while (static_cast<int>(ray.size()) <= length) {
    acc = mul_words(acc, core);
    V target = act(acc, base);
    std::vector<V> seg = geodesic(ray.back(), target);
    for (std::size_t k = 1; k < seg.size(); ++k) ray.push_back(seg[k]);
  }
  ray.resize(static_cast<std::size_t>(length) + 1);
  return ray;
}

template <class O, class W, class V, class Classify>
DeltaResult<V> delta_map_impl(const O& o, const Ball<V>& ball, const W& w, int radius,
                              const V& ray_start, bool input_is_identity, Classify&& classification,
                              const std::function<W(const W&, const W&)>& mul_words,
                              const std::function<V(const W&, const V&)>& act) {
  if (input_is_identity) fail(ErrorKind::Domain, "delta is defined away from the identity");
  DeltaResult<V> out;
  if (classification.hyperbolic) {
    out.hyperbolic = true;
    out.ray = axis_ray<O, W, V>(o, classification.conjugator, classification.core, ray_start,
                                radius, mul_words, act);
    return out;
  }
  std::vector<int> radii{std::max(2, radius - 4), std::max(2, radius - 2), radius};
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  FledgeReport fr = fledge_report_on<O, W, V>(o, ball, w, radii, act);
  if (fr.verdict != FledgeVerdict::BoundedWitness) {
    std::string detail = "fledge diameters:";
    for (auto [r, d] : fr.diameter_per_radius)
      detail += " (" + std::to_string(r) + "," + std::to_string(d) + ")";
    fail(ErrorKind::PartialResult, "delta needs a bounded fledge witness; " + detail);
  }
  std::vector<char> fixed = fixed_vertices<O, W, V>(o, ball, w, act);
  PsiResult<V> psi = psi_set(ball, fixed, radius);
  out.center = center_of(upsilon_hull(psi.members));
  return out;
}

}  // namespace detail

// The ball must be centered at the family base vertex with radius >= radius.
template <AmalgamBaseOracle O>
DeltaResult<AmalgamVertex> delta_map(const O& o, const Ball<AmalgamVertex>& ball,
                                     const AmalgamWord<O>& w, int radius) {
  auto cls = amalgam_classify(o, w);
  int base_side = cls.core.syllables.empty() ? 0 : cls.core.syllables.front().side;
  std::function<AmalgamWord<O>(const AmalgamWord<O>&, const AmalgamWord<O>&)> mulw =
      [&o](const AmalgamWord<O>& a, const AmalgamWord<O>& b) { return amalgam_mul(o, a, b); };
  std::function<AmalgamVertex(const AmalgamWord<O>&, const AmalgamVertex&)> act =
      [&o](const AmalgamWord<O>& g, const AmalgamVertex& v) { return amalgam_act(o, g, v); };
  return detail::delta_map_impl<O, AmalgamWord<O>, AmalgamVertex>(
      o, ball, w, radius, AmalgamVertex{{}, base_side}, amalgam_is_identity_word(o, w), cls, mulw,
      act);
}

template <HnnBaseOracle O>
DeltaResult<HnnVertex> delta_map(const O& o, const Ball<HnnVertex>& ball, const HnnWord<O>& w,
                                 int radius) {
  auto cls = hnn_classify(o, w);
  std::function<HnnWord<O>(const HnnWord<O>&, const HnnWord<O>&)> mulw =
      [&o](const HnnWord<O>& a, const HnnWord<O>& b) { return hnn_mul(o, a, b); };
  std::function<HnnVertex(const HnnWord<O>&, const HnnVertex&)> act =
      [&o](const HnnWord<O>& g, const HnnVertex& v) { return hnn_act(o, g, v); };
  return detail::delta_map_impl<O, HnnWord<O>, HnnVertex>(
      o, ball, w, radius, HnnVertex{}, hnn_is_identity_word(o, w), cls, mulw, act);
}

// Axis of a hyperbolic word inside a ball: the vertices displaced by exactly
// the translation length.
template <class O, class W, class V>
std::vector<int> bounded_axis(const O&, const Ball<V>& ball, const W& g, int translation,
                              const std::function<V(const W&, const V&)>& act) {
  std::vector<int> axis;
  for (std::size_t vid = 0; vid < ball.verts.size(); ++vid) {
    V moved = act(g, ball.verts[vid]);
    if (tree_distance(ball.verts[vid], moved) == translation) axis.push_back(static_cast<int>(vid));
  }
  return axis;
}

}  // namespace bsl
