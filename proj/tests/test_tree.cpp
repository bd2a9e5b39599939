#include <random>

#include "doctest.h"

#include "bsl/bs23.hpp"
#include "bsl/oracles.hpp"
#include "bsl/tree.hpp"

using namespace bsl;

namespace {

AmalgamFamily sym3_amalgam() {
  PermGroup s3(3, 0, {Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)}, "sym3");
  return AmalgamFamily(s3, s3);
}

HnnFamily sym2_hnn() {
  PermGroup s2(2, 0, {Perm::from_cycles("(0 1)", 2)}, "sym2");
  return HnnFamily(s2, s2);
}

}  // namespace

TEST_CASE("ball degrees match the coset index counts") {
  AmalgamFamily afam = sym3_amalgam();
  AmalgamOracle ao{&afam};
  Ball<AmalgamVertex> aball = build_ball(ao, AmalgamVertex{{}, 0}, 4);
  // edges = vertices - 1 and interior degree = #(I_j)
  std::size_t edges = 0;
  for (const auto& nb : aball.adj) edges += nb.size();
  edges /= 2;
  CHECK(edges == aball.verts.size() - 1);
  for (std::size_t vid = 0; vid < aball.verts.size(); ++vid) {
    if (!aball.interior(static_cast<int>(vid))) continue;
    CHECK(aball.adj[vid].size() == static_cast<std::size_t>(afam.domain_size(aball.verts[vid].side)));
  }

  HnnFamily hfam = sym2_hnn();
  HnnOracle ho{&hfam};
  Ball<HnnVertex> hball = build_ball(ho, HnnVertex{}, 4);
  std::size_t hedges = 0;
  for (const auto& nb : hball.adj) hedges += nb.size();
  hedges /= 2;
  CHECK(hedges == hball.verts.size() - 1);
  for (std::size_t vid = 0; vid < hball.verts.size(); ++vid) {
    if (!hball.interior(static_cast<int>(vid))) continue;
    CHECK(hball.adj[vid].size() ==
          static_cast<std::size_t>(hfam.domain_size(-1) + hfam.domain_size(1)));
  }
  CHECK_THROWS_AS(build_ball(ho, HnnVertex{}, 9), Error);
}

TEST_CASE("action is a left action and preserves adjacency") {
  AmalgamFamily fam = sym3_amalgam();
  AmalgamOracle o{&fam};
  Ball<AmalgamVertex> ball = build_ball(o, AmalgamVertex{{}, 0}, 4);
  std::mt19937_64 rng(7);
  std::vector<Portrait> alphabet;
  for (int j : {0, 1})
    for (const Perm& g : fam.gamma(j).generators()) alphabet.push_back(fam.gen_g(j, g));
  alphabet.push_back(fam.gen_h(0, {2}, Perm::from_cycles("(1 2)", 3)));
  auto random_word = [&]() {
    std::vector<Portrait> letters;
    int len = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < len; ++t) letters.push_back(alphabet[rng() % alphabet.size()]);
    return amalgam_reduce(o, letters);
  };
  for (int k = 0; k < 200; ++k) {
    AmalgamWord<AmalgamOracle> g = random_word(), h = random_word();
    const AmalgamVertex& v = ball.verts[rng() % ball.verts.size()];
    CHECK(amalgam_act(o, amalgam_mul(o, g, h), v) == amalgam_act(o, g, amalgam_act(o, h, v)));
  }
  // distance preservation on sampled pairs
  for (int k = 0; k < 50; ++k) {
    AmalgamWord<AmalgamOracle> g = random_word();
    const AmalgamVertex& u = ball.verts[rng() % ball.verts.size()];
    const AmalgamVertex& v = ball.verts[rng() % ball.verts.size()];
    CHECK(tree_distance(amalgam_act(o, g, u), amalgam_act(o, g, v)) == tree_distance(u, v));
  }
}

TEST_CASE("edge stabilizer consistency: fixing both endpoints == fixing the edge") {
  AmalgamFamily fam = sym3_amalgam();
  AmalgamOracle o{&fam};
  Ball<AmalgamVertex> ball = build_ball(o, AmalgamVertex{{}, 0}, 3);
  std::vector<Portrait> elems{fam.gen_g(0, Perm::from_cycles("(1 2)", 3)),
                              fam.gen_g(1, Perm::from_cycles("(1 2)", 3)),
                              fam.gen_h(0, {1}, Perm::from_cycles("(1 2)", 3))};
  for (const Portrait& p : elems) {
    AmalgamWord<AmalgamOracle> w = amalgam_word_of(o, p);
    for (std::size_t vid = 0; vid < ball.verts.size(); ++vid) {
      for (int n : ball.adj[vid]) {
        bool u_fixed = amalgam_act(o, w, ball.verts[vid]) == ball.verts[vid];
        bool v_fixed = amalgam_act(o, w, ball.verts[n]) == ball.verts[n];
        // no inversions: an edge is fixed exactly when both endpoints are
        if (u_fixed && v_fixed) {
          CHECK(amalgam_act(o, w, ball.verts[vid]) == ball.verts[vid]);
        }
        if (u_fixed != v_fixed) {
          // moved neighbor of a fixed vertex: the edge moves
          CHECK(!(amalgam_act(o, w, ball.verts[vid]) == ball.verts[n]));
        }
      }
    }
  }
}

TEST_CASE("psi of a stabilizer generator is a single vertex with hull diameter zero") {
  AmalgamFamily fam = sym3_amalgam();
  AmalgamOracle o{&fam};
  Ball<AmalgamVertex> ball = build_ball(o, AmalgamVertex{{}, 0}, 6);
  AmalgamWord<AmalgamOracle> g = amalgam_word_of(o, fam.gen_g(0, Perm::from_cycles("(1 2)", 3)));
  std::function<AmalgamVertex(const AmalgamWord<AmalgamOracle>&, const AmalgamVertex&)> act =
      [&o](const AmalgamWord<AmalgamOracle>& w, const AmalgamVertex& v) { return amalgam_act(o, w, v); };
  std::vector<char> fixed = fixed_vertices<AmalgamOracle, AmalgamWord<AmalgamOracle>, AmalgamVertex>(
      o, ball, g, act);
  for (int r : {2, 3, 4, 5, 6}) {
    PsiResult<AmalgamVertex> psi = psi_set(ball, fixed, r);
    REQUIRE(psi.members.size() == 1);
    CHECK(psi.members[0].a == AmalgamVertex{{}, 0});
    CHECK(t1_diameter(upsilon_hull(psi.members)) == 0);
  }
  // g_0(sigma') fixes the side-1 subtree pointwise
  for (std::size_t vid = 0; vid < ball.verts.size(); ++vid) {
    const AmalgamVertex& v = ball.verts[vid];
    bool side1_subtree = (v.prefix.empty() && v.side == 1) || (!v.prefix.empty() && v.prefix[0].side == 1);
    if (side1_subtree) CHECK(fixed[vid] == 1);
  }
}

TEST_CASE("path generators stabilize their own vertex and permute below it") {
  AmalgamFamily fam = sym3_amalgam();
  AmalgamOracle o{&fam};
  Perm sp = Perm::from_cycles("(1 2)", 3);
  // h_0(1,2; s') fixes the vertex named by its own path
  AmalgamWord<AmalgamOracle> h = amalgam_word_of(o, fam.gen_h(0, {1, 2}, sp));
  AmalgamVertex own{{{0, 1}, {1, 2}}, 0};
  CHECK(amalgam_act(o, h, own) == own);
  // ... and rewrites the next index by its permutation
  AmalgamVertex below{{{0, 1}, {1, 2}, {0, 1}}, 1};
  AmalgamVertex image{{{0, 1}, {1, 2}, {0, 2}}, 1};
  CHECK(amalgam_act(o, h, below) == image);
  // identity acts as the identity on every ball vertex
  Ball<AmalgamVertex> ball = build_ball(o, AmalgamVertex{{}, 0}, 3);
  AmalgamWord<AmalgamOracle> id = amalgam_identity_word(o);
  for (const AmalgamVertex& v : ball.verts) CHECK(amalgam_act(o, id, v) == v);
}

TEST_CASE("centers by leaf stripping") {
  using V = HnnVertex;
  HnnVertex base{};
  HnnVertex t1{{HnnSyllable{0, 1}}};
  HnnVertex t2{{HnnSyllable{0, 1}, HnnSyllable{1, -1}}};

  // path of three tree vertices: center is the middle vertex
  std::set<T1Point<V>> hull3 = upsilon_hull<V>({T1Point<V>::vertex(base), T1Point<V>::vertex(t2)});
  RefinedPoint<V> c3 = center_of(hull3);
  CHECK(c3.kind == RefinedKind::Vertex);
  CHECK(c3.a == t1);

  // path of two tree vertices: center is the edge midpoint
  std::set<T1Point<V>> hull2 = upsilon_hull<V>({T1Point<V>::vertex(base), T1Point<V>::vertex(t1)});
  RefinedPoint<V> c2 = center_of(hull2);
  CHECK(c2.kind == RefinedKind::Half);

  // a vertex plus an adjacent midpoint: center is a quarter point
  std::set<T1Point<V>> hull_q{T1Point<V>::vertex(base), T1Point<V>::edge_mid(base, t1)};
  RefinedPoint<V> cq = center_of(hull_q);
  CHECK((cq.kind == RefinedKind::QuarterNearA || cq.kind == RefinedKind::QuarterNearB));

  CHECK(t1_diameter(hull3) == 4);
  CHECK(t1_diameter(hull2) == 2);
}

TEST_CASE("fledge verdicts") {
  CHECK(fledge_verdict({{4, 2}, {6, 2}, {8, 2}}) == FledgeVerdict::BoundedWitness);
  CHECK(fledge_verdict({{4, 2}, {6, 4}, {8, 6}}) == FledgeVerdict::GrowingWitness);
  CHECK(fledge_verdict({{4, 2}, {6, 4}, {8, 4}}) == FledgeVerdict::BoundedWitness);
  CHECK(fledge_verdict({{4, 0}, {6, 4}, {8, 2}}) == FledgeVerdict::Inconclusive);
  CHECK(fledge_verdict({{4, -1}, {6, -1}, {8, -1}}) == FledgeVerdict::Inconclusive);
}

TEST_CASE("delta for hyperbolic elements returns the attracting ray") {
  Bs23Oracle o;
  Ball<HnnVertex> ball = build_ball(o, HnnVertex{}, 6);
  HnnWord<Bs23Oracle> t = hnn_reduce(o, {1});
  DeltaResult<HnnVertex> d = delta_map(o, ball, t, 6);
  REQUIRE(d.hyperbolic);
  REQUIRE(d.ray.size() == 7);
  // the ray passes through t <b>, t^2 <b>, ...
  CHECK(d.ray[0] == HnnVertex{});
  HnnVertex cur{};
  for (std::size_t k = 1; k < d.ray.size(); ++k) {
    cur.prefix.push_back({0, 1});
    CHECK(d.ray[k] == cur);
  }
}

TEST_CASE("delta for identity and inconclusive inputs") {
  Bs23Oracle o;
  Ball<HnnVertex> ball = build_ball(o, HnnVertex{}, 8);
  HnnWord<Bs23Oracle> id = hnn_identity_word(o);
  CHECK_THROWS_AS(delta_map(o, ball, id, 6), Error);
  // b^6 is infinitely fledged: delta must refuse with a partial result
  HnnWord<Bs23Oracle> b6{{}, 6};
  try {
    delta_map(o, ball, b6, 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PartialResult);
  }
}

TEST_CASE("rays converge detection") {
  using V = HnnVertex;
  auto v = [](std::vector<int> reps) {
    HnnVertex out;
    for (int r : reps) out.prefix.push_back({r, 1});
    return out;
  };
  std::vector<V> a{v({1}), v({1, 0}), v({1, 0, 0})};
  std::vector<V> b{v({}), v({1}), v({1, 0}), v({1, 0, 0})};
  CHECK(rays_converge(a, b));
  std::vector<V> c{v({0}), v({0, 0})};
  CHECK_FALSE(rays_converge(a, c));
}
