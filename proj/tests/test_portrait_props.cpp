#include <random>

#include "doctest.h"

#include "bsl/amalgam.hpp"
#include "bsl/hnn.hpp"
#include "bsl/oracles.hpp"
#include "bsl/tree.hpp"
#include "bsl/words.hpp"

using namespace bsl;

namespace {

AmalgamFamily sym3_amalgam() {
  PermGroup s3(3, 0, {Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)}, "sym3");
  return AmalgamFamily(s3, s3);
}

HnnFamily sym3_hnn() {
  PermGroup s3(3, 0, {Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)}, "sym3");
  return HnnFamily(s3, s3);
}

Portrait random_amalgam_elem(const AmalgamFamily& fam, std::mt19937_64& rng, int depth,
                             bool force_h) {
  std::function<Portrait(int, int, bool)> node = [&](int side, int d, bool full_top) {
    Portrait p;
    p.side = side;
    const auto& tops = full_top ? fam.gamma(side).elements() : fam.point_stabilizer(side).elements();
    p.top = tops[rng() % tops.size()];
    if (d > 0) {
      int lo = full_top ? 0 : 1;  // non-root slots avoid the basepoint
      for (int slot = lo; slot < fam.domain_size(side); ++slot) {
        if (rng() % 3 != 0) continue;
        Portrait c = node(1 - side, d - 1, false);
        if (!c.is_identity()) p.children.push_back({slot, std::move(c)});
      }
    }
    return p;
  };
  Portrait p = node(rng() % 2 == 0 ? 0 : 1, depth, !force_h);
  if (force_h) {
    // drop to the stabilizer top so the element lies in H
    p.top = fam.point_stabilizer(p.side).elements()[rng() % fam.point_stabilizer(p.side).order()];
  }
  return fam.mul(fam.identity(), p);
}

HnnPortrait random_hnn_elem(const HnnFamily& fam, std::mt19937_64& rng, int depth) {
  std::function<HnnPortrait(int, int)> node = [&](int ctx, int d) {
    HnnPortrait p;
    p.ctx = ctx;
    for (;;) {
      GammaElem g{fam.sigma(-1).elements()[rng() % fam.sigma(-1).order()],
                  fam.sigma(1).elements()[rng() % fam.sigma(1).order()]};
      if (ctx == 0 || g.fixes_basepoint(ctx)) {
        p.label = g;
        break;
      }
    }
    if (d > 0) {
      for (int eps : {-1, 1}) {
        bool flip = ctx != 0 && ctx * eps == -1;
        for (int i = flip ? 1 : 0; i < fam.domain_size(-eps); ++i) {
          if (rng() % 3 != 0) continue;
          HnnPortrait c = node(eps, d - 1);
          if (!c.is_identity()) p.children.push_back({{eps, i}, std::move(c)});
        }
      }
    }
    return p;
  };
  return node(0, depth);
}

}  // namespace

TEST_CASE("portrait multiplication is associative and inverts") {
  AmalgamFamily fam = sym3_amalgam();
  std::mt19937_64 rng(17);
  for (int k = 0; k < 300; ++k) {
    // at most one factor outside H so the products stay defined
    Portrait a = random_amalgam_elem(fam, rng, 2, true);
    Portrait b = random_amalgam_elem(fam, rng, 2, k % 2 == 0);
    Portrait c = random_amalgam_elem(fam, rng, 2, true);
    CHECK(fam.mul(fam.mul(a, b), c) == fam.mul(a, fam.mul(b, c)));
    CHECK(fam.mul(b, fam.inv(b)).is_identity());
    CHECK(fam.inv(fam.inv(b)) == b);
    CHECK(fam.inv(fam.mul(a, b)) == fam.mul(fam.inv(b), fam.inv(a)));
  }
}

TEST_CASE("hnn portrait multiplication is associative and inverts") {
  HnnFamily fam = sym3_hnn();
  std::mt19937_64 rng(19);
  for (int k = 0; k < 300; ++k) {
    HnnPortrait a = random_hnn_elem(fam, rng, 2);
    HnnPortrait b = random_hnn_elem(fam, rng, 2);
    HnnPortrait c = random_hnn_elem(fam, rng, 2);
    CHECK(fam.mul(fam.mul(a, b), c) == fam.mul(a, fam.mul(b, c)));
    CHECK(fam.mul(a, fam.inv(a)).is_identity());
    CHECK(fam.inv(fam.inv(a)) == a);
    CHECK(fam.inv(fam.mul(a, b)) == fam.mul(fam.inv(b), fam.inv(a)));
  }
}

TEST_CASE("geodesics are paths of adjacent vertices realizing the distance") {
  HnnFamily fam = sym3_hnn();
  HnnOracle o{&fam};
  Ball<HnnVertex> ball = build_ball(o, HnnVertex{}, 4);
  std::mt19937_64 rng(23);
  for (int k = 0; k < 200; ++k) {
    const HnnVertex& u = ball.verts[rng() % ball.verts.size()];
    const HnnVertex& v = ball.verts[rng() % ball.verts.size()];
    const HnnVertex& w = ball.verts[rng() % ball.verts.size()];
    std::vector<HnnVertex> path = geodesic(u, v);
    CHECK(path.front() == u);
    CHECK(path.back() == v);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) CHECK(tree_distance(path[i], path[i + 1]) == 1);
    // triangle inequality with equality through midpoints on the path
    CHECK(tree_distance(u, w) <= tree_distance(u, v) + tree_distance(v, w));
  }
}
