#include <random>
#include <vector>

#include "doctest.h"

#include "bsl/homs.hpp"
#include "bsl/oracles.hpp"
#include "bsl/tokens.hpp"
#include "bsl/tree.hpp"
#include "bsl/verify.hpp"
#include "bsl/words.hpp"

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

TEST_CASE("K_0 and K_1 commute elementwise and meet only in the identity") {
  AmalgamFamily fam = sym3_amalgam();
  std::vector<Portrait> k0, k1;
  for_each_h_portrait(fam, 2, [&](const Portrait& h) {
    if (fam.quasi_kernel_member(h, 0)) k0.push_back(h);
    if (fam.quasi_kernel_member(h, 1)) k1.push_back(h);
  });
  REQUIRE(k0.size() > 1);
  REQUIRE(k1.size() > 1);
  long long common = 0;
  for (const Portrait& a : k0)
    for (const Portrait& b : k1) {
      CHECK(fam.mul(a, b) == fam.mul(b, a));
      if (a == b && !a.is_identity()) ++common;
    }
  CHECK(common == 0);
}

TEST_CASE("K_-1 and K_1 commute elementwise and meet only in the identity") {
  HnnFamily fam = sym2_hnn();
  std::vector<HnnPortrait> km, kp;
  for_each_hnn_portrait(fam, 2, [&](const HnnPortrait& g) {
    if (fam.k_eps_member(g, -1)) km.push_back(g);
    if (fam.k_eps_member(g, 1)) kp.push_back(g);
  });
  REQUIRE(km.size() > 1);
  REQUIRE(kp.size() > 1);
  long long common = 0;
  for (const HnnPortrait& a : km)
    for (const HnnPortrait& b : kp) {
      CHECK(fam.mul(a, b) == fam.mul(b, a));
      if (a == b && !a.is_identity()) ++common;
    }
  CHECK(common == 0);
}

TEST_CASE("conjugated quasi-kernels by distinct transversal words commute") {
  AmalgamFamily fam = sym3_amalgam();
  // sampled K_j members of small depth
  std::vector<Portrait> k0;
  for_each_h_portrait(fam, 1, [&](const Portrait& h) {
    if (fam.quasi_kernel_member(h, 0) && !h.is_identity()) k0.push_back(h);
  });
  REQUIRE(!k0.empty());
  // transversal sequences of equal length <= 2 starting on side 0
  std::vector<std::vector<int>> seqs;
  for (int i : fam.nontrivial_rep_ids(0)) {
    seqs.push_back({i});
    for (int k : fam.nontrivial_rep_ids(1)) seqs.push_back({i, k});
  }
  // s K_0 s^{-1} for s = γ^{k_{n}} ... γ^{k_0}: the innermost conjugator is
  // the side-0 rep, and each step stays inside H
  auto conjugate_by_seq = [&](const std::vector<int>& seq, const Portrait& h) {
    Portrait x = h;
    for (std::size_t t = 0; t < seq.size(); ++t) {
      Portrait r = fam.rep(t % 2 == 0 ? 0 : 1, seq[t]);
      x = fam.mul(fam.mul(r, x), fam.inv(r));
    }
    return x;
  };
  for (const auto& s : seqs) {
    for (const auto& t : seqs) {
      if (s.size() != t.size() || s == t) continue;
      for (const Portrait& a0 : k0) {
        for (const Portrait& b0 : k0) {
          Portrait a = conjugate_by_seq(s, a0);
          Portrait b = conjugate_by_seq(t, b0);
          CHECK(fam.mul(a, b) == fam.mul(b, a));
          if (a == b) CHECK(a.is_identity());
        }
      }
    }
  }
}

TEST_CASE("h(sigma_eps) fixes the far branch ball pointwise") {
  HnnFamily fam = sym2_hnn();
  HnnOracle o{&fam};
  Ball<HnnVertex> ball = build_ball(o, HnnVertex{}, 5);
  for (int eps : {-1, 1}) {
    for (const Perm& s : fam.sigma_stabilizer(eps).elements()) {
      GammaElem se = fam.gamma_from_sigma(eps, s);
      HnnWord<HnnOracle> w = hnn_word_of(o, fam.gen_top(se));
      // vertices of Theta-bar_{-eps} start with the step (iota_eps, -eps)
      for (const HnnVertex& v : ball.verts) {
        if (v.prefix.empty() || !(v.prefix[0].rep == 0 && v.prefix[0].eps == -eps)) continue;
        if (tree_distance(HnnVertex{}, v) > 4 + 1) continue;
        CHECK(hnn_act(o, w, v) == v);
      }
    }
  }
}

TEST_CASE("portraits of depth d move some vertex within radius d+2") {
  AmalgamFamily fam = sym3_amalgam();
  AmalgamOracle o{&fam};
  Ball<AmalgamVertex> ball = build_ball(o, AmalgamVertex{{}, 0}, 5);
  std::mt19937_64 rng(11);
  for_each_q_portrait(fam, 0, 2, [&](const Portrait& q) {
    if (q.is_identity()) return;
    if ((rng() & 3) != 0) return;  // sample a quarter of the space
    int d = q.depth();
    AmalgamWord<AmalgamOracle> w = amalgam_word_of(o, q);
    bool moved = false;
    for (const AmalgamVertex& v : ball.verts) {
      if (ball.dist[ball.id(v)] > d + 2) continue;
      if (!(amalgam_act(o, w, v) == v)) {
        moved = true;
        break;
      }
    }
    CHECK(moved);
  });
  // and Q_{1-j} portraits fix the T_j ball of radius 4 pointwise
  for_each_q_portrait(fam, 1, 2, [&](const Portrait& q) {
    if ((rng() & 7) != 0) return;
    AmalgamWord<AmalgamOracle> w = amalgam_word_of(o, fam.to_side(q, 0));
    for (const AmalgamVertex& v : ball.verts) {
      bool in_t0 = (v.prefix.empty() && v.side == 0) || (!v.prefix.empty() && v.prefix[0].side == 0);
      if (!in_t0 || ball.dist[ball.id(v)] > 4) continue;
      CHECK(amalgam_act(o, w, v) == v);
    }
  });
}

TEST_CASE("generation round trip: portraits re-expand and multiply back") {
  HnnFamily fam = sym2_hnn();
  // exhaustive at depth 1
  long long cases = 0;
  for_each_hnn_portrait(fam, 1, [&](const HnnPortrait& g) {
    HnnPortrait acc = fam.identity();
    for (const Token& t : hnn_portrait_to_tokens(fam, g))
      for (const auto& l : hnn_token_letters(fam, t)) acc = fam.mul(acc, std::get<HnnPortrait>(l));
    CHECK(acc == g);
    ++cases;
  });
  CHECK(cases > 0);
  // sampled at depth 2
  std::mt19937_64 rng(13);
  int sampled = 0;
  for_each_hnn_portrait(fam, 2, [&](const HnnPortrait& g) {
    if ((rng() & 1023) != 0) return;
    HnnPortrait acc = fam.identity();
    for (const Token& t : hnn_portrait_to_tokens(fam, g))
      for (const auto& l : hnn_token_letters(fam, t)) acc = fam.mul(acc, std::get<HnnPortrait>(l));
    CHECK(acc == g);
    ++sampled;
  });
  CHECK(sampled > 50);
}
