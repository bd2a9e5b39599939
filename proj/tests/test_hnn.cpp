#include "doctest.h"

#include "bsl/error.hpp"
#include "bsl/hnn.hpp"

using bsl::GammaElem;
using bsl::HnnFamily;
using bsl::HnnPortrait;
using bsl::HnnStep;
using bsl::Perm;
using bsl::PermGroup;

namespace {

HnnFamily sym2_sym2() {
  PermGroup s2(2, 0, {Perm::from_cycles("(0 1)", 2)}, "sym2");
  return HnnFamily(s2, s2);
}

HnnFamily sym3_sym3() {
  PermGroup s3(3, 0, {Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)}, "sym3");
  return HnnFamily(s3, s3);
}

}  // namespace

TEST_CASE("gamma pairs act by side") {
  HnnFamily fam = sym3_sym3();
  GammaElem g{Perm::from_cycles("(0 1)", 3), Perm::from_cycles("(1 2)", 3)};
  CHECK(g.act(-1, 0) == 1);
  CHECK(g.act(1, 1) == 2);
  CHECK(fam.in_gamma(g));
  CHECK_FALSE(g.fixes_basepoint(-1));
  CHECK(g.fixes_basepoint(1));
  CHECK(fam.in_gamma_eps(g, 1));
  CHECK_FALSE(fam.in_gamma_eps(g, -1));
}

TEST_CASE("path constraints") {
  HnnFamily fam = sym2_sym2();
  GammaElem sp = fam.gamma_from_sigma(-1, Perm::from_cycles("(0 1)", 2));
  // after a sign flip the index must avoid the basepoint
  CHECK_THROWS_AS(fam.gen_path({{1, 0}, {-1, 0}}, sp), bsl::Error);
  // a path ending with sign -1 takes labels whose sigma_m part fixes 0
  CHECK_NOTHROW(fam.gen_path({{1, 0}, {-1, 1}}, fam.gamma_from_sigma(1, Perm::from_cycles("(0 1)", 2))));
  // the label must fix the basepoint matching the last sign
  GammaElem moving = fam.gamma_from_sigma(1, Perm::from_cycles("(0 1)", 2));
  CHECK_THROWS_AS(fam.gen_path({{1, 1}}, moving), bsl::Error);
  // first step is unconstrained
  CHECK_NOTHROW(fam.gen_path({{1, 0}}, fam.gamma_from_sigma(-1, Perm::from_cycles("(0 1)", 2))));
}

TEST_CASE("portrait group operations") {
  HnnFamily fam = sym3_sym3();
  GammaElem a{Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)};
  GammaElem b{Perm::from_cycles("(0 1)", 3), Perm::from_cycles("(1 2)", 3)};
  // R5 and inverses on tops
  CHECK(fam.mul(fam.gen_top(a), fam.gen_top(b)) == fam.gen_top(a * b));
  HnnPortrait p = fam.gen_path({{1, 2}, {-1, 1}}, fam.gamma_from_sigma(-1, Perm::from_cycles("(1 2)", 3)));
  CHECK(fam.mul(p, fam.inv(p)).is_identity());
  // R1: the two sigma factors commute
  HnnPortrait hm = fam.gen_top(fam.gamma_from_sigma(-1, Perm::from_cycles("(0 1)", 3)));
  HnnPortrait hp = fam.gen_top(fam.gamma_from_sigma(1, Perm::from_cycles("(0 2)", 3)));
  CHECK(fam.mul(hm, hp) == fam.mul(hp, hm));
  // identity label collapses to the identity portrait
  CHECK(fam.gen_path({{1, 1}}, fam.gamma_identity()).is_identity());
}

TEST_CASE("R6 index rewrite under top conjugation") {
  HnnFamily fam = sym3_sym3();
  GammaElem sigma{Perm::from_cycles("(0 1)", 3), Perm(3)};
  GammaElem label = fam.gamma_from_sigma(-1, Perm::from_cycles("(1 2)", 3));
  // first index lives in I_{-eps}: for eps=+1 the sigma_m component applies
  HnnPortrait lhs = fam.conj(fam.gen_top(sigma), fam.gen_path({{1, 0}, {1, 1}}, label));
  HnnPortrait rhs = fam.gen_path({{1, 1}, {1, 1}}, label);
  CHECK(lhs == rhs);
}

TEST_CASE("coset decomposition at both signs") {
  HnnFamily fam = sym3_sym3();
  GammaElem sigma{Perm::from_cycles("(0 2)", 3), Perm::from_cycles("(0 1 2)", 3)};
  HnnPortrait g = fam.gen_top(sigma);
  for (int eps : {-1, 1}) {
    auto [idx, rem] = fam.coset_decompose_eps(g, eps);
    CHECK(idx == sigma.act(eps, 0));
    CHECK(fam.in_h_eps(rem, eps));
    CHECK(fam.mul(fam.rep_eps(eps, idx), rem) == g);
  }
  auto [i0, r0] = fam.coset_decompose_eps(fam.identity(), 1);
  CHECK(i0 == 0);
  CHECK(r0.is_identity());
}

TEST_CASE("tau conjugation follows the rewriting rules") {
  HnnFamily fam = sym3_sym3();
  for (int eps : {-1, 1}) {
    // R7: a fixing top becomes a depth-one path
    for (const Perm& s : fam.sigma_stabilizer(eps).elements()) {
      GammaElem se = fam.gamma_from_sigma(eps, s);
      HnnPortrait lhs = fam.conjugate_by_tau(fam.gen_top(se), eps);
      if (se.is_identity())
        CHECK(lhs.is_identity());
      else
        CHECK(lhs == fam.gen_path({{eps, 0}}, se));
    }
    // round trip
    GammaElem label = fam.gamma_from_sigma(-eps, Perm::from_cycles("(1 2)", 3));
    HnnPortrait p = fam.gen_path({{eps, 1}, {eps, 0}}, fam.gamma_from_sigma(eps, Perm::from_cycles("(1 2)", 3)));
    (void)label;
    HnnPortrait forth = fam.conjugate_by_tau(p, eps);
    CHECK(fam.conjugate_by_tau(forth, -eps) == p);
    // R9 strip
    HnnPortrait stripped = fam.conjugate_by_tau(
        fam.gen_path({{eps, 0}, {eps, 2}}, fam.gamma_from_sigma(eps, Perm::from_cycles("(1 2)", 3))), -eps);
    CHECK(stripped == fam.gen_path({{eps, 2}}, fam.gamma_from_sigma(eps, Perm::from_cycles("(1 2)", 3))));
  }
  // pinch error outside H_eps
  GammaElem moving{Perm::from_cycles("(0 1)", 3), Perm(3)};
  CHECK_THROWS_AS(sym3_sym3().conjugate_by_tau(sym3_sym3().gen_top(moving), -1), bsl::Error);
}

TEST_CASE("quasi-kernel membership shapes") {
  HnnFamily fam = sym3_sym3();
  for (int eps : {-1, 1}) {
    // generators of K_eps sit below the step (iota_{-eps}, eps)
    GammaElem label = fam.gamma_from_sigma(eps, Perm::from_cycles("(1 2)", 3));
    HnnPortrait gen = fam.gen_path({{eps, 0}}, label);
    CHECK(fam.k_eps_member(gen, eps));
    CHECK_FALSE(fam.k_eps_member(gen, -eps));
    // nontrivial tops are not members
    CHECK_FALSE(fam.k_eps_member(fam.gen_top(label), eps));
    // identity belongs to both
    CHECK(fam.k_eps_member(fam.identity(), eps));
    // consistency with the conjugated branch stabilizer
    CHECK(fam.lambda_bar_member(fam.conjugate_by_tau(gen, -eps), -eps));
  }
}

TEST_CASE("lambda-bar membership") {
  HnnFamily fam = sym3_sym3();
  for (int eps : {-1, 1}) {
    GammaElem fixing = fam.gamma_from_sigma(-eps, Perm::from_cycles("(1 2)", 3));
    CHECK(fam.lambda_bar_member(fam.gen_top(fixing), eps));
    GammaElem moving = fam.gamma_from_sigma(-eps, Perm::from_cycles("(0 1)", 3));
    CHECK_FALSE(fam.lambda_bar_member(fam.gen_top(moving), eps));
    // children at the excluded slot break membership
    HnnPortrait bad = fam.gen_path({{eps, 0}}, fam.gamma_from_sigma(eps, Perm::from_cycles("(1 2)", 3)));
    CHECK_FALSE(fam.lambda_bar_member(bad, eps));
  }
}

TEST_CASE("criterion report truth table") {
  HnnFamily fam = sym2_sym2();
  auto r = bsl::cstar_report_hnn(fam);
  CHECK(r.unique_trace);
  CHECK_FALSE(r.cstar_simple);
  CHECK(r.quasi_kernel_amenable);
  CHECK(r.structure_hypotheses);  // Sym(2) passes through the escape hatch
  CHECK(bsl::cstar_report_hnn(fam, true, false).cstar_simple);
  CHECK(bsl::cstar_report_hnn(fam, false, true).cstar_simple);
}
