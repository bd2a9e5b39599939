#include <random>

#include "doctest.h"

#include "bsl/bs23.hpp"
#include "bsl/error.hpp"
#include "bsl/oracles.hpp"
#include "bsl/tokens.hpp"
#include "bsl/tree.hpp"
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

TEST_CASE("word grammar parses and round-trips") {
  AmalgamFamily fam = sym3_amalgam();
  TokenContext actx{FamilyKind::Amalgam, &fam, nullptr};
  auto toks = parse_word_text("g0[(1 2)]", actx);
  REQUIRE(toks.size() == 1);
  CHECK(std::holds_alternative<TokAmalgamG>(toks[0].atom));

  auto toks2 = parse_word_text("h0[1,2;(1 2)] * g1[(0 1 2)]^-1", actx);
  REQUIRE(toks2.size() == 2);
  CHECK(std::holds_alternative<TokAmalgamH>(toks2[0].atom));
  CHECK(toks2[1].power == -1);
  CHECK(parse_word_text(print_word_text(toks2, actx), actx) == toks2);

  TokenContext bctx{FamilyKind::Bs23, nullptr, nullptr};
  auto toks3 = parse_word_text("t^-1 * b^2 * t", bctx);
  REQUIRE(toks3.size() == 3);
  CHECK(parse_word_text(print_word_text(toks3, bctx), bctx) == toks3);
  // '*' separators are optional
  CHECK(parse_word_text("t^-1 b^2 t", bctx) == toks3);

  HnnFamily hf = sym2_hnn();
  TokenContext hctx{FamilyKind::Hnn, nullptr, &hf};
  auto toks4 = parse_word_text("h[(1,1),(1,-1);(2 3)] * t^2 * h[(0 1)]", hctx);
  REQUIRE(toks4.size() == 3);
  CHECK(parse_word_text(print_word_text(toks4, hctx), hctx) == toks4);

  CHECK_THROWS_AS(parse_word_text("q * t", bctx), Error);
  CHECK_THROWS_AS(parse_word_text("", bctx), Error);
  CHECK_THROWS_AS(parse_word_text("g0[(1 2)", actx), Error);
  CHECK_THROWS_AS(parse_word_text("b", actx), Error);
}

TEST_CASE("bs23 reduction golden cases") {
  Bs23Oracle o;
  // t^-1 b^2 t -> b^3
  HnnWord<Bs23Oracle> w = hnn_reduce(o, {-1, std::int64_t{2}, 1});
  CHECK(w.syllables.empty());
  CHECK(w.tail == 3);
  CHECK(word_text(w) == "b^3");

  // b^6 * (t b t^-1) has no pinch
  HnnWord<Bs23Oracle> v = hnn_reduce(o, {std::int64_t{6}, 1, std::int64_t{1}, -1});
  CHECK(v.syllables.size() == 2);

  // empty word is the identity
  CHECK(hnn_is_identity_word(o, hnn_reduce(o, {})));
}

TEST_CASE("reduce is idempotent and inverts exactly") {
  AmalgamFamily fam = sym3_amalgam();
  AmalgamOracle o{&fam};
  std::mt19937_64 rng(0);
  std::vector<Portrait> alphabet;
  for (int j : {0, 1})
    for (const Perm& g : fam.gamma(j).elements())
      if (!g.is_identity()) alphabet.push_back(fam.gen_g(j, g));
  alphabet.push_back(fam.gen_h(0, {1, 2}, Perm::from_cycles("(1 2)", 3)));
  alphabet.push_back(fam.gen_h(1, {2}, Perm::from_cycles("(1 2)", 3)));

  for (int k = 0; k < 200; ++k) {
    std::vector<Portrait> letters;
    int len = 1 + static_cast<int>(rng() % 6);
    for (int t = 0; t < len; ++t) letters.push_back(alphabet[rng() % alphabet.size()]);
    AmalgamWord<AmalgamOracle> w = amalgam_reduce(o, letters);
    // idempotent: re-reducing the normal form letters gives the same word
    std::vector<Portrait> again;
    for (const AmalgamSyllable& s : w.syllables) again.push_back(o.rep(s.side, s.rep));
    again.push_back(w.tail);
    CHECK(amalgam_reduce(o, again) == w);
    // w * w^{-1} = 1
    CHECK(amalgam_is_identity_word(o, amalgam_mul(o, w, amalgam_inv(o, w))));
    // alternation and nontrivial reps
    for (std::size_t i = 0; i < w.syllables.size(); ++i) {
      CHECK(w.syllables[i].rep != fam.basepoint(w.syllables[i].side));
      if (i + 1 < w.syllables.size()) CHECK(w.syllables[i].side != w.syllables[i + 1].side);
    }
    CHECK(fam.in_h(w.tail));
  }
}

TEST_CASE("associativity on sampled triples") {
  HnnFamily fam = sym2_hnn();
  HnnOracle o{&fam};
  std::mt19937_64 rng(1);
  auto random_word = [&]() {
    std::vector<HnnLetter<HnnOracle>> letters;
    int len = 1 + static_cast<int>(rng() % 5);
    for (int t = 0; t < len; ++t) {
      if (rng() % 2) {
        letters.push_back(static_cast<int>(rng() % 2) * 2 - 1);
      } else {
        GammaElem g{rng() % 2 ? Perm::from_cycles("(0 1)", 2) : Perm(2),
                    rng() % 2 ? Perm::from_cycles("(0 1)", 2) : Perm(2)};
        letters.push_back(fam.gen_top(g));
      }
    }
    return hnn_reduce(o, letters);
  };
  for (int k = 0; k < 100; ++k) {
    HnnWord<HnnOracle> a = random_word(), b = random_word(), c = random_word();
    CHECK(hnn_mul(o, hnn_mul(o, a, b), c) == hnn_mul(o, a, hnn_mul(o, b, c)));
    CHECK(hnn_mul(o, a, hnn_identity_word(o)) == a);
  }
}

TEST_CASE("normal form uniqueness against ball actions") {
  AmalgamFamily fam = sym3_amalgam();
  AmalgamOracle o{&fam};
  Ball<AmalgamVertex> ball = build_ball(o, AmalgamVertex{{}, 0}, 6);
  std::mt19937_64 rng(2);
  std::vector<Portrait> alphabet;
  for (int j : {0, 1})
    for (const Perm& g : fam.gamma(j).generators()) alphabet.push_back(fam.gen_g(j, g));
  alphabet.push_back(fam.gen_h(0, {1}, Perm::from_cycles("(1 2)", 3)));
  alphabet.push_back(fam.gen_h(1, {1, 1}, Perm::from_cycles("(1 2)", 3)));

  auto random_word = [&]() {
    std::vector<Portrait> letters;
    int len = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < len; ++t) letters.push_back(alphabet[rng() % alphabet.size()]);
    return amalgam_reduce(o, letters);
  };
  for (int k = 0; k < 120; ++k) {
    AmalgamWord<AmalgamOracle> a = random_word(), b = random_word();
    bool same_action = true;
    for (const AmalgamVertex& v : ball.verts)
      if (!(amalgam_act(o, a, v) == amalgam_act(o, b, v))) {
        same_action = false;
        break;
      }
    CHECK(same_action == (a == b));
  }
}

TEST_CASE("reduce is constant on relation instances") {
  HnnFamily fam = sym2_hnn();
  HnnOracle o{&fam};
  GammaElem sm = fam.gamma_from_sigma(-1, Perm::from_cycles("(0 1)", 2));
  GammaElem sp = fam.gamma_from_sigma(1, Perm::from_cycles("(0 1)", 2));

  // R7 as words with eps = +1: the label must lie in Gamma_{+1}, so its
  // sigma_p part fixes the basepoint; sm qualifies
  HnnWord<HnnOracle> lhs = hnn_reduce(o, {1, fam.gen_top(sm), -1});
  HnnWord<HnnOracle> rhs = hnn_reduce(o, {fam.gen_path({{1, 0}}, sm)});
  CHECK(lhs == rhs);

  // R1 as words
  CHECK(hnn_reduce(o, {fam.gen_top(sm), fam.gen_top(sp)}) ==
        hnn_reduce(o, {fam.gen_top(sp), fam.gen_top(sm)}));

  // R9 strip as words: t^-1 h((iota_{-1},+1); sm) t = h(sm)
  HnnWord<HnnOracle> lhs9 = hnn_reduce(o, {-1, fam.gen_path({{1, 0}}, sm), 1});
  CHECK(lhs9 == hnn_reduce(o, {fam.gen_top(sm)}));
}

TEST_CASE("classification basics in BS(2,3)") {
  Bs23Oracle o;
  // b is elliptic and fixes the base vertex
  HnnWord<Bs23Oracle> b{{}, 1};
  auto cb = hnn_classify(o, b);
  CHECK_FALSE(cb.hyperbolic);
  REQUIRE(cb.witness);
  CHECK(cb.witness->prefix.empty());

  // t is hyperbolic; the fixed-point search over the radius-6 ball finds none
  HnnWord<Bs23Oracle> t = hnn_reduce(o, {1});
  auto ct = hnn_classify(o, t);
  CHECK(ct.hyperbolic);
  CHECK(ct.translation_length == 1);
  Ball<HnnVertex> ball = build_ball(o, HnnVertex{}, 6);
  for (const HnnVertex& v : ball.verts) CHECK_FALSE(hnn_act(o, t, v) == v);

  // conjugates of elliptic elements stay elliptic with a translated witness
  HnnWord<Bs23Oracle> conj = hnn_mul(o, hnn_mul(o, hnn_inv(o, t), b), t);
  auto cc = hnn_classify(o, conj);
  CHECK_FALSE(cc.hyperbolic);
  REQUIRE(cc.witness);
  CHECK(hnn_act(o, conj, *cc.witness) == *cc.witness);
}

TEST_CASE("amalgam classification and cyclic reduction") {
  AmalgamFamily fam = sym3_amalgam();
  AmalgamOracle o{&fam};
  // an element of G_0 is elliptic at the side-0 base vertex
  AmalgamWord<AmalgamOracle> g = amalgam_word_of(o, fam.gen_g(0, Perm::from_cycles("(0 1)", 3)));
  auto cls = amalgam_classify(o, g);
  CHECK_FALSE(cls.hyperbolic);
  REQUIRE(cls.witness);
  CHECK(*cls.witness == AmalgamVertex{{}, 0});

  // an alternating two-syllable word is hyperbolic with translation length 2
  AmalgamWord<AmalgamOracle> w =
      amalgam_reduce(o, {fam.gen_g(0, Perm::from_cycles("(0 1)", 3)),
                         fam.gen_g(1, Perm::from_cycles("(0 1 2)", 3))});
  auto cw = amalgam_classify(o, w);
  CHECK(cw.hyperbolic);
  CHECK(cw.translation_length == 2);

  // cyclic reduction peels conjugating syllables
  AmalgamWord<AmalgamOracle> conj = amalgam_mul(o, amalgam_mul(o, g, w), amalgam_inv(o, g));
  auto [core, conjugator] = amalgam_cyclic_reduce(o, conj);
  CHECK(amalgam_mul(o, amalgam_mul(o, conjugator, core), amalgam_inv(o, conjugator)) == conj);
}

TEST_CASE("oracle contract violations surface as errors") {
  // a broken oracle whose decomposition forgets the remainder
  struct Broken : Bs23Oracle {
    std::pair<int, Elem> coset_decompose_eps(Elem a, int eps) const {
      auto [r, h] = Bs23Oracle::coset_decompose_eps(a, eps);
      return {r, h + 2};  // recomposition will not match
    }
  };
  Broken o;
  HnnWord<Broken> w = hnn_identity_word(o);
  hnn_push_elem(o, w, 5);
  CHECK_THROWS_AS(hnn_push_tau(o, w, 1), Error);
}

TEST_CASE("vertex geodesics and distances") {
  Bs23Oracle o;
  HnnVertex base{};
  HnnVertex t1 = hnn_act(o, hnn_reduce(o, {1}), base);
  HnnVertex t2 = hnn_act(o, hnn_reduce(o, {1, std::int64_t{1}, -1}), base);
  CHECK(tree_distance(base, t1) == 1);
  CHECK(tree_distance(base, t2) == 2);
  CHECK(tree_distance(t1, t2) == 1);
  auto path = geodesic(base, t2);
  REQUIRE(path.size() == 3);
  CHECK(path[1] == t1);
}
