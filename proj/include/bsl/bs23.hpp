#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bsl/error.hpp"

namespace bsl {

// Base oracle for BS(2,3) = <t, b | t^-1 b^2 t = b^3> over the integers:
// a base element is b^k. H_{-1} = <b^2>, H_1 = <b^3>, and conjugation by
// t^-1 maps b^{2k} to b^{3k}. Transversal reps are the smallest nonnegative
// exponents, so rep id r stands for b^r.
struct Bs23Oracle {
  using Elem = std::int64_t;

  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return a + b; }
  Elem inv(Elem a) const { return -a; }
  bool is_identity(Elem a) const { return a == 0; }

  static int modulus(int eps) { return eps < 0 ? 2 : 3; }

  bool in_h_eps(Elem a, int eps) const { return a % modulus(eps) == 0; }

  std::pair<int, Elem> coset_decompose_eps(Elem a, int eps) const {
    int m = modulus(eps);
    int r = static_cast<int>(((a % m) + m) % m);
    return {r, a - r};
  }

  Elem rep_eps(int /*eps*/, int index) const { return index; }

  std::vector<int> rep_ids(int eps) const { return eps < 0 ? std::vector<int>{0, 1} : std::vector<int>{0, 1, 2}; }

  // t^eps b^k t^-eps
  Elem conjugate_by_tau(Elem a, int eps) const {
    if (!in_h_eps(a, eps)) fail(ErrorKind::BrittonPinch, "exponent outside H_eps under tau conjugation");
    return eps < 0 ? a / 2 * 3 : a / 3 * 2;
  }
};

// The linear subtree fixed by b^6: vertices indexed -n..n around the base
// vertex, alternating t and t^-1 prefixes with b letters in between.
std::vector<struct HnnVertex> bs23_linear_subtree(int n);

struct B6Check {
  std::string description;
  std::string expected;
  std::string got;
  bool passed = false;
};

// Replays the fixed-vertex and moved-neighbor computations for b^6 on the
// linear subtree, comparing printed vertices token for token.
std::vector<B6Check> verify_b6(int n);

}  // namespace bsl
