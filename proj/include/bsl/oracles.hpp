#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bsl/amalgam.hpp"
#include "bsl/hnn.hpp"

namespace bsl {

// Oracle seam between the word engine and the amalgam family: the engine
// only ever sees these operations.
struct AmalgamOracle {
  using Elem = Portrait;

  const AmalgamFamily* fam = nullptr;

  Elem identity() const { return fam->identity(); }
  Elem mul(const Elem& a, const Elem& b) const { return fam->mul(a, b); }
  Elem inv(const Elem& a) const { return fam->inv(a); }
  bool is_identity(const Elem& a) const { return a.is_identity(); }
  bool in_h(const Elem& a) const { return fam->in_h(a); }
  int side_of(const Elem& a) const { return fam->side_of(a); }
  std::pair<std::optional<int>, Elem> coset_decompose(const Elem& a) const {
    return fam->coset_decompose(a);
  }
  Elem rep(int side, int index) const { return fam->rep(side, index); }
  std::vector<int> rep_ids(int side) const { return fam->nontrivial_rep_ids(side); }
};

struct HnnOracle {
  using Elem = HnnPortrait;

  const HnnFamily* fam = nullptr;

  Elem identity() const { return fam->identity(); }
  Elem mul(const Elem& a, const Elem& b) const { return fam->mul(a, b); }
  Elem inv(const Elem& a) const { return fam->inv(a); }
  bool is_identity(const Elem& a) const { return a.is_identity(); }
  bool in_h_eps(const Elem& a, int eps) const { return fam->in_h_eps(a, eps); }
  std::pair<int, Elem> coset_decompose_eps(const Elem& a, int eps) const {
    return fam->coset_decompose_eps(a, eps);
  }
  Elem rep_eps(int eps, int index) const { return fam->rep_eps(eps, index); }
  std::vector<int> rep_ids(int eps) const { return fam->rep_ids(eps); }
  Elem conjugate_by_tau(const Elem& a, int eps) const { return fam->conjugate_by_tau(a, eps); }
};

}  // namespace bsl
