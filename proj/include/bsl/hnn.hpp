#pragma once

#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "bsl/perm.hpp"
#include "bsl/perm_group.hpp"

namespace bsl {

// Element of Γ = Σ_{-1} · Σ_1 acting on the disjoint union I_{-1} ⊔ I_1,
// stored as the pair of side components so that the commutation of the two
// factors is structural.
struct GammaElem {
  Perm sm;  // Σ_{-1} component
  Perm sp;  // Σ_1 component

  bool is_identity() const { return sm.is_identity() && sp.is_identity(); }
  int act(int side, int i) const { return side < 0 ? sm(i) : sp(i); }
  bool fixes_basepoint(int eps) const { return eps < 0 ? sm.fixes(0) : sp.fixes(0); }
  GammaElem operator*(const GammaElem& o) const { return {sm * o.sm, sp * o.sp}; }
  GammaElem inverse() const { return {sm.inverse(), sp.inverse()}; }

  friend bool operator==(const GammaElem&, const GammaElem&) = default;
  friend auto operator<=>(const GammaElem&, const GammaElem&) = default;
};

// One step (i, ε) of a generator path: the child has context sign ε and the
// index i lives in I_{-ε}.
struct HnnStep {
  int eps = 1;
  int index = 0;

  friend bool operator==(const HnnStep&, const HnnStep&) = default;
  friend auto operator<=>(const HnnStep&, const HnnStep&) = default;
};

// Portrait for an element of the HNN base group G. The root carries a Γ
// label; a node of context ε carries a label in Γ_ε. A child at step (i, ε')
// under context ε must satisfy i ∈ I'_{-ε'} whenever ε·ε' = -1, mirroring
// the path condition on the generators of the base group.
struct HnnPortrait {
  int ctx = 0;  // -1 / +1 context sign, 0 at the root
  GammaElem label;
  std::vector<std::pair<HnnStep, HnnPortrait>> children;  // sorted, values never identity

  bool is_identity() const { return label.is_identity() && children.empty(); }
  const HnnPortrait* child(const HnnStep& s) const;
  int depth() const;

  friend bool operator==(const HnnPortrait&, const HnnPortrait&) = default;
  friend auto operator<=>(const HnnPortrait&, const HnnPortrait&) = default;
};

class HnnFamily {
 public:
  HnnFamily(PermGroup sigma_m, PermGroup sigma_p);

  const PermGroup& sigma(int eps) const { return eps < 0 ? sigma_m_ : sigma_p_; }
  const PermGroup& sigma_stabilizer(int eps) const { return eps < 0 ? stab_m_ : stab_p_; }
  int domain_size(int eps) const { return sigma(eps).degree(); }
  std::vector<int> rep_ids(int eps) const;  // all of I_eps, basepoint (=0, identity rep) first

  GammaElem gamma_identity() const;
  GammaElem gamma_from_sigma(int eps, const Perm& s) const;  // embed a Σ_eps element
  bool in_gamma(const GammaElem& g) const;
  bool in_gamma_eps(const GammaElem& g, int eps) const;

  HnnPortrait identity() const;
  HnnPortrait gen_top(const GammaElem& sigma) const;
  HnnPortrait gen_path(const std::vector<HnnStep>& path, const GammaElem& sigma) const;
  HnnPortrait rep_eps(int eps, int index) const;  // λ_eps^i = h(μ_eps^i)

  HnnPortrait mul(const HnnPortrait& a, const HnnPortrait& b) const;
  HnnPortrait inv(const HnnPortrait& a) const;
  HnnPortrait conj(const HnnPortrait& a, const HnnPortrait& b) const;  // a b a^{-1}

  bool in_h_eps(const HnnPortrait& g, int eps) const;
  // g = λ_eps^i · h with h in H_eps; rep id 0 means the identity rep.
  std::pair<int, HnnPortrait> coset_decompose_eps(const HnnPortrait& g, int eps) const;

  // τ^eps g τ^{-eps}; requires g in H_eps, otherwise a Britton pinch error.
  HnnPortrait conjugate_by_tau(const HnnPortrait& g, int eps) const;

  bool k_eps_member(const HnnPortrait& g, int eps) const;
  bool lambda_bar_member(const HnnPortrait& g, int eps) const;

 private:
  void validate_step(int parent_ctx, const HnnStep& s) const;
  HnnPortrait mul_node(const HnnPortrait& a, const HnnPortrait& b) const;
  HnnPortrait inv_node(const HnnPortrait& a) const;

  PermGroup sigma_m_, sigma_p_;
  PermGroup stab_m_, stab_p_;
  std::map<int, Perm> trans_m_, trans_p_;
};

struct HnnCstarReport {
  bool unique_trace = true;
  bool cstar_simple = false;
  bool quasi_kernel_amenable = true;
  bool structure_hypotheses = false;
};

HnnCstarReport cstar_report_hnn(const HnnFamily& fam, bool sigma_m_nonamenable = false,
                                bool sigma_p_nonamenable = false);

}  // namespace bsl
