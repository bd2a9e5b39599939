#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bsl/perm.hpp"
#include "bsl/perm_group.hpp"

namespace bsl {

// Sparse wreath-recursion portrait for an element of G_j. The top permutation
// lives in Γ_j; children sit at slots of I_j and are portraits of the other
// side whose tops fix that side's basepoint (Q-portraits). Identity children
// are pruned and slots are kept sorted, so structural equality is group
// equality once the family's relation suite certifies the embedding.
struct Portrait {
  int side = 0;
  Perm top;
  std::vector<std::pair<int, Portrait>> children;  // sorted by slot, values never identity

  bool is_identity() const { return top.is_identity() && children.empty(); }
  const Portrait* child(int slot) const;
  int depth() const;

  friend bool operator==(const Portrait&, const Portrait&) = default;
  friend auto operator<=>(const Portrait&, const Portrait&) = default;
};

// The two-parameter family of amalgams built from transitive permutation
// groups Γ_0, Γ_1 whose basepoint stabilizers are not both trivial.
class AmalgamFamily {
 public:
  AmalgamFamily(PermGroup gamma0, PermGroup gamma1);

  const PermGroup& gamma(int j) const { return j == 0 ? gamma0_ : gamma1_; }
  const PermGroup& point_stabilizer(int j) const { return j == 0 ? stab0_ : stab1_; }
  const std::map<int, Perm>& transversal(int j) const { return j == 0 ? trans0_ : trans1_; }
  int domain_size(int j) const { return gamma(j).degree(); }
  int basepoint(int j) const { return gamma(j).basepoint(); }
  std::vector<int> nontrivial_rep_ids(int j) const;  // I'_j in increasing order

  // Canonical representation: elements of H are carried on side 0.
  Portrait identity() const;
  Portrait gen_g(int j, const Perm& sigma) const;
  Portrait gen_h(int j, const std::vector<int>& path, const Perm& sigma) const;
  Portrait rep(int j, int index) const;  // γ_j^i = g_j(τ_j^i)

  Portrait mul(const Portrait& a, const Portrait& b) const;
  Portrait inv(const Portrait& a) const;
  Portrait conj(const Portrait& a, const Portrait& b) const;  // a b a^{-1}

  bool in_h(const Portrait& g) const;
  int side_of(const Portrait& g) const { return g.side; }
  Portrait to_side(const Portrait& g, int side) const;  // requires in_h when sides differ

  // g = γ_j^i · h with h in H; repIndex absent when g is in H already.
  std::pair<std::optional<int>, Portrait> coset_decompose(const Portrait& g) const;

  // h = q0 · q1 with q_j the side-j factor; exact by construction.
  std::pair<Portrait, Portrait> h_factor(const Portrait& h) const;

  bool quasi_kernel_member(const Portrait& h, int j) const;

  // Independent oracle: conjugate h by every length-n transversal word
  // starting on side j and test membership in H.
  bool c_jn_member(const Portrait& h, int j, int n, int n_cap = 3) const;

 private:
  Portrait mul_same_side(const Portrait& a, const Portrait& b) const;
  Portrait inv_raw(const Portrait& a) const;
  Portrait canonical(Portrait g) const;

  PermGroup gamma0_, gamma1_;
  PermGroup stab0_, stab1_;
  std::map<int, Perm> trans0_, trans1_;
};

// Criterion report: pure flag logic, no amenability analysis is performed.
// Finite stabilizers are amenable; a true flag marks an injected
// non-amenable Γ'_j.
struct AmalgamCstarReport {
  bool unique_trace = true;
  bool cstar_simple = false;
  bool quasi_kernel_amenable = true;
  bool structure_hypotheses = false;  // 2-transitivity + stabilizer generation (or Sym(2))
};

AmalgamCstarReport cstar_report(const AmalgamFamily& fam, bool gamma0_stab_nonamenable = false,
                                bool gamma1_stab_nonamenable = false);

}  // namespace bsl
