#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bsl/perm.hpp"

namespace bsl {

// Abelian quotient G/[G,G] as an explicit multiplication table together with
// the projection from group elements to coset ids. Id 0 is the identity coset.
struct AbelQuotient {
  int order = 1;
  std::vector<std::vector<int>> table;  // coset id x coset id -> coset id
  std::vector<int> inverse_table;      // coset id -> coset id
  std::map<Perm, int> projection;      // group element -> coset id

  int mul(int a, int b) const { return table[a][b]; }
  int inverse(int a) const { return inverse_table[a]; }
  int project(const Perm& g) const;
};

// Finite permutation group on a pointed domain {0..n-1}, fully materialized.
// The element list is in BFS-from-identity order (right multiplication by
// generators in the given order); transversals and quotient reps key off it.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(int domain_size, int basepoint, std::vector<Perm> generators, std::string name = "");

  static constexpr std::size_t kOrderCap = 10000;

  int degree() const { return domain_size_; }
  int basepoint() const { return basepoint_; }
  const std::string& name() const { return name_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<Perm>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const Perm& g) const;

  PermGroup stabilizer(int point) const;
  std::vector<int> orbit(int point) const;
  bool is_transitive() const;
  bool is_2transitive() const;
  // True iff the closure of all point stabilizers is the whole group. The
  // Sym(2) escape hatch of the structure criteria is reported by is_sym2.
  bool generated_by_stabilizers() const;
  bool is_sym2() const;

  // point -> rep with rep(base) = point; rep for base itself is the identity.
  // Reps are first-found in element enumeration order.
  std::map<int, Perm> transversal(int base) const;

  AbelQuotient abelianization() const;

 private:
  int domain_size_ = 0;
  int basepoint_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::string name_;
};

}  // namespace bsl
