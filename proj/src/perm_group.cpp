#include "bsl/perm_group.hpp"

#include <algorithm>
#include <set>

#include "bsl/error.hpp"

namespace bsl {

int AbelQuotient::project(const Perm& g) const {
  auto it = projection.find(g);
  if (it == projection.end()) fail(ErrorKind::Domain, "element outside the group of this quotient");
  return it->second;
}

namespace {

// BFS closure from the identity under right multiplication; order is
// deterministic for a fixed generator list.
std::vector<Perm> close_under_products(int n, const std::vector<Perm>& gens, std::size_t cap) {
  std::vector<Perm> elements{Perm(n)};
  std::set<Perm> seen{Perm(n)};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    Perm current = elements[head];
    for (const Perm& g : gens) {
      Perm next = current * g;
      if (seen.insert(next).second) {
        elements.push_back(std::move(next));
        if (elements.size() > cap)
          fail(ErrorKind::Limit, "group closure exceeds cap of " + std::to_string(cap) + " elements");
      }
    }
  }
  return elements;
}

}  // namespace

PermGroup::PermGroup(int domain_size, int basepoint, std::vector<Perm> generators, std::string name)
    : domain_size_(domain_size), basepoint_(basepoint), generators_(std::move(generators)), name_(std::move(name)) {
  if (domain_size_ <= 0) fail(ErrorKind::Domain, "domain size must be positive");
  if (basepoint_ < 0 || basepoint_ >= domain_size_) fail(ErrorKind::Domain, "basepoint outside domain");
  for (const Perm& g : generators_)
    if (g.degree() != domain_size_) fail(ErrorKind::Domain, "generator degree differs from domain size");
  elements_ = close_under_products(domain_size_, generators_, kOrderCap);
}

bool PermGroup::contains(const Perm& g) const {
  return std::find(elements_.begin(), elements_.end(), g) != elements_.end();
}

PermGroup PermGroup::stabilizer(int point) const {
  if (point < 0 || point >= domain_size_) fail(ErrorKind::Domain, "point outside domain");
  std::vector<Perm> fixing;
  for (const Perm& g : elements_)
    if (g.fixes(point)) fixing.push_back(g);
  return PermGroup(domain_size_, basepoint_, fixing, name_.empty() ? "" : name_ + "_stab" + std::to_string(point));
}

std::vector<int> PermGroup::orbit(int point) const {
  std::vector<char> hit(domain_size_, 0);
  std::vector<int> out;
  for (const Perm& g : elements_) {
    int v = g(point);
    if (!hit[v]) {
      hit[v] = 1;
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PermGroup::is_transitive() const { return static_cast<int>(orbit(0).size()) == domain_size_; }

bool PermGroup::is_2transitive() const {
  // two-point domains are excluded: their point stabilizers are trivial
  if (domain_size_ < 3) return false;
  if (!is_transitive()) return false;
  for (int p = 0; p < domain_size_; ++p) {
    PermGroup stab = stabilizer(p);
    // transitive on the remaining points
    std::vector<char> hit(domain_size_, 0);
    int seed = p == 0 ? 1 : 0;
    int count = 0;
    for (const Perm& g : stab.elements()) {
      int v = g(seed);
      if (!hit[v]) {
        hit[v] = 1;
        ++count;
      }
    }
    if (count != domain_size_ - 1) return false;
  }
  return true;
}

bool PermGroup::generated_by_stabilizers() const {
  std::vector<Perm> gens;
  for (int p = 0; p < domain_size_; ++p) {
    for (const Perm& g : elements_)
      if (g.fixes(p) && !g.is_identity()) gens.push_back(g);
  }
  std::vector<Perm> closed = close_under_products(domain_size_, gens, kOrderCap);
  return closed.size() == elements_.size();
}

bool PermGroup::is_sym2() const { return domain_size_ == 2 && order() == 2; }

std::map<int, Perm> PermGroup::transversal(int base) const {
  if (!is_transitive()) fail(ErrorKind::MissingCoset, "transversal requires a transitive group");
  std::map<int, Perm> reps;
  reps[base] = Perm(domain_size_);
  for (const Perm& g : elements_) {
    int v = g(base);
    reps.try_emplace(v, g);  // first in enumeration order wins
  }
  return reps;
}

AbelQuotient PermGroup::abelianization() const {
  // commutator subgroup: normal closure of generator commutators, computed as
  // a fixpoint of (subgroup closure, conjugation by group generators)
  std::set<Perm> nc_gens;
  for (const Perm& a : generators_)
    for (const Perm& b : generators_) nc_gens.insert(a * b * a.inverse() * b.inverse());
  std::set<Perm> derived_set;
  for (;;) {
    std::vector<Perm> closed =
        close_under_products(domain_size_, std::vector<Perm>(nc_gens.begin(), nc_gens.end()), kOrderCap);
    derived_set = std::set<Perm>(closed.begin(), closed.end());
    std::size_t before = nc_gens.size();
    for (const Perm& d : derived_set)
      for (const Perm& g : generators_) nc_gens.insert(g * d * g.inverse());
    if (nc_gens.size() == before) break;
  }

  // cosets in element enumeration order; rep = first element seen in a coset
  AbelQuotient q;
  std::map<Perm, int> coset_of;
  std::vector<Perm> coset_reps;
  for (const Perm& g : elements_) {
    if (coset_of.count(g)) continue;
    int id = static_cast<int>(coset_reps.size());
    for (const Perm& d : derived_set) coset_of[g * d] = id;
    coset_reps.push_back(g);
  }
  q.order = static_cast<int>(coset_reps.size());
  q.projection = std::move(coset_of);
  q.table.assign(q.order, std::vector<int>(q.order, 0));
  q.inverse_table.assign(q.order, 0);
  for (int a = 0; a < q.order; ++a) {
    for (int b = 0; b < q.order; ++b) q.table[a][b] = q.projection.at(coset_reps[a] * coset_reps[b]);
    q.inverse_table[a] = q.projection.at(coset_reps[a].inverse());
  }
  return q;
}

}  // namespace bsl
