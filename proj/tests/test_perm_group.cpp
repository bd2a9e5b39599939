#include <algorithm>
#include <set>

#include "doctest.h"

#include "bsl/error.hpp"
#include "bsl/perm_group.hpp"

using bsl::Perm;
using bsl::PermGroup;

namespace {

PermGroup sym3() {
  return PermGroup(3, 0, {Perm::from_cycles("(0 1 2)", 3), Perm::from_cycles("(0 1)", 3)}, "sym3");
}

PermGroup sym2() { return PermGroup(2, 0, {Perm::from_cycles("(0 1)", 2)}, "sym2"); }

PermGroup cyclic3() { return PermGroup(3, 0, {Perm::from_cycles("(0 1 2)", 3)}, "c3"); }

// brute-force subgroup closure of a set, independent of PermGroup internals
std::set<Perm> brute_closure(int n, const std::vector<Perm>& gens) {
  std::set<Perm> out{Perm(n)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> snapshot(out.begin(), out.end());
    for (const Perm& a : snapshot)
      for (const Perm& g : gens)
        if (out.insert(a * g).second) grew = true;
  }
  return out;
}

}  // namespace

TEST_CASE("closure materializes the expected orders") {
  CHECK(sym3().order() == 6);
  CHECK(PermGroup(3, 0, {}).order() == 1);
  CHECK(PermGroup(4, 0, {Perm::from_cycles("(0 1)(2 3)", 4)}).order() == 2);
}

TEST_CASE("stabilizers and orbit-stabilizer") {
  PermGroup g = sym3();
  CHECK(g.stabilizer(0).order() == 2);
  CHECK(PermGroup(3, 0, {}).stabilizer(1).order() == 1);
  CHECK(sym2().stabilizer(0).order() == 1);
  for (const PermGroup& grp : {sym3(), sym2(), cyclic3()}) {
    std::size_t orbit = grp.orbit(grp.basepoint()).size();
    CHECK(orbit * grp.stabilizer(grp.basepoint()).order() == grp.order());
  }
}

TEST_CASE("transitivity flavors") {
  CHECK(sym3().is_transitive());
  CHECK(sym3().is_2transitive());
  CHECK(sym3().generated_by_stabilizers());
  CHECK(sym2().is_transitive());
  CHECK_FALSE(sym2().is_2transitive());
  CHECK_FALSE(sym2().generated_by_stabilizers());
  CHECK(sym2().is_sym2());
  // every stabilizer of C3 is trivial
  PermGroup c3 = cyclic3();
  for (int p = 0; p < 3; ++p) CHECK(c3.stabilizer(p).order() == 1);
  CHECK_FALSE(c3.is_2transitive());
}

TEST_CASE("transversal reps hit their points") {
  PermGroup g = sym3();
  auto trans = g.transversal(0);
  REQUIRE(trans.size() == 3);
  CHECK(trans.at(0).is_identity());
  for (const auto& [pt, rep] : trans) CHECK(rep(0) == pt);

  auto c3t = cyclic3().transversal(0);
  CHECK(c3t.at(0).is_identity());
  CHECK(c3t.at(1) == Perm::from_cycles("(0 1 2)", 3));
  CHECK(c3t.at(2) == Perm::from_cycles("(0 2 1)", 3));

  CHECK(PermGroup(1, 0, {}).transversal(0).at(0).is_identity());
  CHECK_THROWS_AS(PermGroup(3, 0, {Perm::from_cycles("(1 2)", 3)}).transversal(0), bsl::Error);
}

TEST_CASE("abelianization of Sym(3) has order two") {
  // independent oracle: brute-force commutator closure
  PermGroup g = sym3();
  std::vector<Perm> comms;
  for (const Perm& a : g.elements())
    for (const Perm& b : g.elements()) comms.push_back(a * b * a.inverse() * b.inverse());
  std::set<Perm> derived = brute_closure(3, comms);
  CHECK(derived.size() == 3);  // the commutator subgroup is the 3-cycle group
  CHECK(g.order() / derived.size() == 2);

  auto q = g.abelianization();
  CHECK(q.order == 2);
  CHECK(q.project(Perm(3)) == 0);
  CHECK(q.project(Perm::from_cycles("(0 1 2)", 3)) == 0);
  CHECK(q.project(Perm::from_cycles("(0 1)", 3)) != 0);
}

TEST_CASE("abelianization of abelian and tiny groups") {
  PermGroup c3 = cyclic3();
  auto qc3 = c3.abelianization();
  CHECK(qc3.order == 3);
  // projection injective on an abelian group
  std::set<int> ids;
  for (const Perm& g : c3.elements()) ids.insert(qc3.project(g));
  CHECK(ids.size() == 3);

  CHECK(sym2().abelianization().order == 2);
}

TEST_CASE("projection is a homomorphism on groups of order <= 24") {
  std::vector<PermGroup> groups;
  groups.push_back(sym3());
  groups.push_back(cyclic3());
  groups.push_back(sym2());
  groups.push_back(PermGroup(4, 0,
                             {Perm::from_cycles("(0 1 2 3)", 4), Perm::from_cycles("(0 1)", 4)},
                             "sym4"));
  for (const PermGroup& g : groups) {
    REQUIRE(g.order() <= 24);
    auto q = g.abelianization();
    for (const Perm& a : g.elements())
      for (const Perm& b : g.elements()) CHECK(q.project(a * b) == q.mul(q.project(a), q.project(b)));
    for (int x = 0; x < q.order; ++x)
      for (int y = 0; y < q.order; ++y) CHECK(q.mul(x, y) == q.mul(y, x));
  }
}

TEST_CASE("closure cap triggers the enumeration-limit error") {
  // Sym(8) has order 40320 > 10000
  CHECK_THROWS_AS(PermGroup(8, 0,
                            {Perm::from_cycles("(0 1 2 3 4 5 6 7)", 8), Perm::from_cycles("(0 1)", 8)}),
                  bsl::Error);
}
