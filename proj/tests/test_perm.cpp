#include "doctest.h"

#include "bsl/error.hpp"
#include "bsl/perm.hpp"

using bsl::Perm;

TEST_CASE("cycle parsing and printing") {
  Perm id = Perm::from_cycles("()", 3);
  CHECK(id.is_identity());
  CHECK(id.cycles() == "()");

  Perm c = Perm::from_cycles("(0 1 2)", 3);
  CHECK(c(0) == 1);
  CHECK(c(1) == 2);
  CHECK(c(2) == 0);
  CHECK(c.cycles() == "(0 1 2)");

  Perm d = Perm::from_cycles("(0 1)(2 3)", 4);
  CHECK(d(0) == 1);
  CHECK(d(2) == 3);
  CHECK(d.cycles() == "(0 1)(2 3)");

  CHECK(Perm::from_cycles(d.cycles(), 4) == d);

  CHECK_THROWS_AS(Perm::from_cycles("(0 5)", 3), bsl::Error);
  CHECK_THROWS_AS(Perm::from_cycles("(0 1)(1 2)", 3), bsl::Error);
  CHECK_THROWS_AS(Perm::from_cycles("", 3), bsl::Error);
}

TEST_CASE("composition acts on the left") {
  Perm a = Perm::from_cycles("(0 1)", 3);
  Perm b = Perm::from_cycles("(1 2)", 3);
  Perm ab = a * b;
  // (a*b)(x) = a(b(x))
  CHECK(ab(1) == a(b(1)));
  CHECK(ab(1) == a(2));
  CHECK((a * a.inverse()).is_identity());
  CHECK((ab.inverse() * ab).is_identity());
}

TEST_CASE("associativity over all of Sym(3)") {
  std::vector<Perm> all;
  std::vector<int> img{0, 1, 2};
  do {
    all.push_back(Perm(img));
  } while (std::next_permutation(img.begin(), img.end()));
  for (const Perm& a : all)
    for (const Perm& b : all)
      for (const Perm& c : all) CHECK((a * b) * c == a * (b * c));
}
