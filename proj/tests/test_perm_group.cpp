#include <catch2/catch_amalgamated.hpp>

#include "zg/perm_group.hpp"

using namespace zg;

TEST_CASE("group construction from family specs") {
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  CHECK(S3.order() == 6);

  FiniteGroup A5 = FiniteGroup::fromSpec("A5");
  CHECK(A5.order() == 60);
  int a = A5.parseElement("(1,2)(3,4)");
  int b = A5.parseElement("(1,3,5)");
  CHECK(A5.elementOrder(a) == 2);
  CHECK(A5.elementOrder(b) == 3);
  // mult composes left-to-right: mult(a, b) applies a first.
  int ba = A5.mult(a, b);
  CHECK(A5.elementOrder(ba) == 5);
  CHECK(A5.element(ba).toCycleString() == "(1,2,3,4,5)");

  FiniteGroup D12 = FiniteGroup::fromSpec("D12");
  CHECK(D12.order() == 24);

  FiniteGroup C7 = FiniteGroup::fromSpec("C7");
  CHECK(C7.order() == 7);
}

TEST_CASE("group construction from explicit permutations") {
  FiniteGroup G = FiniteGroup::fromSpec("perm:4:(1,2)(3,4);(1,3)(2,4)");
  CHECK(G.order() == 4);  // Klein four-group
  for (int g = 0; g < G.order(); ++g) CHECK(G.mult(g, g) == G.identity());
}

TEST_CASE("bad specs are rejected") {
  CHECK_THROWS_AS(FiniteGroup::fromSpec("Q8"), parse_error);
  CHECK_THROWS_AS(FiniteGroup::fromSpec("perm:3:(1,5)"), parse_error);
  CHECK_THROWS_AS(FiniteGroup::fromSpec("S6", 100), precondition_error);  // order cap
}

TEST_CASE("element orders") {
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  CHECK(S3.elementOrder(S3.identity()) == 1);
  CHECK(S3.elementOrder(S3.parseElement("(1,2)")) == 2);
  CHECK(S3.elementOrder(S3.parseElement("(1,2,3)")) == 3);
  FiniteGroup A5 = FiniteGroup::fromSpec("A5");
  CHECK(A5.elementOrder(A5.parseElement("(1,2,3,4,5)")) == 5);
}

TEST_CASE("generated subgroups") {
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  int sigma = S3.parseElement("(1,2,3)");
  int tau = S3.parseElement("(1,2)");

  Subgroup trivial = S3.subgroupGenerated({});
  CHECK(trivial.order() == 1);
  CHECK(trivial.contains(S3.identity()));

  Subgroup st = S3.cyclicSubgroup(S3.mult(sigma, tau));
  CHECK(st.order() == 2);

  Subgroup s = S3.cyclicSubgroup(sigma);
  CHECK(s.order() == 3);
  CHECK(s.contains(S3.mult(sigma, sigma)));

  // Closure of the subgroup under multiplication.
  for (int g : s.members)
    for (int h : s.members) CHECK(s.contains(S3.mult(g, h)));
}

TEST_CASE("conjugation") {
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  int sigma = S3.parseElement("(1,2,3)");
  int tau = S3.parseElement("(1,2)");
  for (int h = 0; h < S3.order(); ++h) {
    CHECK(S3.conjugate(S3.identity(), h) == h);
    CHECK(S3.conjugate(h, S3.identity()) == S3.identity());
  }
  // tau sigma tau = sigma^2
  CHECK(S3.conjugate(tau, sigma) == S3.mult(sigma, sigma));
}

TEST_CASE("Lagrange and inverses hold in every test group") {
  for (const char* spec : {"S3", "S4", "A4", "D6", "C12"}) {
    FiniteGroup G = FiniteGroup::fromSpec(spec);
    for (int g = 0; g < G.order(); ++g) {
      CHECK(G.mult(g, G.inverse(g)) == G.identity());
      CHECK(G.mult(G.inverse(g), g) == G.identity());
      CHECK(G.order() % G.elementOrder(g) == 0);
    }
  }
}

TEST_CASE("construction is deterministic") {
  FiniteGroup G1 = FiniteGroup::fromSpec("S4");
  FiniteGroup G2 = FiniteGroup::fromSpec("S4");
  REQUIRE(G1.order() == G2.order());
  for (int g = 0; g < G1.order(); ++g) {
    CHECK(G1.element(g).toCycleString() == G2.element(g).toCycleString());
    for (int h = 0; h < G1.order(); ++h) CHECK(G1.mult(g, h) == G2.mult(g, h));
  }
}

TEST_CASE("cycle string round-trips") {
  FiniteGroup S4 = FiniteGroup::fromSpec("S4");
  for (int g = 0; g < S4.order(); ++g)
    CHECK(S4.parseElement(S4.element(g).toCycleString()) == g);
  CHECK(S4.element(S4.identity()).toCycleString() == "()");
}
