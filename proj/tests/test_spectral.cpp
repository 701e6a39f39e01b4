#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "zg/spectral.hpp"
#include "zg/units.hpp"

using namespace zg;

namespace {
GroupRingElement randomElement(const FiniteGroup& G, std::mt19937& rng, int terms = 3) {
  std::uniform_int_distribution<int> pick(0, G.order() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  GroupRingElement a = GroupRingElement::zero(G);
  for (int i = 0; i < terms; ++i)
    a = a + GroupRingElement::monomial(G, pick(rng), coeff(rng));
  return a;
}

// The S3 witness pair product: spectrum {0, 3}.
GroupRingElement s3WitnessProduct(const FiniteGroup& S3) {
  int sigma = S3.parseElement("(1,2,3)");
  int tau = S3.parseElement("(1,2)");
  GroupRingElement a =
      bicyclicUnit(S3, BicyclicKind::Gamma, sigma, tau).element - GroupRingElement::one(S3);
  GroupRingElement b = bicyclicUnit(S3, BicyclicKind::Beta, S3.mult(sigma, sigma),
                                    S3.mult(sigma, tau)).element -
                       GroupRingElement::one(S3);
  return a * b;
}
}  // namespace

TEST_CASE("regular matrices") {
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  IntMatrix I = regularMatrix(GroupRingElement::one(S3));
  for (int i = 0; i < S3.order(); ++i)
    for (int j = 0; j < S3.order(); ++j) CHECK(I.at(i, j) == (i == j ? 1 : 0));

  for (int g = 0; g < S3.order(); ++g) {
    IntMatrix P = regularMatrix(GroupRingElement::monomial(S3, g, 1));
    for (int j = 0; j < S3.order(); ++j) {
      int ones = 0;
      for (int i = 0; i < S3.order(); ++i) {
        CHECK((P.at(i, j) == 0 || P.at(i, j) == 1));
        ones += static_cast<int>(P.at(i, j) == 1);
      }
      CHECK(ones == 1);
    }
  }

  std::mt19937 rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    GroupRingElement a = randomElement(S3, rng);
    CHECK(regularMatrix(a).traceSum() == S3.order() * a.trace());
  }
}

TEST_CASE("regular representation is a ring homomorphism (randomized)") {
  std::mt19937 rng(97);
  for (const char* spec : {"S3", "S4", "D6"}) {
    FiniteGroup G = FiniteGroup::fromSpec(spec);
    for (int trial = 0; trial < 100; ++trial) {
      GroupRingElement a = randomElement(G, rng);
      GroupRingElement b = randomElement(G, rng);
      REQUIRE(regularMatrix(a * b) == regularMatrix(a) * regularMatrix(b));
    }
  }
}

TEST_CASE("minimal polynomials") {
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  CHECK(minimalPolynomial(regularMatrix(GroupRingElement::zero(S3))) == IntPoly{0, 1});

  int sigma = S3.parseElement("(1,2,3)");
  int tau = S3.parseElement("(1,2)");
  GroupRingElement b =
      bicyclicUnit(S3, BicyclicKind::Beta, sigma, tau).element - GroupRingElement::one(S3);
  CHECK(minimalPolynomial(regularMatrix(b)) == IntPoly{0, 0, 1});  // X^2

  // Witness product: min poly X^j (X - 3), j in {1, 2}.
  IntPoly p = minimalPolynomial(regularMatrix(s3WitnessProduct(S3)));
  IntPoly x13 = poly::mul(IntPoly{0, 1}, IntPoly{-3, 1});
  IntPoly x23 = poly::mul(IntPoly{0, 0, 1}, IntPoly{-3, 1});
  CHECK((p == x13 || p == x23));
}

TEST_CASE("minimal polynomial annihilates and is minimal") {
  std::mt19937 rng(12);
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  for (int trial = 0; trial < 40; ++trial) {
    GroupRingElement a = randomElement(S3, rng);
    IntMatrix A = regularMatrix(a);
    IntPoly p = minimalPolynomial(A);
    REQUIRE(annihilates(p, A));
    REQUIRE(p.back() == 1);
    // For low degrees, no proper monic integer divisor annihilates: check all
    // monic divisors obtained by removing one root over a small search.
    if (poly::degree(p) <= 4 && poly::degree(p) >= 1) {
      for (const mpz_class& r : {mpz_class(0), mpz_class(1), mpz_class(-1), mpz_class(2),
                                 mpz_class(-2), mpz_class(3), mpz_class(-3)}) {
        IntPoly quotient = p;
        if (poly::eval(p, r) == 0) {
          quotient = poly::deflate(p, r);
          REQUIRE_FALSE(annihilates(quotient, A));
        }
      }
    }
  }
}

TEST_CASE("spectrum of a concrete nilpotent product in ZS3") {
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  Spectrum s = spectrum(s3WitnessProduct(S3));
  REQUIRE(s.boxes.empty());
  REQUIRE(s.integer_roots.size() == 2);
  CHECK(s.integer_roots[0].first == 0);
  CHECK(s.integer_roots[1].first == 3);

  // Square-zero nonzero: only the zero eigenvalue.
  int sigma = S3.parseElement("(1,2,3)");
  int tau = S3.parseElement("(1,2)");
  GroupRingElement b =
      bicyclicUnit(S3, BicyclicKind::Beta, sigma, tau).element - GroupRingElement::one(S3);
  Spectrum sb = spectrum(b);
  CHECK(sb.allZero());
  REQUIRE(sb.integer_roots.size() == 1);
  CHECK(sb.integer_roots[0].first == 0);
}

TEST_CASE("non-integer eigenvalues come back as certified boxes") {
  // X^2 - 12 has roots +-2*sqrt(3), inside the modulus-4 circle.
  Spectrum s = spectrumOfPoly(IntPoly{-12, 0, 1});
  CHECK(s.integer_roots.empty());
  REQUIRE(s.boxes.size() == 2);
  for (const RootBox& b : s.boxes) {
    CHECK(b.decided);
    CHECK(b.certifiedInsideRadius4());
    CHECK_FALSE(b.certifiedOutsideRadius4());
  }
  // X^2 - 20: roots +-2*sqrt(5), outside.
  Spectrum t = spectrumOfPoly(IntPoly{-20, 0, 1});
  REQUIRE(t.boxes.size() == 2);
  for (const RootBox& b : t.boxes) CHECK(b.certifiedOutsideRadius4());
}

TEST_CASE("spectrum scaling") {
  FiniteGroup S3 = FiniteGroup::fromSpec("S3");
  Spectrum s = spectrum(s3WitnessProduct(S3));

  Spectrum s1 = scaleSpectrum(s, 1);
  CHECK(s1.min_poly == s.min_poly);
  CHECK(s1.integer_roots == s.integer_roots);

  Spectrum s2 = scaleSpectrum(s, 2);
  REQUIRE(s2.integer_roots.size() == 2);
  CHECK(s2.integer_roots[0].first == 0);
  CHECK(s2.integer_roots[1].first == 6);

  Spectrum box = spectrumOfPoly(IntPoly{-12, 0, 1});
  Spectrum box2 = scaleSpectrum(box, 2);
  REQUIRE(box2.boxes.size() == 2);
  for (size_t i = 0; i < 2; ++i) {
    CHECK(box2.boxes[i].re == box.boxes[i].re * 2);
    CHECK(box2.boxes[i].im == box.boxes[i].im * 2);
    CHECK(box2.boxes[i].radius == box.boxes[i].radius * 2);
    CHECK(box2.boxes[i].certifiedOutsideRadius4());  // 4*sqrt(3) > 4
  }
  CHECK(box2.min_poly == (IntPoly{-48, 0, 1}));  // p(X/2) * 4
}

TEST_CASE("nilpotency triple agreement") {
  std::mt19937 rng(777);
  for (const char* spec : {"S3", "S4", "D6"}) {
    FiniteGroup G = FiniteGroup::fromSpec(spec);
    std::uniform_int_distribution<int> pick(0, G.order() - 1);
    for (int trial = 0; trial < 60; ++trial) {
      GroupRingElement a =
          bicyclicUnit(G, BicyclicKind::Beta, pick(rng), pick(rng)).element -
          GroupRingElement::one(G);
      GroupRingElement b =
          bicyclicUnit(G, BicyclicKind::Gamma, pick(rng), pick(rng)).element -
          GroupRingElement::one(G);
      GroupRingElement ab = a * b;
      bool nil = ab.isNilpotent();
      IntPoly p = minimalPolynomial(regularMatrix(ab));
      bool minPolyIsPowerOfX = true;
      for (size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] != 0) minPolyIsPowerOfX = false;
      Spectrum s = spectrum(ab);
      REQUIRE(nil == minPolyIsPowerOfX);
      REQUIRE(nil == s.allZero());
    }
  }
}
