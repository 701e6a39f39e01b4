#ifndef ZG_UNITS_HPP
#define ZG_UNITS_HPP

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "zg/group_ring.hpp"

namespace zg {

enum class BicyclicKind { Beta, Gamma };

inline const char* kindName(BicyclicKind k) { return k == BicyclicKind::Beta ? "beta" : "gamma"; }

struct UnitDescriptor {
  enum class Kind { BicyclicBeta, BicyclicGamma, BassCyclic } kind;
  // Bicyclic parameters
  int x = -1;
  int h = -1;
  std::optional<Subgroup> H;  // defaults to <h>
  // Bass parameters
  unsigned long k = 0, m = 0;

  std::string describe(const FiniteGroup& G) const {
    switch (kind) {
      case Kind::BicyclicBeta:
        return "beta:" + G.element(x).toCycleString() + ":" + G.element(h).toCycleString();
      case Kind::BicyclicGamma:
        return "gamma:" + G.element(x).toCycleString() + ":" + G.element(h).toCycleString();
      case Kind::BassCyclic:
        return "bass:" + G.element(x).toCycleString() + ":" + std::to_string(k) + ":" + std::to_string(m);
    }
    return "";
  }
};

struct UnitValue {
  UnitDescriptor descriptor;
  GroupRingElement element;
};

inline unsigned long eulerPhi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// beta_{x,h,H} = 1 + (1-h) x Hbar,  gamma_{x,h,H} = 1 + Hbar x (1-h).
inline UnitValue bicyclicUnit(const FiniteGroup& G, BicyclicKind kind, int x, int h,
                              std::optional<Subgroup> H = std::nullopt) {
  Subgroup Hs = H ? *H : G.cyclicSubgroup(h);
  if (!Hs.contains(h)) throw precondition_error("h is not a member of H");
  GroupRingElement one = GroupRingElement::one(G);
  GroupRingElement oneMinusH = one - GroupRingElement::monomial(G, h, 1);
  GroupRingElement xe = GroupRingElement::monomial(G, x, 1);
  GroupRingElement Hbar = subgroupSum(Hs);
  GroupRingElement nil = (kind == BicyclicKind::Beta) ? oneMinusH * xe * Hbar : Hbar * xe * oneMinusH;
  UnitValue u;
  u.descriptor.kind = (kind == BicyclicKind::Beta) ? UnitDescriptor::Kind::BicyclicBeta
                                                   : UnitDescriptor::Kind::BicyclicGamma;
  u.descriptor.x = x;
  u.descriptor.h = h;
  u.descriptor.H = std::move(Hs);
  u.element = one + nil;
  return u;
}

// For the default H = <h> this is the condition x^{-1} h x in <h>; for a
// general H the expanded element is compared against 1.
inline bool isTrivialBicyclic(const FiniteGroup& G, int x, int h,
                              std::optional<Subgroup> H = std::nullopt) {
  if (!H) {
    Subgroup hGen = G.cyclicSubgroup(h);
    return hGen.contains(G.conjugate(x, h));
  }
  if (!H->contains(h)) throw precondition_error("h is not a member of H");
  return bicyclicUnit(G, BicyclicKind::Beta, x, h, H).element == GroupRingElement::one(G);
}

struct BicyclicCensus {
  std::vector<UnitValue> units;         // nontrivial, deduplicated, deterministic order
  long parameter_count_nontrivial = 0;  // (x,h) pairs yielding a nontrivial unit
  long distinct_nontrivial = 0;
  long distinct_including_trivial = 0;  // counts the identity unit as well
};

// Full (x,h) sweep with default H = <h>; deduplication is by expanded
// group-ring equality. Order of the returned list: first occurrence in the
// (x-major, h-minor) index scan.
inline BicyclicCensus enumerateBicyclic(const FiniteGroup& G, BicyclicKind kind) {
  BicyclicCensus census;
  GroupRingElement one = GroupRingElement::one(G);
  std::set<std::vector<std::pair<int, std::string>>> seen;
  bool sawTrivial = false;
  for (int x = 0; x < G.order(); ++x) {
    for (int h = 0; h < G.order(); ++h) {
      if (isTrivialBicyclic(G, x, h)) { sawTrivial = true; continue; }
      ++census.parameter_count_nontrivial;
      UnitValue u = bicyclicUnit(G, kind, x, h);
      std::vector<std::pair<int, std::string>> key;
      for (const auto& [g, c] : u.element.coeffs()) key.emplace_back(g, c.get_str());
      if (seen.insert(std::move(key)).second) census.units.push_back(std::move(u));
    }
  }
  census.distinct_nontrivial = static_cast<long>(census.units.size());
  census.distinct_including_trivial = census.distinct_nontrivial + (sawTrivial ? 1 : 0);
  return census;
}

// u_{k,m}(x) = (1+x+...+x^{k-1})^m + ((1-k^m)/d)(1+x+...+x^{d-1}),
// d the order of x; requires gcd(k,d) = 1 and phi(d) | m. k is reduced mod d.
inline UnitValue bassUnit(const FiniteGroup& G, int x, unsigned long k, unsigned long m) {
  unsigned long d = static_cast<unsigned long>(G.elementOrder(x));
  if (k == 0)
    throw precondition_error("gcd(k, d) != 1 (k = 0, d = " + std::to_string(d) + ")");
  k = (k - 1) % d + 1;  // representative in [1, d], so d = 1 keeps k = 1
  if (std::gcd(k, d) != 1)
    throw precondition_error("gcd(k, d) != 1 (k = " + std::to_string(k) + ", d = " + std::to_string(d) + ")");
  if (m == 0 || m % eulerPhi(d) != 0)
    throw precondition_error("phi(d) does not divide m (d = " + std::to_string(d) + ", m = " + std::to_string(m) + ")");

  GroupRingElement partial = GroupRingElement::zero(G);
  int cur = G.identity();
  for (unsigned long i = 0; i < k; ++i) {
    partial = partial + GroupRingElement::monomial(G, cur, 1);
    cur = G.mult(cur, x);
  }
  GroupRingElement full = GroupRingElement::zero(G);
  cur = G.identity();
  for (unsigned long i = 0; i < d; ++i) {
    full = full + GroupRingElement::monomial(G, cur, 1);
    cur = G.mult(cur, x);
  }
  mpz_class km;
  mpz_ui_pow_ui(km.get_mpz_t(), k, m);
  mpz_class corr = (1 - km) / d;  // exact: k^m = 1 mod d since phi(d) | m

  UnitValue u;
  u.descriptor.kind = UnitDescriptor::Kind::BassCyclic;
  u.descriptor.x = x;
  u.descriptor.k = k;
  u.descriptor.m = m;
  u.element = partial.pow(m) + full.scale(corr);
  return u;
}

enum class ManyFPVariant { BetaGamma, BetaBeta };

// The guaranteed-free constructions: requires H <= K, h in H, k in K,
// x^{-1} h x not in K, and the variant-specific condition. Every violated
// precondition is named in the error.
inline std::pair<UnitValue, UnitValue> manyfpPair(const FiniteGroup& G, ManyFPVariant variant,
                                                  int x, int h, const Subgroup& H, int k,
                                                  const Subgroup& K) {
  if (!isSubgroupOf(H, K)) throw precondition_error("H is not a subgroup of K");
  if (!H.contains(h)) throw precondition_error("h is not a member of H");
  if (!K.contains(k)) throw precondition_error("k is not a member of K");
  if (K.contains(G.conjugate(x, h))) throw precondition_error("x^{-1} h x lies in K");
  int xinv = G.inverse(x);
  if (variant == ManyFPVariant::BetaGamma) {
    if (K.contains(G.conjugate(x, k))) throw precondition_error("x^{-1} k x lies in K");
    return {bicyclicUnit(G, BicyclicKind::Beta, x, h, H),
            bicyclicUnit(G, BicyclicKind::Gamma, xinv, k, K)};
  }
  int xkxinv = G.conjugate(xinv, k);  // x k x^{-1}
  if (K.contains(xkxinv)) throw precondition_error("x k x^{-1} lies in K");
  Subgroup xKxinv = conjugateSubgroup(K, xinv);
  return {bicyclicUnit(G, BicyclicKind::Beta, x, h, H),
          bicyclicUnit(G, BicyclicKind::Beta, xinv, xkxinv, xKxinv)};
}

}  // namespace zg

#endif  // ZG_UNITS_HPP
