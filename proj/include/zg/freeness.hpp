#ifndef ZG_FREENESS_HPP
#define ZG_FREENESS_HPP

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "zg/spectral.hpp"
#include "zg/units.hpp"

namespace zg {

// The freeness criterion has two branches; for elements of ZG with G finite,
// ab lives in a finite-dimensional algebra and is always algebraic, so only
// the eigenvalue branch is reachable here. The transcendental branch has no
// finite-group instance and is deliberately not represented.

enum class PointClass { Free, NonFree, Unknown };

struct PointStatus {
  PointClass cls = PointClass::Unknown;
  std::string certificate;  // names the rule that fired, or the blocking reason
};

// A table rule: declares every point inside its box (and, when a polynomial is
// given, additionally matching that minimal polynomial) Free or NonFree.
struct KBRule {
  bool free = false;
  IntPoly min_poly;  // empty = wildcard
  mpq_class re, im, radius;
  std::string source_tag;
};

// The free-point knowledge base. The closed default rules are the two the
// paper itself states: modulus >= 4 is free (Sanov), integers of modulus
// <= 3 are non-free. The table of literature results ships empty.
struct FreePointKB {
  std::vector<KBRule> rules;

  // Line format: (free|nonfree) <c0,c1,...,ck|-> <re>,<im>,<radius> <tag>
  // with rational entries as num or num/den; '-' for a wildcard polynomial.
  // Blank lines and lines starting with '#' are skipped.
  static FreePointKB load(const std::string& path) {
    FreePointKB kb;
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open KB file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ss(line);
      std::string verdict, polyField, boxField, tag;
      if (!(ss >> verdict >> polyField >> boxField >> tag))
        throw parse_error("malformed KB line " + std::to_string(lineno));
      KBRule rule;
      if (verdict == "free") rule.free = true;
      else if (verdict == "nonfree") rule.free = false;
      else throw parse_error("bad verdict on KB line " + std::to_string(lineno));
      if (polyField != "-") {
        std::istringstream ps(polyField);
        std::string tok;
        while (std::getline(ps, tok, ',')) rule.min_poly.emplace_back(tok);
      }
      std::istringstream bs(boxField);
      std::string tok;
      std::vector<mpq_class> vals;
      while (std::getline(bs, tok, ',')) vals.emplace_back(tok);
      if (vals.size() != 3) throw parse_error("bad box on KB line " + std::to_string(lineno));
      rule.re = vals[0];
      rule.im = vals[1];
      rule.radius = vals[2];
      rule.source_tag = tag;
      kb.rules.push_back(std::move(rule));
    }
    return kb;
  }

 private:
  static bool ruleCoversBox(const KBRule& r, const RootBox& b, const IntPoly& pointPoly) {
    if (!r.min_poly.empty() && r.min_poly != pointPoly) return false;
    // Query box contained in the rule box: |centers distance| + b.radius <= r.radius.
    if (b.radius > r.radius) return false;
    mpq_class dre = r.re - b.re, dim = r.im - b.im;
    mpq_class slack = r.radius - b.radius;
    return dre * dre + dim * dim <= slack * slack;
  }

 public:
  PointStatus classifyInteger(const mpz_class& v) const {
    for (const KBRule& r : rules) {
      RootBox point{mpq_class(v), 0, 0, true};
      IntPoly p{-v, 1};
      if (ruleCoversBox(r, point, p))
        return {r.free ? PointClass::Free : PointClass::NonFree, "table:" + r.source_tag};
    }
    if (abs(v) >= 4) return {PointClass::Free, "sanov-exterior"};
    return {PointClass::NonFree, "small-integer"};
  }

  PointStatus classifyBox(const RootBox& b, const IntPoly& pointPoly = {}) const {
    for (const KBRule& r : rules)
      if (ruleCoversBox(r, b, pointPoly))
        return {r.free ? PointClass::Free : PointClass::NonFree, "table:" + r.source_tag};
    if (b.certifiedOutsideRadius4()) return {PointClass::Free, "sanov-exterior"};
    if (!b.decided) return {PointClass::Unknown, "box straddles the modulus-4 circle at available precision"};
    return {PointClass::Unknown, "non-integer point inside the modulus-4 disk: open"};
  }
};

inline PointStatus classifyPoint(const mpz_class& v, const FreePointKB& kb) {
  return kb.classifyInteger(v);
}
inline PointStatus classifyPoint(const RootBox& b, const FreePointKB& kb, const IntPoly& pointPoly = {}) {
  return kb.classifyBox(b, pointPoly);
}

enum class VerdictKind { FreePair, NilpotentGenerated, NotFreeCertified, Unknown };

inline const char* verdictName(VerdictKind v) {
  switch (v) {
    case VerdictKind::FreePair: return "FreePair";
    case VerdictKind::NilpotentGenerated: return "NilpotentGenerated";
    case VerdictKind::NotFreeCertified: return "NotFreeCertified";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<mpz_class> witness_integer;
  std::optional<RootBox> witness_box;
  Spectrum spectrum;
  std::vector<RootBox> undecided;
  std::vector<std::string> rules_fired;
};

namespace detail {
inline GroupRingElement nilpotentPart(const UnitValue& u, const char* side) {
  GroupRingElement a = u.element - GroupRingElement::one(u.element.group());
  if (!(a * a).isZero())
    throw precondition_error(std::string("hypothesis violated: (") + side + " - 1)^2 != 0");
  return a;
}
}  // namespace detail

inline Verdict verdictFromSpectrum(const Spectrum& s, const FreePointKB& kb) {
  Verdict v;
  v.spectrum = s;
  if (s.allZero()) {
    v.kind = VerdictKind::NilpotentGenerated;
    return v;
  }
  bool allNonFree = true;
  IntPoly nonint = s.nonIntegerFactor();
  for (const auto& [root, mult] : s.integer_roots) {
    PointStatus st = kb.classifyInteger(root);
    v.rules_fired.push_back(st.certificate);
    if (st.cls == PointClass::Free && v.kind != VerdictKind::FreePair) {
      v.kind = VerdictKind::FreePair;
      v.witness_integer = root;
    }
    if (st.cls != PointClass::NonFree) allNonFree = false;
  }
  for (const RootBox& b : s.boxes) {
    PointStatus st = kb.classifyBox(b, nonint);
    v.rules_fired.push_back(st.certificate);
    if (st.cls == PointClass::Free && v.kind != VerdictKind::FreePair) {
      v.kind = VerdictKind::FreePair;
      v.witness_box = b;
    }
    if (st.cls != PointClass::NonFree) allNonFree = false;
    if (st.cls == PointClass::Unknown) v.undecided.push_back(b);
  }
  if (v.kind == VerdictKind::FreePair) return v;
  v.kind = allNonFree ? VerdictKind::NotFreeCertified : VerdictKind::Unknown;
  return v;
}

// Eigenvalue criterion for a pair of square-zero-plus-one units.
inline Verdict pairVerdict(const UnitValue& u, const UnitValue& v, const FreePointKB& kb,
                           const SpectralOptions& opts = {}) {
  GroupRingElement a = detail::nilpotentPart(u, "u");
  GroupRingElement b = detail::nilpotentPart(v, "v");
  return verdictFromSpectrum(spectrum(a * b, opts), kb);
}

// |T(ab)| >= 2 T(1) = 2 forces (1+a, 1+b) free.
inline bool salwaCheck(const UnitValue& u, const UnitValue& v) {
  GroupRingElement a = detail::nilpotentPart(u, "u");
  GroupRingElement b = detail::nilpotentPart(v, "v");
  return abs((a * b).trace()) >= 2;
}

struct MinPowerResult {
  std::optional<unsigned long> certified;  // smallest t with a certified Free point at scale t
  unsigned long possible_from = 0;         // smallest t at which freeness is not excluded
  std::vector<RootBox> undecided;          // points blocking exactness (at scale possible_from)
  IntPoly undecided_min_poly;              // their minimal-polynomial factor
};

inline MinPowerResult minPowerFromSpectrum(const Spectrum& s, const FreePointKB& kb) {
  if (s.allZero())
    throw precondition_error("minimal freeing power is undefined for a nilpotent product");
  MinPowerResult r;
  IntPoly nonint = s.nonIntegerFactor();

  // Sanov gives a finite search bound: the largest |point| r > 0 certifies
  // t <= ceil(4 / r) + 1; points with nonpositive certified lower bound never fire.
  unsigned long tCap = 1;
  bool anyPositive = false;
  for (const auto& [root, mult] : s.integer_roots) {
    if (root == 0) continue;
    anyPositive = true;
    mpz_class need = (4 + abs(root) - 1) / abs(root);
    if (need.fits_ulong_p()) tCap = std::max(tCap, need.get_ui());
  }
  for (const RootBox& b : s.boxes) {
    // Lower bound on |point|: |c| - radius, compared exactly via squares.
    mpq_class low2 = b.centerNormSq();
    mpq_class rad2 = b.radius * b.radius;
    if (low2 > rad2) {
      anyPositive = true;
      // smallest t with t(|c| - radius) >= 4, found by scan below; just seed the cap
      double approx = std::sqrt(low2.get_d()) - std::sqrt(rad2.get_d());
      if (approx > 1e-9) tCap = std::max<unsigned long>(tCap, static_cast<unsigned long>(4.0 / approx) + 2);
    }
  }
  if (!anyPositive) tCap = 1;

  for (unsigned long t = 1; t <= tCap + 1; ++t) {
    Spectrum st = scaleSpectrum(s, t);
    bool anyFree = false, allNonFree = true;
    std::vector<RootBox> unknowns;
    for (const auto& [root, mult] : st.integer_roots) {
      PointStatus c = kb.classifyInteger(root);
      if (c.cls == PointClass::Free) anyFree = true;
      if (c.cls != PointClass::NonFree) allNonFree = false;
    }
    for (const RootBox& b : st.boxes) {
      PointStatus c = kb.classifyBox(b, nonint);
      if (c.cls == PointClass::Free) anyFree = true;
      if (c.cls != PointClass::NonFree) allNonFree = false;
      if (c.cls == PointClass::Unknown) unknowns.push_back(b);
    }
    if (r.possible_from == 0 && !allNonFree) {
      r.possible_from = t;
      r.undecided = unknowns;
      r.undecided_min_poly = nonint;
    }
    if (anyFree) {
      r.certified = t;
      break;
    }
  }
  if (r.certified && r.possible_from == *r.certified) {
    r.undecided.clear();  // nothing blocks exactness when the bounds coincide
    r.undecided_min_poly.clear();
  }
  return r;
}

inline MinPowerResult minPower(const UnitValue& u, const UnitValue& v, const FreePointKB& kb,
                               const SpectralOptions& opts = {}) {
  GroupRingElement a = detail::nilpotentPart(u, "u");
  GroupRingElement b = detail::nilpotentPart(v, "v");
  return minPowerFromSpectrum(spectrum(a * b, opts), kb);
}

struct PairRecord {
  std::string u_desc, v_desc;
  unsigned long certified = 0;
  unsigned long possible_from = 0;
  std::vector<RootBox> undecided;
  IntPoly undecided_min_poly;
};

struct InvariantResult {
  std::string group;
  char mode = 'M';
  bool infinite = false;  // no non-nilpotent pair exists: min over empty set
  unsigned long lower_bound = 0, upper_bound = 0;
  std::optional<unsigned long> exact_value;
  std::vector<PairRecord> unresolved;  // pairs whose per-pair bounds differ
  std::optional<PairRecord> witness;   // a pair achieving the upper bound
  long pairs_total = 0, pairs_nonnilpotent = 0;
};

// M(G) (mode 'M'): all ordered pairs of bicyclic units of either type.
// m(G) (mode 'm'): ordered pairs of the same type (beta x beta, gamma x gamma).
// The per-pair minimal powers are aggregated as a max, since the definitions
// require a single exponent working for every non-nilpotent pair.
inline InvariantResult groupInvariant(const FiniteGroup& G, char mode, const FreePointKB& kb,
                                      const SpectralOptions& opts = {}, unsigned jobs = 1,
                                      std::ostream* progress = nullptr) {
  if (mode != 'M' && mode != 'm') throw precondition_error("mode must be 'M' or 'm'");
  BicyclicCensus betas = enumerateBicyclic(G, BicyclicKind::Beta);
  BicyclicCensus gammas = enumerateBicyclic(G, BicyclicKind::Gamma);

  struct Pair { const UnitValue* u; const UnitValue* v; };
  std::vector<Pair> grid;
  auto addGrid = [&grid](const std::vector<UnitValue>& us, const std::vector<UnitValue>& vs) {
    for (const auto& u : us)
      for (const auto& v : vs) grid.push_back({&u, &v});
  };
  if (mode == 'M') {
    addGrid(betas.units, betas.units);
    addGrid(betas.units, gammas.units);
    addGrid(gammas.units, betas.units);
    addGrid(gammas.units, gammas.units);
  } else {
    addGrid(betas.units, betas.units);
    addGrid(gammas.units, gammas.units);
  }

  InvariantResult result;
  result.group = G.name();
  result.mode = mode;
  result.pairs_total = static_cast<long>(grid.size());

  struct Outcome {
    bool nilpotent = true;
    MinPowerResult mp;
  };
  std::vector<Outcome> outcomes(grid.size());
  std::atomic<size_t> nextIndex{0};
  std::atomic<long> done{0};
  // The verdict depends only on the product (u-1)(v-1); distinct pairs share
  // products heavily, so memoize per product element.
  std::map<std::string, MinPowerResult> cache;
  std::mutex cacheMutex;
  auto worker = [&]() {
    while (true) {
      size_t i = nextIndex.fetch_add(1);
      if (i >= grid.size()) break;
      GroupRingElement a = grid[i].u->element - GroupRingElement::one(G);
      GroupRingElement b = grid[i].v->element - GroupRingElement::one(G);
      GroupRingElement ab = a * b;
      if (!ab.isNilpotent()) {
        outcomes[i].nilpotent = false;
        std::string key = ab.toText();
        bool hit = false;
        {
          std::lock_guard<std::mutex> lock(cacheMutex);
          auto it = cache.find(key);
          if (it != cache.end()) {
            outcomes[i].mp = it->second;
            hit = true;
          }
        }
        if (!hit) {
          outcomes[i].mp = minPowerFromSpectrum(spectrum(ab, opts), kb);
          std::lock_guard<std::mutex> lock(cacheMutex);
          cache.emplace(key, outcomes[i].mp);
        }
      }
      long d = done.fetch_add(1) + 1;
      if (progress && d % 2000 == 0)
        (*progress) << "  ... " << d << "/" << grid.size() << " pairs\n" << std::flush;
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Deterministic merge in pair-index order.
  bool any = false;
  for (size_t i = 0; i < grid.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (o.nilpotent) continue;
    ++result.pairs_nonnilpotent;
    any = true;
    unsigned long certified = o.mp.certified.value_or(0);
    if (!o.mp.certified) {
      // No certified power: propagate as an unresolved pair with open upper bound.
      PairRecord rec{grid[i].u->descriptor.describe(G), grid[i].v->descriptor.describe(G),
                     0, o.mp.possible_from, o.mp.undecided, o.mp.undecided_min_poly};
      result.unresolved.push_back(std::move(rec));
      continue;
    }
    if (certified > result.upper_bound) {
      result.upper_bound = certified;
      result.witness = PairRecord{grid[i].u->descriptor.describe(G),
                                  grid[i].v->descriptor.describe(G),
                                  certified, o.mp.possible_from, o.mp.undecided,
                                  o.mp.undecided_min_poly};
    }
    result.lower_bound = std::max(result.lower_bound, o.mp.possible_from);
    if (o.mp.possible_from < certified) {
      PairRecord rec{grid[i].u->descriptor.describe(G), grid[i].v->descriptor.describe(G),
                     certified, o.mp.possible_from, o.mp.undecided, o.mp.undecided_min_poly};
      result.unresolved.push_back(std::move(rec));
    }
  }
  if (!any) {
    result.infinite = true;  // the minimum of the empty set is infinity
    return result;
  }
  if (result.lower_bound == result.upper_bound && result.unresolved.empty())
    result.exact_value = result.upper_bound;
  return result;
}

}  // namespace zg

#endif  // ZG_FREENESS_HPP
