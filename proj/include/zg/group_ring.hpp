#ifndef ZG_GROUP_RING_HPP
#define ZG_GROUP_RING_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zg/perm_group.hpp"

namespace zg {

// An element of ZG: a formal integer combination of group elements, stored
// sparsely with no zero coefficients and sorted-by-index iteration order.
// Elements are immutable values; all operations are pure.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(const FiniteGroup& G) : group_(&G) {}

  static GroupRingElement zero(const FiniteGroup& G) { return GroupRingElement(G); }

  static GroupRingElement one(const FiniteGroup& G) {
    return monomial(G, G.identity(), 1);
  }

  static GroupRingElement monomial(const FiniteGroup& G, int g, mpz_class c) {
    GroupRingElement e(G);
    if (c != 0) e.coeffs_.emplace(g, std::move(c));
    return e;
  }

  const FiniteGroup& group() const {
    if (!group_) throw precondition_error("uninitialized group ring element");
    return *group_;
  }
  const std::map<int, mpz_class>& coeffs() const { return coeffs_; }
  bool isZero() const { return coeffs_.empty(); }
  int supportSize() const { return static_cast<int>(coeffs_.size()); }

  mpz_class coeff(int g) const {
    auto it = coeffs_.find(g);
    return it == coeffs_.end() ? mpz_class(0) : it->second;
  }

  // The trace map: the coefficient of the identity element.
  mpz_class trace() const { return coeff(0); }

  bool operator==(const GroupRingElement& rhs) const {
    return group_ == rhs.group_ && coeffs_ == rhs.coeffs_;
  }
  bool operator!=(const GroupRingElement& rhs) const { return !(*this == rhs); }

  GroupRingElement operator+(const GroupRingElement& rhs) const {
    requireSameGroup(rhs);
    GroupRingElement r(*group_);
    r.coeffs_ = coeffs_;
    for (const auto& [g, c] : rhs.coeffs_) {
      auto [it, inserted] = r.coeffs_.emplace(g, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) r.coeffs_.erase(it);
      }
    }
    return r;
  }

  GroupRingElement operator-() const {
    GroupRingElement r(*group_);
    for (const auto& [g, c] : coeffs_) r.coeffs_.emplace(g, -c);
    return r;
  }

  GroupRingElement operator-(const GroupRingElement& rhs) const { return *this + (-rhs); }

  GroupRingElement operator*(const GroupRingElement& rhs) const {
    requireSameGroup(rhs);
    const FiniteGroup& G = *group_;
    GroupRingElement r(G);
    for (const auto& [g, cg] : coeffs_) {
      for (const auto& [h, ch] : rhs.coeffs_) {
        int k = G.mult(g, h);
        auto [it, inserted] = r.coeffs_.emplace(k, cg * ch);
        if (!inserted) it->second += cg * ch;
      }
    }
    r.dropZeros();
    return r;
  }

  GroupRingElement scale(const mpz_class& n) const {
    GroupRingElement r(*group_);
    if (n == 0) return r;
    for (const auto& [g, c] : coeffs_) r.coeffs_.emplace(g, n * c);
    return r;
  }

  GroupRingElement pow(unsigned long e) const {
    GroupRingElement acc = one(group());
    GroupRingElement base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  // a is nilpotent iff a^(2^ceil(log2 |G|)) = 0: the minimal polynomial has
  // degree <= |G|, so repeated squaring is an exact certificate.
  bool isNilpotent() const {
    if (coeffs_.empty()) return true;
    int n = group().order();
    GroupRingElement a = *this;
    for (int pw = 1; pw < 2 * n; pw *= 2) {
      a = a * a;
      if (a.isZero()) return true;
    }
    return false;
  }

  // Textual element format: list of [coefficient, element-word] with words in
  // cycle notation, e.g. [[1,"()"],[-1,"(1,2)"]]. Round-trips exactly.
  std::string toText() const {
    std::string out = "[";
    bool first = true;
    for (const auto& [g, c] : coeffs_) {
      if (!first) out += ',';
      out += "[" + c.get_str() + ",\"" + group().element(g).toCycleString() + "\"]";
      first = false;
    }
    return out + "]";
  }

  static GroupRingElement fromText(const FiniteGroup& G, const std::string& text) {
    GroupRingElement r(G);
    size_t pos = 0;
    auto skip = [&]() { while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos; };
    auto expect = [&](char c) {
      skip();
      if (pos >= text.size() || text[pos] != c)
        throw parse_error("expected '" + std::string(1, c) + "' in element text");
      ++pos;
    };
    expect('[');
    skip();
    if (pos < text.size() && text[pos] == ']') { ++pos; return r; }
    while (true) {
      expect('[');
      skip();
      size_t start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      if (pos == start) throw parse_error("expected coefficient in element text");
      mpz_class c(text.substr(start, pos - start));
      expect(',');
      expect('"');
      size_t wordStart = pos;
      while (pos < text.size() && text[pos] != '"') ++pos;
      std::string word = text.substr(wordStart, pos - wordStart);
      expect('"');
      expect(']');
      int g = G.parseElement(word);
      if (c != 0) {
        auto [it, inserted] = r.coeffs_.emplace(g, c);
        if (!inserted) it->second += c;
      }
      skip();
      if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
      expect(']');
      break;
    }
    r.dropZeros();
    return r;
  }

 private:
  void requireSameGroup(const GroupRingElement& rhs) const {
    if (group_ != rhs.group_) throw precondition_error("group mismatch");
  }
  void dropZeros() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
      it = (it->second == 0) ? coeffs_.erase(it) : std::next(it);
  }

  const FiniteGroup* group_ = nullptr;
  std::map<int, mpz_class> coeffs_;
};

// \bar H: the sum of all members of H with coefficient 1.
inline GroupRingElement subgroupSum(const Subgroup& H) {
  GroupRingElement r(*H.parent);
  GroupRingElement acc = GroupRingElement::zero(*H.parent);
  for (int g : H.members) acc = acc + GroupRingElement::monomial(*H.parent, g, 1);
  return acc;
}

struct CosetProduct {
  int intersection_size = 0;       // |H ∩ xKx^{-1}|
  std::vector<int> coset_support;  // HxK, sorted element indices
};

// \bar H x \bar K = |H ∩ xKx^{-1}| · \bar{HxK}
inline CosetProduct cosetProduct(const Subgroup& H, int x, const Subgroup& K) {
  if (H.parent != K.parent) throw precondition_error("group mismatch");
  const FiniteGroup& G = *H.parent;
  CosetProduct r;
  Subgroup xKxinv = conjugateSubgroup(K, G.inverse(x));  // (x^{-1})^{-1} K x^{-1} = x K x^{-1}
  for (int h : H.members)
    if (xKxinv.contains(h)) ++r.intersection_size;
  std::set<int> support;
  for (int h : H.members)
    for (int k : K.members) support.insert(G.mult(G.mult(h, x), k));
  r.coset_support.assign(support.begin(), support.end());
  return r;
}

}  // namespace zg

#endif  // ZG_GROUP_RING_HPP
