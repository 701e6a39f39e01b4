#ifndef ZG_PERM_GROUP_HPP
#define ZG_PERM_GROUP_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace zg {

// Raised when an input value violates a documented precondition. The message
// names the violated condition so the CLI can surface it verbatim.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed textual input (group specs, cycle words, descriptors).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A permutation of {0,...,degree-1}, stored as its image sequence.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
        throw precondition_error("images is not a bijection on {0,...,degree-1}");
      seen[v] = true;
    }
  }

  static Permutation identity(int degree) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  // Left-to-right composition: (p*q) applies p first, then q.
  Permutation operator*(const Permutation& rhs) const {
    if (degree() != rhs.degree()) throw precondition_error("degree mismatch in composition");
    std::vector<int> img(images_.size());
    for (int i = 0; i < degree(); ++i) img[i] = rhs.images_[images_[i]];
    return Permutation(std::move(img));
  }

  Permutation inverse() const {
    std::vector<int> img(images_.size());
    for (int i = 0; i < degree(); ++i) img[images_[i]] = i;
    return Permutation(std::move(img));
  }

  bool isIdentity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  bool operator==(const Permutation& rhs) const { return images_ == rhs.images_; }
  bool operator<(const Permutation& rhs) const { return images_ < rhs.images_; }

  // Cycle notation with 1-based points; identity renders as "()".
  std::string toCycleString() const {
    std::string out;
    std::vector<bool> done(images_.size(), false);
    for (int i = 0; i < degree(); ++i) {
      if (done[i] || images_[i] == i) continue;
      out += '(';
      int j = i;
      bool first = true;
      while (!done[j]) {
        done[j] = true;
        if (!first) out += ',';
        out += std::to_string(j + 1);
        first = false;
        j = images_[j];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  // Parses cycle notation like "(1,2)(3,4)" with 1-based points.
  static Permutation fromCycleString(const std::string& word, int degree) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    size_t pos = 0;
    auto skipSpace = [&]() { while (pos < word.size() && word[pos] == ' ') ++pos; };
    skipSpace();
    while (pos < word.size()) {
      if (word[pos] != '(') throw parse_error("expected '(' in cycle word: " + word);
      ++pos;
      std::vector<int> cycle;
      while (true) {
        skipSpace();
        if (pos < word.size() && word[pos] == ')') { ++pos; break; }
        size_t start = pos;
        while (pos < word.size() && word[pos] >= '0' && word[pos] <= '9') ++pos;
        if (pos == start) throw parse_error("expected point index in cycle word: " + word);
        int pt = std::stoi(word.substr(start, pos - start));
        if (pt < 1 || pt > degree) throw parse_error("point " + std::to_string(pt) + " out of range for degree " + std::to_string(degree));
        cycle.push_back(pt - 1);
        skipSpace();
        if (pos < word.size() && word[pos] == ',') ++pos;
      }
      for (size_t i = 0; i < cycle.size(); ++i) {
        int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
        img[from] = to;
      }
      skipSpace();
    }
    // Composite cycle words must describe disjoint cycles or at least a bijection.
    return Permutation(std::move(img));
  }

 private:
  std::vector<int> images_;
};

class FiniteGroup;

// A subgroup given by the sorted element indices of its members.
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<int> members;  // sorted, contains 0 (the identity)

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int idx) const {
    return std::binary_search(members.begin(), members.end(), idx);
  }
};

// A finite group materialized as a multiplication table over canonically
// indexed elements. Index 0 is always the identity. Immutable after build.
class FiniteGroup {
 public:
  static constexpr int kDefaultOrderCap = 1024;

  // Builds the closure of the given generators. Element order: identity
  // first, then breadth-first closure level by level, each level sorted
  // lexicographically by image sequence.
  static FiniteGroup fromGenerators(const std::vector<Permutation>& gens,
                                    const std::string& name = "",
                                    int orderCap = kDefaultOrderCap) {
    if (gens.empty()) throw precondition_error("at least one generator required");
    int degree = gens[0].degree();
    for (const auto& g : gens)
      if (g.degree() != degree) throw precondition_error("generators have mixed degrees");

    FiniteGroup G;
    G.degree_ = degree;
    G.name_ = name;
    Permutation id = Permutation::identity(degree);
    std::map<std::vector<int>, int> indexOf;
    G.elements_.push_back(id);
    indexOf[id.images()] = 0;
    std::vector<Permutation> frontier{id};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const auto& e : frontier) {
        for (const auto& g : gens) {
          Permutation p = e * g;
          if (!indexOf.count(p.images())) {
            indexOf[p.images()] = -1;  // reserve; index assigned after sort
            next.push_back(p);
          }
        }
      }
      std::sort(next.begin(), next.end());
      for (auto& p : next) {
        indexOf[p.images()] = static_cast<int>(G.elements_.size());
        G.elements_.push_back(p);
      }
      if (static_cast<int>(G.elements_.size()) > orderCap)
        throw precondition_error("group order exceeds cap " + std::to_string(orderCap));
      frontier = std::move(next);
    }

    int n = G.order();
    G.mult_.assign(n, std::vector<int>(n));
    G.inverse_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Permutation p = G.elements_[i] * G.elements_[j];
        auto it = indexOf.find(p.images());
        if (it == indexOf.end()) throw std::logic_error("closure failure");
        G.mult_[i][j] = it->second;
        if (it->second == 0) G.inverse_[i] = j;
      }
    }
    G.indexOf_ = std::move(indexOf);
    return G;
  }

  // Group-spec grammar: S<n>, A<n>, C<n>, D<n> (dihedral of order 2n), or
  // perm:<degree>:<cycles>;<cycles>;...
  static FiniteGroup fromSpec(const std::string& spec, int orderCap = kDefaultOrderCap) {
    auto family = [&](char c, int n) -> FiniteGroup {
      std::vector<Permutation> gens;
      switch (c) {
        case 'S': {
          if (n < 1) throw parse_error("S<n> requires n >= 1");
          if (n == 1) return fromGenerators({Permutation::identity(1)}, spec, orderCap);
          gens.push_back(Permutation::fromCycleString("(1,2)", n));
          if (n > 2) gens.push_back(nCycle(n));
          break;
        }
        case 'A': {
          if (n < 3) throw parse_error("A<n> requires n >= 3");
          gens.push_back(Permutation::fromCycleString("(1,2,3)", n));
          if (n > 3) {
            if (n % 2 == 1) gens.push_back(nCycle(n));
            else {
              std::string w = "(";
              for (int i = 2; i <= n; ++i) w += std::to_string(i) + (i == n ? ")" : ",");
              gens.push_back(Permutation::fromCycleString(w, n));
            }
          }
          break;
        }
        case 'C': {
          if (n < 1) throw parse_error("C<n> requires n >= 1");
          if (n == 1) return fromGenerators({Permutation::identity(1)}, spec, orderCap);
          gens.push_back(nCycle(n));
          break;
        }
        case 'D': {
          if (n < 3) throw parse_error("D<n> requires n >= 3");
          gens.push_back(nCycle(n));
          std::vector<int> img(n);
          for (int i = 0; i < n; ++i) img[i] = n - 1 - i;
          gens.push_back(Permutation(std::move(img)));
          break;
        }
        default:
          throw parse_error("unknown group family: " + std::string(1, c));
      }
      return fromGenerators(gens, spec, orderCap);
    };

    if (spec.rfind("perm:", 0) == 0) {
      size_t c1 = spec.find(':', 5);
      if (c1 == std::string::npos) throw parse_error("perm spec needs perm:<degree>:<cycles>;...");
      int degree = 0;
      try { degree = std::stoi(spec.substr(5, c1 - 5)); }
      catch (...) { throw parse_error("bad degree in perm spec: " + spec); }
      if (degree < 1) throw parse_error("perm spec degree must be >= 1");
      std::vector<Permutation> gens;
      std::string rest = spec.substr(c1 + 1);
      size_t pos = 0;
      while (pos <= rest.size()) {
        size_t semi = rest.find(';', pos);
        std::string word = rest.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        if (!word.empty()) gens.push_back(Permutation::fromCycleString(word, degree));
        if (semi == std::string::npos) break;
        pos = semi + 1;
      }
      if (gens.empty()) throw parse_error("perm spec has no generators: " + spec);
      return fromGenerators(gens, spec, orderCap);
    }
    if (spec.size() >= 2 && (spec[0] == 'S' || spec[0] == 'A' || spec[0] == 'C' || spec[0] == 'D')) {
      int n = 0;
      try {
        size_t used = 0;
        n = std::stoi(spec.substr(1), &used);
        if (used != spec.size() - 1) throw parse_error("trailing characters in group spec: " + spec);
      } catch (parse_error&) { throw; }
      catch (...) { throw parse_error("malformed group spec: " + spec); }
      return family(spec[0], n);
    }
    throw parse_error("malformed group spec: " + spec);
  }

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int degree() const { return degree_; }
  int identity() const { return 0; }
  const Permutation& element(int idx) const { checkIndex(idx); return elements_[idx]; }

  int mult(int i, int j) const { checkIndex(i); checkIndex(j); return mult_[i][j]; }
  int inverse(int i) const { checkIndex(i); return inverse_[i]; }

  int indexOf(const Permutation& p) const {
    auto it = indexOf_.find(p.images());
    if (it == indexOf_.end()) throw precondition_error("permutation not in group");
    return it->second;
  }

  int parseElement(const std::string& cycleWord) const {
    return indexOf(Permutation::fromCycleString(cycleWord, degree_));
  }

  int elementOrder(int g) const {
    checkIndex(g);
    int d = 1, cur = g;
    while (cur != 0) { cur = mult_[cur][g]; ++d; }
    return d;
  }

  // x^{-1} h x
  int conjugate(int x, int h) const {
    checkIndex(x); checkIndex(h);
    return mult_[mult_[inverse_[x]][h]][x];
  }

  int power(int g, long long e) const {
    checkIndex(g);
    int base = g;
    if (e < 0) { base = inverse_[g]; e = -e; }
    int acc = 0;
    while (e > 0) {
      if (e & 1) acc = mult_[acc][base];
      base = mult_[base][base];
      e >>= 1;
    }
    return acc;
  }

  Subgroup subgroupGenerated(const std::vector<int>& gens) const {
    for (int g : gens) checkIndex(g);
    std::set<int> members{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int e : frontier)
        for (int g : gens) {
          int p = mult_[e][g];
          if (members.insert(p).second) next.push_back(p);
        }
      frontier = std::move(next);
    }
    Subgroup H;
    H.parent = this;
    H.members.assign(members.begin(), members.end());
    return H;
  }

  Subgroup cyclicSubgroup(int h) const { return subgroupGenerated({h}); }

  Subgroup wholeGroup() const {
    Subgroup H;
    H.parent = this;
    H.members.resize(order());
    std::iota(H.members.begin(), H.members.end(), 0);
    return H;
  }

 private:
  static Permutation nCycle(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
    return Permutation(std::move(img));
  }

  void checkIndex(int i) const {
    if (i < 0 || i >= order()) throw precondition_error("element index out of range");
  }

  std::string name_;
  int degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inverse_;
  std::map<std::vector<int>, int> indexOf_;
};

inline bool isSubgroupOf(const Subgroup& H, const Subgroup& K) {
  if (H.parent != K.parent) return false;
  return std::includes(K.members.begin(), K.members.end(), H.members.begin(), H.members.end());
}

// x^{-1} H x as a subgroup.
inline Subgroup conjugateSubgroup(const Subgroup& H, int x) {
  const FiniteGroup& G = *H.parent;
  Subgroup R;
  R.parent = H.parent;
  for (int h : H.members) R.members.push_back(G.conjugate(x, h));
  std::sort(R.members.begin(), R.members.end());
  return R;
}

}  // namespace zg

#endif  // ZG_PERM_GROUP_HPP
