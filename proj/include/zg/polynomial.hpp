#ifndef ZG_POLYNOMIAL_HPP
#define ZG_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "zg/perm_group.hpp"

namespace zg {

// Polynomials are coefficient vectors in ascending degree order with a
// nonzero leading coefficient (the zero polynomial is the empty vector).
using IntPoly = std::vector<mpz_class>;
using RatPoly = std::vector<mpq_class>;

namespace poly {

template <typename P>
inline void normalize(P& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <typename P>
inline int degree(const P& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly toRat(const IntPoly& p) {
  RatPoly r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = mpq_class(p[i]);
  return r;
}

// Valid only when every coefficient is integral.
inline IntPoly toInt(const RatPoly& p) {
  IntPoly r(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i].get_den() != 1) throw std::logic_error("non-integral coefficient");
    r[i] = p[i].get_num();
  }
  return r;
}

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Division with remainder over Q; divisor must be nonzero.
inline void divMod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& rem) {
  if (b.empty()) throw std::logic_error("division by zero polynomial");
  rem = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (degree(rem) >= degree(b)) {
    int shift = degree(rem) - degree(b);
    mpq_class f = rem.back() / b.back();
    q[shift] += f;
    for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= f * b[i];
    normalize(rem);
    if (rem.empty()) break;
  }
  normalize(q);
}

inline RatPoly mod(const RatPoly& a, const RatPoly& b) {
  RatPoly q, r;
  divMod(a, b, q, r);
  return r;
}

inline RatPoly makeMonic(RatPoly p) {
  normalize(p);
  if (p.empty()) return p;
  mpq_class lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

// Monic gcd over Q.
inline RatPoly gcd(RatPoly a, RatPoly b) {
  normalize(a);
  normalize(b);
  while (!b.empty()) {
    RatPoly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return makeMonic(a);
}

// Monic lcm over Q.
inline RatPoly lcm(const RatPoly& a, const RatPoly& b) {
  if (a.empty()) return makeMonic(b);
  if (b.empty()) return makeMonic(a);
  RatPoly g = gcd(a, b);
  RatPoly q, r;
  divMod(mul(a, b), g, q, r);
  if (!r.empty()) throw std::logic_error("lcm division not exact");
  return makeMonic(q);
}

template <typename P>
inline P derivative(const P& p) {
  P r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<long>(i));
  return r;
}

inline mpz_class eval(const IntPoly& p, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Exact division of p by (X - r); requires p(r) = 0.
inline IntPoly deflate(const IntPoly& p, const mpz_class& r) {
  IntPoly q(p.size() >= 1 ? p.size() - 1 : 0);
  mpz_class carry = 0;
  for (int i = static_cast<int>(p.size()) - 1; i >= 1; --i) {
    carry = carry * r + p[i];
    q[i - 1] = carry;
  }
  if (carry * r + p[0] != 0) throw std::logic_error("deflate: not a root");
  return q;
}

// Exact polynomial division over Q, cleared back to integers; remainder must vanish.
inline IntPoly exactDiv(const IntPoly& a, const IntPoly& b) {
  RatPoly q, r;
  divMod(toRat(a), toRat(b), q, r);
  if (!r.empty()) throw std::logic_error("exactDiv: remainder nonzero");
  return toInt(q);
}

// p monic integer; returns its square-free part p / gcd(p, p') (monic integer).
inline IntPoly squareFreePart(const IntPoly& p) {
  if (degree(p) <= 1) return p;
  RatPoly g = gcd(toRat(p), toRat(derivative(p)));
  RatPoly q, r;
  divMod(toRat(p), g, q, r);
  if (!r.empty()) throw std::logic_error("squareFreePart: division not exact");
  return toInt(makeMonic(q));
}

// Substitution p(X/t) * t^deg: integer roots scale by t.
inline IntPoly scaleRoots(const IntPoly& p, const mpz_class& t) {
  IntPoly r = p;
  mpz_class f = 1;
  for (int i = degree(p) - 1; i >= 0; --i) {
    f *= t;
    r[i] *= f;
  }
  return r;
}

inline std::string toString(const IntPoly& p, const std::string& var = "X") {
  if (p.empty()) return "0";
  std::string out;
  for (int i = degree(p); i >= 0; --i) {
    if (p[i] == 0) continue;
    mpz_class c = p[i];
    if (!out.empty()) { out += (c < 0) ? " - " : " + "; c = abs(c); }
    else if (c < 0) { out += "-"; c = abs(c); }
    if (i == 0 || c != 1) out += c.get_str();
    if (i >= 1) {
      out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace poly
}  // namespace zg

#endif  // ZG_POLYNOMIAL_HPP
