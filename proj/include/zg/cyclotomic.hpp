#ifndef ZG_CYCLOTOMIC_HPP
#define ZG_CYCLOTOMIC_HPP

#include <map>
#include <mpfr.h>

#include "zg/polynomial.hpp"
#include "zg/units.hpp"

namespace zg {

// Phi_n, computed once per conductor: divide X^n - 1 exactly by the product
// of Phi_d over proper divisors d of n.
inline const IntPoly& cyclotomicPolynomial(unsigned n) {
  static std::map<unsigned, IntPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  IntPoly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  IntPoly den{1};
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) den = poly::mul(den, cyclotomicPolynomial(d));
  return cache.emplace(n, poly::exactDiv(num, den)).first->second;
}

// An element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), coeffs_(1, 0) {}
  explicit Cyclotomic(unsigned n, mpq_class constant = 0)
      : n_(n), coeffs_(poly::degree(cyclotomicPolynomial(n)), 0) {
    coeffs_[0] = constant;
  }

  static Cyclotomic zeta(unsigned n, unsigned power = 1) {
    Cyclotomic z(n);
    z.coeffs_[0] = 0;
    z.addPower(power % n, 1);
    return z;
  }
  static Cyclotomic fromCoeffs(unsigned n, std::vector<mpq_class> c) {
    Cyclotomic z(n);
    z.coeffs_.assign(z.coeffs_.size(), 0);
    for (size_t i = 0; i < c.size(); ++i) z.addPower(static_cast<unsigned>(i % n), c[i]);
    return z;
  }

  unsigned conductor() const { return n_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  bool isZero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const Cyclotomic& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  // Explicit embedding into Q(zeta_m): requires n | m; zeta_n -> zeta_m^{m/n}.
  Cyclotomic embed(unsigned m) const {
    if (m % n_ != 0)
      throw precondition_error("embedding requires the source conductor to divide the target");
    Cyclotomic out(m);
    out.coeffs_[0] = 0;
    unsigned step = m / n_;
    for (size_t i = 0; i < coeffs_.size(); ++i)
      out.addPower(static_cast<unsigned>(i) * step % m, coeffs_[i]);
    return out;
  }

  Cyclotomic operator+(const Cyclotomic& o) const {
    requireSameConductor(o);
    Cyclotomic out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += o.coeffs_[i];
    return out;
  }
  Cyclotomic operator-(const Cyclotomic& o) const {
    requireSameConductor(o);
    Cyclotomic out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= o.coeffs_[i];
    return out;
  }
  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  Cyclotomic operator*(const Cyclotomic& o) const {
    requireSameConductor(o);
    RatPoly prod(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      for (size_t j = 0; j < o.coeffs_.size(); ++j)
        prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    RatPoly rem = poly::mod(prod, poly::toRat(cyclotomicPolynomial(n_)));
    Cyclotomic out(n_);
    out.coeffs_.assign(out.coeffs_.size(), 0);
    for (size_t i = 0; i < rem.size(); ++i) out.coeffs_[i] = rem[i];
    return out;
  }
  Cyclotomic scale(const mpq_class& q) const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c *= q;
    return out;
  }
  Cyclotomic pow(unsigned long e) const {
    Cyclotomic acc(n_, 1), base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  // The Galois automorphism zeta -> zeta^t, gcd(t, n) = 1.
  Cyclotomic galois(unsigned t) const {
    t %= n_;
    if (std::gcd(t, n_) != 1)
      throw precondition_error("Galois exponent must be coprime to the conductor");
    Cyclotomic out(n_);
    out.coeffs_[0] = 0;
    for (size_t i = 0; i < coeffs_.size(); ++i)
      out.addPower(static_cast<unsigned>(i) * t % n_, coeffs_[i]);
    return out;
  }
  // Complex conjugation: zeta -> zeta^{n-1}.
  Cyclotomic conj() const { return n_ == 1 ? *this : galois(n_ - 1); }

  // |alpha|^2 = alpha * conj(alpha), an element of the real subfield.
  Cyclotomic normSq() const { return *this * conj(); }

  Cyclotomic inverse() const {
    if (isZero()) throw precondition_error("inverse of zero in a cyclotomic field");
    // Extended Euclid in Q[X]: s*f + t*Phi_n = gcd = 1 (f is coprime to the
    // irreducible Phi_n since deg f < deg Phi_n and f != 0).
    RatPoly r0 = poly::toRat(cyclotomicPolynomial(n_));
    RatPoly r1(coeffs_.begin(), coeffs_.end());
    poly::normalize(r1);
    RatPoly s0{0}, s1{1};  // coefficients of f in the Bezout recursion
    while (poly::degree(r1) > 0) {
      RatPoly q, r;
      poly::divMod(r0, r1, q, r);
      RatPoly s2 = s0;
      RatPoly qs1 = poly::mul(q, s1);
      if (s2.size() < qs1.size()) s2.resize(qs1.size(), 0);
      for (size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
      poly::normalize(s2);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.empty()) throw precondition_error("inverse of zero in a cyclotomic field");
    mpq_class lead = r1[0];
    Cyclotomic out(n_);
    out.coeffs_.assign(out.coeffs_.size(), 0);
    RatPoly s = poly::mod(s1, poly::toRat(cyclotomicPolynomial(n_)));
    for (size_t i = 0; i < s.size(); ++i) out.coeffs_[i] = s[i] / lead;
    return out;
  }

  std::string toString() const {
    std::string out;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!first) out += " + ";
      out += coeffs_[i].get_str();
      if (i >= 1) out += "*z^" + std::to_string(i);
      first = false;
    }
    return first ? "0" : out;
  }

  // Numeric value at zeta = e^{2*pi*i/n}, returned as (re, im) at the given
  // MPFR precision, together with a rigorous absolute error bound.
  void evalNumeric(mpfr_prec_t prec, mpfr_t re, mpfr_t im, mpfr_t errBound) const {
    mpfr_t angle, c, s, coef, tmp;
    mpfr_inits2(prec, angle, c, s, coef, tmp, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    mpq_class magSum = 0;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      magSum += abs(coeffs_[i]);
      mpfr_const_pi(angle, MPFR_RNDN);
      mpfr_mul_ui(angle, angle, 2 * static_cast<unsigned long>(i), MPFR_RNDN);
      mpfr_div_ui(angle, angle, n_, MPFR_RNDN);
      mpfr_cos(c, angle, MPFR_RNDN);
      mpfr_sin(s, angle, MPFR_RNDN);
      mpfr_set_q(coef, coeffs_[i].get_mpq_t(), MPFR_RNDN);
      mpfr_mul(tmp, coef, c, MPFR_RNDN);
      mpfr_add(re, re, tmp, MPFR_RNDN);
      mpfr_mul(tmp, coef, s, MPFR_RNDN);
      mpfr_add(im, im, tmp, MPFR_RNDN);
    }
    // Each term carries O(1) rounding ops; bound by sum |c_i| * k * 2^{4-prec}
    // with k = number of terms + 4, generously.
    mpfr_set_q(errBound, mpq_class(magSum).get_mpq_t(), MPFR_RNDU);
    mpfr_mul_ui(errBound, errBound, static_cast<unsigned long>(coeffs_.size()) + 4, MPFR_RNDU);
    mpfr_mul_2si(errBound, errBound, 4 - static_cast<long>(prec), MPFR_RNDU);
    mpfr_clears(angle, c, s, coef, tmp, static_cast<mpfr_ptr>(nullptr));
  }

 private:
  void requireSameConductor(const Cyclotomic& o) const {
    if (n_ != o.n_)
      throw precondition_error("conductor mismatch: embedding must be explicit");
  }
  void addPower(unsigned p, const mpq_class& c) {
    // Reduce zeta^p modulo Phi_n into the power basis.
    if (p < coeffs_.size()) {
      coeffs_[p] += c;
      return;
    }
    RatPoly mono(p + 1, 0);
    mono[p] = c;
    RatPoly rem = poly::mod(mono, poly::toRat(cyclotomicPolynomial(n_)));
    for (size_t i = 0; i < rem.size(); ++i) coeffs_[i] += rem[i];
  }

  unsigned n_;
  std::vector<mpq_class> coeffs_;  // size = deg Phi_n
};

enum class ModulusOrder { Less, Equal, Greater };

// Compare |alpha| against |beta| exactly: Equal when |alpha|^2 - |beta|^2 is
// the zero field element; otherwise determine the sign of that fixed nonzero
// algebraic number numerically at escalating precision.
inline ModulusOrder modulusCompare(const Cyclotomic& alpha, const Cyclotomic& beta,
                                   mpfr_prec_t max_prec = 1 << 14) {
  Cyclotomic diff = alpha.normSq() - beta.normSq();
  if (diff.isZero()) return ModulusOrder::Equal;
  for (mpfr_prec_t prec = 128; prec <= max_prec; prec *= 2) {
    mpfr_t re, im, err;
    mpfr_inits2(prec, re, im, err, static_cast<mpfr_ptr>(nullptr));
    diff.evalNumeric(prec, re, im, err);
    ModulusOrder result = ModulusOrder::Equal;
    bool decided = false;
    mpfr_t mag;
    mpfr_init2(mag, prec);
    mpfr_abs(mag, re, MPFR_RNDD);
    if (mpfr_cmp(mag, err) > 0) {
      result = mpfr_sgn(re) > 0 ? ModulusOrder::Greater : ModulusOrder::Less;
      decided = true;
    }
    mpfr_clears(re, im, err, mag, static_cast<mpfr_ptr>(nullptr));
    if (decided) return result;
  }
  throw precondition_error("modulus_compare: precision cap exceeded; difference = " +
                           diff.toString());
}

// The Bass unit polynomial u_{k,m,d} evaluated exactly at zeta_d^j.
inline Cyclotomic bassAtRoot(unsigned long k, unsigned long m, unsigned long d,
                             unsigned long j) {
  if (d < 1) throw precondition_error("d must be positive");
  if (k == 0) throw precondition_error("k must be coprime to the order of x");
  k = (k - 1) % d + 1;  // representative in [1, d], so d = 1 keeps k = 1
  if (std::gcd(k, d) != 1) throw precondition_error("k must be coprime to the order of x");
  if (m == 0 || m % eulerPhi(d) != 0)
    throw precondition_error("m must be a positive multiple of phi(d)");
  if (j >= d) throw precondition_error("j must satisfy 0 <= j < d");
  unsigned n = static_cast<unsigned>(d);
  Cyclotomic partial(n, 0);
  Cyclotomic full(n, 0);
  for (unsigned long i = 0; i < k; ++i)
    partial = partial + Cyclotomic::zeta(n, static_cast<unsigned>(i * j % d));
  for (unsigned long i = 0; i < d; ++i)
    full = full + Cyclotomic::zeta(n, static_cast<unsigned>(i * j % d));
  mpz_class km;
  mpz_ui_pow_ui(km.get_mpz_t(), k, m);
  mpq_class corr = mpq_class(1 - km) / static_cast<long>(d);
  return partial.pow(m) + full.scale(corr);
}

}  // namespace zg

#endif  // ZG_CYCLOTOMIC_HPP
