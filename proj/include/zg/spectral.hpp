#ifndef ZG_SPECTRAL_HPP
#define ZG_SPECTRAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <mutex>
#include <optional>
#include <vector>

#include "zg/group_ring.hpp"
#include "zg/polynomial.hpp"

namespace zg {

// Dense square matrix with exact integer entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, mpz_class(0)) {}

  int dim() const { return n_; }
  mpz_class& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const mpz_class& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const IntMatrix& rhs) const { return n_ == rhs.n_ && a_ == rhs.a_; }

  IntMatrix operator*(const IntMatrix& rhs) const {
    IntMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const mpz_class& aik = at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < n_; ++j) r.at(i, j) += aik * rhs.at(k, j);
      }
    return r;
  }

  std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const {
    std::vector<mpz_class> r(n_, mpz_class(0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
  }

  mpz_class traceSum() const {
    mpz_class t = 0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  // Rank over Q by fraction-free (Bareiss) elimination.
  int rank() const {
    std::vector<std::vector<mpz_class>> m(n_, std::vector<mpz_class>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m[i][j] = at(i, j);
    mpz_class prev = 1;
    int r = 0;
    for (int col = 0; col < n_ && r < n_; ++col) {
      int piv = -1;
      for (int i = r; i < n_; ++i)
        if (m[i][col] != 0) { piv = i; break; }
      if (piv < 0) continue;
      std::swap(m[r], m[piv]);
      for (int i = r + 1; i < n_; ++i) {
        for (int j = col + 1; j < n_; ++j)
          m[i][j] = (m[r][col] * m[i][j] - m[i][col] * m[r][j]) / prev;
        m[i][col] = 0;
      }
      prev = m[r][col];
      ++r;
    }
    return r;
  }

  // Exact determinant (Bareiss).
  mpz_class determinant() const {
    std::vector<std::vector<mpz_class>> m(n_, std::vector<mpz_class>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m[i][j] = at(i, j);
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n_ - 1; ++k) {
      if (m[k][k] == 0) {
        int piv = -1;
        for (int i = k + 1; i < n_; ++i)
          if (m[i][k] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        std::swap(m[k], m[piv]);
        sign = -sign;
      }
      for (int i = k + 1; i < n_; ++i)
        for (int j = k + 1; j < n_; ++j)
          m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      prev = m[k][k];
    }
    return n_ == 0 ? mpz_class(1) : mpz_class(sign * m[n_ - 1][n_ - 1]);
  }

 private:
  int n_ = 0;
  std::vector<mpz_class> a_;
};

// The matrix of left multiplication by a in the canonical element basis:
// column j holds the coefficients of a * g_j.
inline IntMatrix regularMatrix(const GroupRingElement& a, int orderCap = FiniteGroup::kDefaultOrderCap) {
  const FiniteGroup& G = a.group();
  if (G.order() > orderCap) throw precondition_error("group order exceeds cap");
  IntMatrix M(G.order());
  for (int j = 0; j < G.order(); ++j)
    for (const auto& [g, c] : a.coeffs()) M.at(G.mult(g, j), j) = c;
  return M;
}

namespace detail {

// Incremental row-echelon store over Q with optional combination tracking.
struct Eliminator {
  struct Row {
    std::vector<mpq_class> vec;
    int pivot;
    std::vector<mpq_class> combo;  // expression in terms of inserted originals
  };
  std::vector<Row> rows;

  // Reduces v in place (and combo alongside, if given); returns pivot or -1 when v reduced to zero.
  int reduce(std::vector<mpq_class>& v, std::vector<mpq_class>* combo) const {
    for (const Row& r : rows) {
      if (v[r.pivot] == 0) continue;
      mpq_class f = v[r.pivot] / r.vec[r.pivot];
      for (size_t j = 0; j < v.size(); ++j)
        if (r.vec[j] != 0) v[j] -= f * r.vec[j];
      if (combo)
        for (size_t j = 0; j < combo->size(); ++j)
          if (j < r.combo.size() && r.combo[j] != 0) (*combo)[j] -= f * r.combo[j];
    }
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) return static_cast<int>(j);
    return -1;
  }

  // Returns false when v was dependent (v and combo hold the reduction result).
  bool insert(std::vector<mpq_class> v, std::vector<mpq_class> combo) {
    int piv = reduce(v, &combo);
    if (piv < 0) return false;
    rows.push_back({std::move(v), piv, std::move(combo)});
    return true;
  }
};

}  // namespace detail

// The monic least-degree integer polynomial annihilating A, computed as the
// lcm of the Krylov annihilators of all standard basis seeds. Seeds already
// contained in the union of previously scanned Krylov subspaces are skipped;
// their annihilators divide the running lcm.
inline IntPoly minimalPolynomial(const IntMatrix& A) {
  const int n = A.dim();
  if (n == 0) return {mpz_class(0), mpz_class(1)};
  detail::Eliminator global;
  RatPoly L;  // running lcm

  for (int seed = 0; seed < n && poly::degree(L) < n; ++seed) {
    std::vector<mpq_class> e(n, mpq_class(0));
    e[seed] = 1;
    {
      std::vector<mpq_class> probe = e;
      if (global.reduce(probe, nullptr) < 0) continue;  // seed already covered
    }
    detail::Eliminator local;
    std::vector<mpz_class> v(n, mpz_class(0));
    v[seed] = 1;
    int k = 0;
    while (true) {
      std::vector<mpq_class> vec(n);
      for (int i = 0; i < n; ++i) vec[i] = mpq_class(v[i]);
      std::vector<mpq_class> combo(static_cast<size_t>(k) + 1, mpq_class(0));
      combo[k] = 1;
      std::vector<mpq_class> vecCopy = vec;
      if (!local.insert(std::move(vec), std::move(combo))) {
        // Dependence found: the combo returned by reduce is reconstructed by
        // re-running reduce on a fresh copy to recover the coefficients.
        std::vector<mpq_class> c(static_cast<size_t>(k) + 1, mpq_class(0));
        c[k] = 1;
        local.reduce(vecCopy, &c);
        RatPoly p(c.begin(), c.end());
        poly::normalize(p);
        L = poly::lcm(L, p);
        break;
      }
      global.insert(std::move(vecCopy), {});
      v = A.apply(v);
      ++k;
      if (k > n) throw std::logic_error("Krylov did not terminate");
    }
  }
  // Monic rational divisors of the monic integer minimal polynomial are integer.
  return poly::toInt(poly::makeMonic(L));
}

// Evaluates p(A) * e_j for every j and checks all vanish (p(A) = 0).
inline bool annihilates(const IntPoly& p, const IntMatrix& A) {
  const int n = A.dim();
  for (int seed = 0; seed < n; ++seed) {
    std::vector<mpz_class> acc(n, mpz_class(0));
    for (int i = poly::degree(p); i >= 0; --i) {
      acc = A.apply(acc);
      acc[seed] += p[i];
    }
    for (const auto& x : acc)
      if (x != 0) return false;
  }
  return true;
}

// A certified complex enclosure: the closed disk of the given (exact dyadic
// rational) center and radius.
struct RootBox {
  mpq_class re, im, radius;
  bool decided = false;  // position w.r.t. the |z| = 4 circle resolved

  // |center|^2, exact.
  mpq_class centerNormSq() const { return re * re + im * im; }
  // Entirely outside the open disk of radius 4: |c| - r >= 4.
  bool certifiedOutsideRadius4() const {
    mpq_class rhs = (mpq_class(4) + radius);
    return centerNormSq() >= rhs * rhs;
  }
  // Entirely inside the closed disk of radius 4: |c| + r <= 4.
  bool certifiedInsideRadius4() const {
    if (radius > 4) return false;
    mpq_class rhs = (mpq_class(4) - radius);
    return centerNormSq() <= rhs * rhs;
  }
};

struct SpectralOptions {
  int precision_bits = 128;
  int max_precision_bits = 2048;
  int order_cap = FiniteGroup::kDefaultOrderCap;
};

// The exact multiset of eigenvalues of a group-ring element: integer roots
// listed exactly with their multiplicity in the minimal polynomial; all
// remaining roots covered by pairwise disjoint certified boxes.
struct Spectrum {
  IntPoly min_poly;
  std::vector<std::pair<mpz_class, int>> integer_roots;  // (root, multiplicity), sorted
  std::vector<RootBox> boxes;
  int precision_bits = 0;
  unsigned scale = 1;

  bool allZero() const {
    return boxes.empty() && (integer_roots.empty() ||
                             (integer_roots.size() == 1 && integer_roots[0].first == 0));
  }

  // The min_poly factor carrying the non-integer roots (monic integer).
  IntPoly nonIntegerFactor() const {
    IntPoly q = min_poly;
    for (const auto& [r, mult] : integer_roots)
      for (int i = 0; i < mult; ++i) q = poly::deflate(q, r);
    return q;
  }
};

namespace detail {

struct Cplx {
  mpf_class re, im;
};

inline Cplx cadd(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cplx csub(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cplx cmul(const Cplx& a, const Cplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cplx cdiv(const Cplx& a, const Cplx& b) {
  mpf_class d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline mpf_class cabs(const Cplx& a) { return sqrt(mpf_class(a.re * a.re + a.im * a.im)); }

inline Cplx evalPoly(const IntPoly& p, const Cplx& z) {
  Cplx acc{mpf_class(0), mpf_class(0)};
  for (int i = poly::degree(p); i >= 0; --i) {
    acc = cmul(acc, z);
    acc.re += mpf_class(p[i]);
  }
  return acc;
}

// GMP float default precision is process-global; root isolation is serialized.
inline std::mutex& isolationMutex() {
  static std::mutex m;
  return m;
}

// Durand-Kerner on a square-free monic integer polynomial, with a posteriori
// certified radii from the bound min_i |z - root_i| <= deg * |g(z)/g'(z)|.
inline std::vector<RootBox> isolateRoots(const IntPoly& g, int prec) {
  std::lock_guard<std::mutex> lock(isolationMutex());
  mpf_set_default_prec(prec);
  const int n = poly::degree(g);
  std::vector<RootBox> out;
  if (n <= 0) return out;
  IntPoly gd = poly::derivative(g);

  mpf_class bound(1);
  for (int i = 0; i < n; ++i) {
    mpf_class c = mpf_class(abs(g[i])) + 1;
    if (c > bound) bound = c;
  }
  std::vector<Cplx> z(n);
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * 3.14159265358979323846 * k / n + 0.39;
    mpf_class rad = mpf_class(0.5) * bound * mpf_class(1.0 + 0.1 * k / std::max(1, n));
    z[k] = {rad * mpf_class(std::cos(ang)), rad * mpf_class(std::sin(ang))};
  }
  mpf_class tol;
  mpf_pow_ui(tol.get_mpf_t(), mpf_class(0.5).get_mpf_t(), static_cast<unsigned>(prec / 2));
  int maxIter = 80 * n + 200;
  for (int iter = 0; iter < maxIter; ++iter) {
    mpf_class worst = 0;
    for (int k = 0; k < n; ++k) {
      Cplx denom{mpf_class(1), mpf_class(0)};
      for (int j = 0; j < n; ++j)
        if (j != k) denom = cmul(denom, csub(z[k], z[j]));
      Cplx delta = cdiv(evalPoly(g, z[k]), denom);
      z[k] = csub(z[k], delta);
      mpf_class d = cabs(delta);
      if (d > worst) worst = d;
    }
    if (worst < tol) break;
  }

  mpf_class inflate;
  mpf_pow_ui(inflate.get_mpf_t(), mpf_class(0.5).get_mpf_t(), static_cast<unsigned>(prec / 3));
  for (int k = 0; k < n; ++k) {
    Cplx gv = evalPoly(g, z[k]);
    Cplx gdv = evalPoly(gd, z[k]);
    mpf_class gdAbs = cabs(gdv);
    RootBox box;
    if (gdAbs == 0) {
      box.re = mpq_class(z[k].re);
      box.im = mpq_class(z[k].im);
      box.radius = mpq_class(bound);  // useless enclosure; escalation will retry
    } else {
      mpf_class r = mpf_class(n) * cabs(gv) / gdAbs;
      r = r * mpf_class(1.5) + inflate;
      box.re = mpq_class(z[k].re);
      box.im = mpq_class(z[k].im);
      box.radius = mpq_class(r);
    }
    out.push_back(box);
  }
  return out;
}

inline bool boxesDisjoint(const RootBox& a, const RootBox& b) {
  mpq_class dre = a.re - b.re, dim = a.im - b.im;
  mpq_class rr = a.radius + b.radius;
  return dre * dre + dim * dim > rr * rr;
}

inline bool boxAvoidsInteger(const RootBox& b, const mpz_class& m) {
  mpq_class dre = b.re - m;
  return dre * dre + b.im * b.im > b.radius * b.radius;
}

}  // namespace detail

// Spectrum of a monic integer polynomial (the minimal polynomial of some
// element): integer roots by exact trial division, remaining roots isolated
// numerically with certified radii and precision escalation.
inline Spectrum spectrumOfPoly(const IntPoly& minPoly, const SpectralOptions& opts = {}) {
  Spectrum s;
  s.min_poly = minPoly;
  IntPoly q = minPoly;

  // Multiplicity of the root 0.
  int zeroMult = 0;
  while (poly::degree(q) >= 1 && q[0] == 0) {
    q = poly::deflate(q, 0);
    ++zeroMult;
  }
  if (zeroMult > 0) s.integer_roots.emplace_back(0, zeroMult);

  // Candidate integer roots: divisors of the constant term (bounded trial
  // division; large constants fall back to the numeric pass below).
  auto extractRoot = [&](const mpz_class& r) {
    if (poly::degree(q) < 1 || poly::eval(q, r) != 0) return false;
    int mult = 0;
    while (poly::degree(q) >= 1 && poly::eval(q, r) == 0) {
      q = poly::deflate(q, r);
      ++mult;
    }
    s.integer_roots.emplace_back(r, mult);
    return true;
  };
  if (poly::degree(q) >= 1) {
    mpz_class c = abs(q[0]);
    for (mpz_class d = 1; d * d <= c && d < 1000000; ++d) {
      if (c % d != 0) continue;
      const mpz_class cands[4] = {d, mpz_class(-d), mpz_class(c / d), mpz_class(-(c / d))};
      for (const mpz_class& cand : cands) extractRoot(cand);
      c = abs(q.empty() ? mpz_class(1) : q[0]);
      if (poly::degree(q) < 1 || c == 0) break;
    }
  }

  s.precision_bits = opts.precision_bits;
  if (poly::degree(q) >= 1) {
    IntPoly sf = poly::squareFreePart(q);
    int prec = opts.precision_bits;
    while (true) {
      std::vector<RootBox> boxes = detail::isolateRoots(sf, prec);
      // Numeric fallback for integer roots the divisor scan missed.
      bool removed = false;
      for (const auto& b : boxes) {
        mpq_class rounded = b.re;  // nearest integer to the center
        mpz_class cand;
        mpz_class num = rounded.get_num(), den = rounded.get_den();
        mpz_class twice = 2 * num + den;
        mpz_fdiv_q(cand.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
        if (poly::degree(q) >= 1 && poly::eval(q, cand) == 0) {
          extractRoot(cand);
          removed = true;
        }
      }
      if (removed) {
        if (poly::degree(q) < 1) break;
        sf = poly::squareFreePart(q);
        continue;
      }
      bool ok = true;
      for (size_t i = 0; i < boxes.size() && ok; ++i) {
        for (size_t j = i + 1; j < boxes.size() && ok; ++j)
          if (!detail::boxesDisjoint(boxes[i], boxes[j])) ok = false;
        for (const auto& [r, mult] : s.integer_roots)
          if (!detail::boxAvoidsInteger(boxes[i], r)) { ok = false; break; }
      }
      if (ok) {
        for (auto& b : boxes)
          b.decided = b.certifiedOutsideRadius4() || b.certifiedInsideRadius4();
        bool allDecided = true;
        for (const auto& b : boxes) allDecided = allDecided && b.decided;
        if (allDecided || prec >= opts.max_precision_bits) {
          s.boxes = std::move(boxes);
          s.precision_bits = prec;
          break;
        }
      }
      if (prec >= opts.max_precision_bits) {
        // Precision exhausted: return whatever enclosures we have, undecided.
        for (auto& b : boxes)
          b.decided = b.certifiedOutsideRadius4() || b.certifiedInsideRadius4();
        s.boxes = std::move(boxes);
        s.precision_bits = prec;
        break;
      }
      prec *= 2;
    }
  }
  std::sort(s.integer_roots.begin(), s.integer_roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return s;
}

inline Spectrum spectrum(const GroupRingElement& a, const SpectralOptions& opts = {}) {
  if (a.group().order() > opts.order_cap) throw precondition_error("group order exceeds cap");
  return spectrumOfPoly(minimalPolynomial(regularMatrix(a, opts.order_cap)), opts);
}

// Eigenvalue scaling: roots multiplied exactly by t (eigenvalues of (ta) are
// t times those of a), realized on the polynomial as p(X/t) * t^deg.
inline Spectrum scaleSpectrum(const Spectrum& s, unsigned long t) {
  if (t < 1) throw precondition_error("scale factor must be >= 1");
  if (t == 1) return s;
  Spectrum r;
  mpz_class tz(static_cast<unsigned long>(t));
  r.min_poly = poly::scaleRoots(s.min_poly, tz);
  for (const auto& [root, mult] : s.integer_roots) r.integer_roots.emplace_back(root * tz, mult);
  for (const auto& b : s.boxes) {
    RootBox nb;
    nb.re = b.re * tz;
    nb.im = b.im * tz;
    nb.radius = b.radius * tz;
    nb.decided = nb.certifiedOutsideRadius4() || nb.certifiedInsideRadius4();
    r.boxes.push_back(nb);
  }
  r.precision_bits = s.precision_bits;
  r.scale = s.scale * static_cast<unsigned>(t);
  return r;
}

}  // namespace zg

#endif  // ZG_SPECTRAL_HPP
