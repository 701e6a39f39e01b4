#ifndef ZG_CYCLO_LINALG_HPP
#define ZG_CYCLO_LINALG_HPP

#include <vector>

#include "zg/cyclotomic.hpp"

namespace zg {

using CycloVector = std::vector<Cyclotomic>;

class CycloMatrix {
 public:
  CycloMatrix() = default;
  CycloMatrix(int rows, int cols, unsigned conductor)
      : rows_(rows), cols_(cols), n_(conductor),
        data_(static_cast<size_t>(rows) * cols, Cyclotomic(conductor)) {}

  static CycloMatrix fromIntegers(const std::vector<std::vector<long>>& rows,
                                  unsigned conductor) {
    CycloMatrix M(static_cast<int>(rows.size()),
                  static_cast<int>(rows.empty() ? 0 : rows[0].size()), conductor);
    for (int i = 0; i < M.rows_; ++i)
      for (int j = 0; j < M.cols_; ++j)
        M.at(i, j) = Cyclotomic(conductor, rows[i][j]);
    return M;
  }
  static CycloMatrix identity(int n, unsigned conductor) {
    CycloMatrix M(n, n, conductor);
    for (int i = 0; i < n; ++i) M.at(i, i) = Cyclotomic(conductor, 1);
    return M;
  }
  static CycloMatrix fromColumns(const std::vector<CycloVector>& cols, unsigned conductor) {
    int r = cols.empty() ? 0 : static_cast<int>(cols[0].size());
    CycloMatrix M(r, static_cast<int>(cols.size()), conductor);
    for (int j = 0; j < M.cols_; ++j)
      for (int i = 0; i < r; ++i) M.at(i, j) = cols[j][i];
    return M;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  unsigned conductor() const { return n_; }
  Cyclotomic& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Cyclotomic& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  bool isZero() const {
    for (const auto& c : data_)
      if (!c.isZero()) return false;
    return true;
  }
  bool operator==(const CycloMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  CycloMatrix operator+(const CycloMatrix& o) const {
    CycloMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + o.data_[i];
    return out;
  }
  CycloMatrix operator-(const CycloMatrix& o) const {
    CycloMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
    return out;
  }
  CycloMatrix operator*(const CycloMatrix& o) const {
    CycloMatrix out(rows_, o.cols_, n_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        if (at(i, k).isZero()) continue;
        for (int j = 0; j < o.cols_; ++j)
          out.at(i, j) = out.at(i, j) + at(i, k) * o.at(k, j);
      }
    return out;
  }
  CycloMatrix scale(const Cyclotomic& c) const {
    CycloMatrix out = *this;
    for (auto& x : out.data_) x = x * c;
    return out;
  }
  CycloVector apply(const CycloVector& v) const {
    CycloVector out(rows_, Cyclotomic(n_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!at(i, j).isZero()) out[i] = out[i] + at(i, j) * v[j];
    return out;
  }

  // Row echelon form (in place on a copy); returns rank. Pivots use the field
  // inverse, so the arithmetic stays exact.
  int rank() const {
    CycloMatrix M = *this;
    return echelon(M);
  }

  // A basis of the null space {x : M x = 0}.
  std::vector<CycloVector> kernelBasis() const {
    CycloMatrix M = *this;
    std::vector<int> pivotCol;
    echelon(M, &pivotCol);
    std::vector<bool> isPivot(cols_, false);
    for (int c : pivotCol) isPivot[c] = true;
    std::vector<CycloVector> basis;
    for (int freeCol = 0; freeCol < cols_; ++freeCol) {
      if (isPivot[freeCol]) continue;
      CycloVector x(cols_, Cyclotomic(n_));
      x[freeCol] = Cyclotomic(n_, 1);
      // Back-substitute: row r has pivot at pivotCol[r] with value 1.
      for (int r = static_cast<int>(pivotCol.size()) - 1; r >= 0; --r) {
        Cyclotomic acc(n_);
        for (int j = pivotCol[r] + 1; j < cols_; ++j)
          acc = acc + M.at(r, j) * x[j];
        x[pivotCol[r]] = -acc;
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

  // A basis of the column space.
  std::vector<CycloVector> imageBasis() const {
    CycloMatrix M = *this;
    std::vector<int> pivotCol;
    echelon(M, &pivotCol);
    std::vector<CycloVector> basis;
    for (int c : pivotCol) {
      CycloVector col(rows_, Cyclotomic(n_));
      for (int i = 0; i < rows_; ++i) col[i] = at(i, c);
      basis.push_back(std::move(col));
    }
    return basis;
  }

 private:
  // Reduce M to row echelon form with unit pivots; records pivot columns.
  static int echelon(CycloMatrix& M, std::vector<int>* pivotCols = nullptr) {
    int rank = 0;
    for (int col = 0; col < M.cols_ && rank < M.rows_; ++col) {
      int pivot = -1;
      for (int r = rank; r < M.rows_; ++r)
        if (!M.at(r, col).isZero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      if (pivot != rank)
        for (int j = 0; j < M.cols_; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
      Cyclotomic inv = M.at(rank, col).inverse();
      for (int j = col; j < M.cols_; ++j) M.at(rank, j) = M.at(rank, j) * inv;
      for (int r = 0; r < M.rows_; ++r) {
        if (r == rank || M.at(r, col).isZero()) continue;
        Cyclotomic f = M.at(r, col);
        for (int j = col; j < M.cols_; ++j)
          M.at(r, j) = M.at(r, j) - f * M.at(rank, j);
      }
      if (pivotCols) pivotCols->push_back(col);
      ++rank;
    }
    return rank;
  }

  int rows_ = 0, cols_ = 0;
  unsigned n_ = 1;
  std::vector<Cyclotomic> data_;
};

// span(U) and span(V) intersect trivially iff rank[U | V] = dim U + dim V.
// When non-trivial, returns a witness vector in the intersection.
struct IntersectionResult {
  bool trivial = true;
  CycloVector witness;  // a nonzero common vector when not trivial
};

inline IntersectionResult intersectTrivially(const std::vector<CycloVector>& U,
                                             const std::vector<CycloVector>& V,
                                             unsigned conductor) {
  if (U.empty() || V.empty()) return {true, {}};
  std::vector<CycloVector> all = U;
  all.insert(all.end(), V.begin(), V.end());
  CycloMatrix M = CycloMatrix::fromColumns(all, conductor);
  if (M.rank() == static_cast<int>(U.size() + V.size())) return {true, {}};
  // A kernel vector (c, d) of [U | V] gives the witness sum(c_i U_i).
  std::vector<CycloVector> ker = M.kernelBasis();
  IntersectionResult out;
  out.trivial = false;
  size_t dim = U[0].size();
  out.witness.assign(dim, Cyclotomic(conductor));
  const CycloVector& k = ker.front();
  for (size_t i = 0; i < U.size(); ++i)
    for (size_t r = 0; r < dim; ++r)
      out.witness[r] = out.witness[r] + U[i][r] * k[i];
  return out;
}

}  // namespace zg

#endif  // ZG_CYCLO_LINALG_HPP
