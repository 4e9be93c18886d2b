#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baslab/error.hpp"
#include "baslab/rational.hpp"

namespace baslab {

using Vector = std::vector<Rational>;

/// Dense matrix over the rationals, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix column(const Vector& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  /// Columns given as vectors of equal length `rows`.
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Sub-block [r0, r0+nr) x [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Rational trace() const {
    Rational t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const Rational& c) {
    for (auto& q : data_) q *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& c) { return a *= c; }
  friend Matrix operator*(const Rational& c, Matrix a) { return a *= c; }
  friend Matrix operator-(Matrix a) {
    for (auto& q : a.data_) q = -q;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw Error("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (sgn(a(i, k)) != 0 && sgn(v[k]) != 0) out[i] += a(i, k) * v[k];
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error("matrix shape mismatch: " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows && !(p.cols() == 0)) throw Error("hstack row mismatch");
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    if (p.cols() == 0) continue;
    out.set_block(0, c, p);
    c += p.cols();
  }
  return out;
}

inline Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols && !(p.rows() == 0)) throw Error("vstack column mismatch");
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    if (p.rows() == 0) continue;
    out.set_block(r, 0, p);
    r += p.rows();
  }
  return out;
}

inline Matrix block_diagonal(const std::vector<Matrix>& parts) {
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) {
    out.set_block(r, c, p);
    r += p.rows();
    c += p.cols();
  }
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (sgn(b(k, l)) != 0) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

/// Column-major flattening; vec(A X B) = (B^T kron A) vec(X).
inline Vector vec(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m(i, j));
  return v;
}

inline Matrix unvec(const Vector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw Error("unvec size mismatch");
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
  return m;
}

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form, zero rows at the bottom
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. Rows are processed sparsely: zero entries are
/// skipped, which matters for the large, mostly-empty systems built from
/// Kronecker products.
inline RowEchelon rref(Matrix m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && sgn(m(p, c)) == 0) ++p;
    if (p == R) continue;
    if (p != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
    if (m(r, c) != 1) {
      Rational inv = 1 / m(r, c);
      for (std::size_t j = c; j < C; ++j)
        if (sgn(m(r, j)) != 0) m(r, j) *= inv;
    }
    support.clear();
    for (std::size_t j = c; j < C; ++j)
      if (sgn(m(r, j)) != 0) support.push_back(j);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j : support) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Basis of {x : m x = 0}, as the columns of the result.
inline Matrix nullspace(const Matrix& m) {
  RowEchelon e = rref(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < C; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix basis(C, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) basis(e.pivots[i], k) = -e.reduced(i, f);
  }
  return basis;
}

/// A maximal linearly independent subset of the columns, kept in order.
inline Matrix column_basis(const Matrix& m) {
  RowEchelon e = rref(m);
  Matrix out(m.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, k) = m(i, e.pivots[k]);
  return out;
}

/// Some X with a X = b, if one exists.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("solve: row mismatch");
  Matrix aug = hstack({a, b}, a.rows());
  RowEchelon e = rref(aug);
  for (std::size_t p : e.pivots)
    if (p >= a.cols()) return std::nullopt;
  Matrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, a.cols() + j);
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (a.rows() == 0) return Matrix();
  RowEchelon e = rref(hstack({a, Matrix::identity(a.rows())}, a.rows()));
  if (e.pivots.size() < a.rows() || e.pivots[a.rows() - 1] != a.rows() - 1) return std::nullopt;
  return e.reduced.block(0, a.cols(), a.rows(), a.rows());
}

inline bool is_invertible(const Matrix& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

/// Subspace given by an independent set of columns together with a left
/// inverse: coords * basis = identity.
struct Embedding {
  Matrix basis;   // ambient x dim
  Matrix coords;  // dim x ambient

  std::size_t dim() const { return basis.cols(); }
  std::size_t ambient() const { return basis.rows(); }
};

/// Column span of `spanning` with a left inverse supported on pivot rows.
inline Embedding span_of(const Matrix& spanning) {
  Embedding e;
  e.basis = column_basis(spanning);
  const std::size_t d = e.basis.cols(), n = e.basis.rows();
  e.coords = Matrix(d, n);
  if (d == 0) return e;
  RowEchelon t = rref(e.basis.transpose());
  Matrix square(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) square(k, j) = e.basis(t.pivots[k], j);
  auto inv = inverse(square);
  if (!inv) throw InternalError("span_of: pivot rows are singular");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) e.coords(i, t.pivots[k]) = (*inv)(i, k);
  return e;
}

/// Quotient of k^n by the column span of `sub`: projection (q x n) and a
/// section (n x q) with projection * section = identity.
struct Quotient {
  Matrix projection;
  Matrix section;

  std::size_t dim() const { return projection.rows(); }
};

inline Quotient quotient_by(const Matrix& sub, std::size_t n) {
  if (sub.rows() != n && sub.cols() != 0) throw Error("quotient_by: ambient mismatch");
  Matrix rows = sub.cols() == 0 ? Matrix(0, n) : sub.transpose();
  RowEchelon e = rref(rows);
  std::vector<long> pivot_row(n, -1);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) pivot_row[e.pivots[i]] = static_cast<long>(i);
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (pivot_row[j] < 0) free_cols.push_back(j);
  Quotient q{Matrix(free_cols.size(), n), Matrix(n, free_cols.size())};
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    q.projection(k, free_cols[k]) = 1;
    q.section(free_cols[k], k) = 1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row[j] < 0) continue;
    const auto r = static_cast<std::size_t>(pivot_row[j]);
    for (std::size_t k = 0; k < free_cols.size(); ++k) q.projection(k, j) = -e.reduced(r, free_cols[k]);
  }
  return q;
}

}  // namespace baslab
