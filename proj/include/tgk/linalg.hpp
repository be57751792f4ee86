#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tgk/error.hpp"
#include "tgk/scalar.hpp"

namespace tgk {

/// Dense matrix over an exact field (Rational or Scalar).  Subspaces are
/// passed around as matrices whose columns span them.
template <class Field>
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Field(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Field(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Field& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Field& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  DenseMatrix column(std::size_t c) const {
    DenseMatrix v(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
    return v;
  }

  DenseMatrix columns(std::size_t first, std::size_t count) const {
    DenseMatrix v(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) v(r, c) = (*this)(r, first + c);
    return v;
  }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    DenseMatrix v(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) v(r, c) = (*this)(r0 + r, c0 + c);
    return v;
  }

  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!tgk::is_zero(x)) return false;
    return true;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix shape mismatch in product");
    DenseMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Field& aik = a(i, k);
        if (tgk::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    check_same_shape(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    check_same_shape(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend DenseMatrix operator*(const Field& s, DenseMatrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Horizontal concatenation [a | b].
  static DenseMatrix hstack(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ == 0) return b;
    if (b.cols_ == 0) return a;
    if (a.rows_ != b.rows_) throw PreconditionError("row mismatch in hstack");
    DenseMatrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
      for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
    }
    return m;
  }

  /// Vertical concatenation.
  static DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b) {
    return hstack(a.transpose(), b.transpose()).transpose();
  }

  std::string str() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      s += "[";
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c) s += ", ";
        s += field_str((*this)(r, c));
      }
      s += "]";
      if (r + 1 < rows_) s += "\n";
    }
    return s;
  }

private:
  static std::string field_str(const Rational& q) { return q.get_str(); }
  static std::string field_str(const Scalar& s) { return s.str(); }

  static void check_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Field> data_;
};

using CMatrix = DenseMatrix<Scalar>;
using QMatrix = DenseMatrix<Rational>;

inline CMatrix conj(const CMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < m.cols(); ++k) c(r, k) = m(r, k).conj();
  return c;
}

inline bool is_real(const CMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (!m(r, k).is_real()) return false;
  return true;
}

/// Reduced row echelon form; `pivots` receives the pivot column of each
/// nonzero row.
template <class F>
DenseMatrix<F> rref(DenseMatrix<F> m, std::vector<std::size_t>* pivots = nullptr) {
  std::size_t row = 0;
  std::vector<std::size_t> piv;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    const F inv = F(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const F factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

template <class F>
std::size_t rank(const DenseMatrix<F>& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

/// Columns spanning {v : m v = 0}, one per free variable.
template <class F>
DenseMatrix<F> nullspace(const DenseMatrix<F>& m) {
  std::vector<std::size_t> piv;
  DenseMatrix<F> r = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  DenseMatrix<F> basis(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) basis(piv[i], k) = -r(i, free[k]);
  }
  return basis;
}

/// A maximal linearly independent subset of the columns, in order.
template <class F>
DenseMatrix<F> column_basis(const DenseMatrix<F>& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  DenseMatrix<F> b(m.rows(), piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (std::size_t r = 0; r < m.rows(); ++r) b(r, k) = m(r, piv[k]);
  return b;
}

/// One solution x of a x = b (free variables set to zero), if any exists.
template <class F>
std::optional<DenseMatrix<F>> solve(const DenseMatrix<F>& a, const DenseMatrix<F>& b) {
  if (a.rows() != b.rows()) throw PreconditionError("shape mismatch in solve");
  std::vector<std::size_t> piv;
  DenseMatrix<F> aug = rref(DenseMatrix<F>::hstack(a, b), &piv);
  DenseMatrix<F> x(a.cols(), b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= a.cols()) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(piv[i], c) = aug(i, a.cols() + c);
  }
  return x;
}

template <class F>
DenseMatrix<F> inverse(const DenseMatrix<F>& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse of a non-square matrix");
  if (m.rows() == 0) return m;
  std::vector<std::size_t> piv;
  DenseMatrix<F> aug = rref(DenseMatrix<F>::hstack(m, DenseMatrix<F>::identity(m.rows())), &piv);
  if (piv.size() < m.rows() || piv.back() >= m.cols()) throw PreconditionError("matrix is singular");
  return aug.block(0, m.cols(), m.rows(), m.cols());
}

template <class F>
F determinant(DenseMatrix<F> m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  F det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && is_zero(m(sel, col))) ++sel;
    if (sel == n) return F(0);
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(sel, c), m(col, c));
      det = -det;
    }
    det = det * m(col, col);
    const F inv = F(1) / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m(r, col))) continue;
      const F factor = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

/// Basis of span(a) ∩ span(b).
template <class F>
DenseMatrix<F> intersect(const DenseMatrix<F>& a, const DenseMatrix<F>& b) {
  if (a.cols() == 0 || b.cols() == 0) return DenseMatrix<F>(a.rows(), 0);
  DenseMatrix<F> ns = nullspace(DenseMatrix<F>::hstack(a, -b));
  return column_basis(a * ns.block(0, 0, a.cols(), ns.cols()));
}

/// Basis of span(a) + span(b).
template <class F>
DenseMatrix<F> sum_spaces(const DenseMatrix<F>& a, const DenseMatrix<F>& b) {
  return column_basis(DenseMatrix<F>::hstack(a, b));
}

template <class F>
bool same_span(const DenseMatrix<F>& a, const DenseMatrix<F>& b) {
  const std::size_t ra = rank(a);
  return ra == rank(b) && ra == rank(DenseMatrix<F>::hstack(a, b));
}

/// span(a) ⊆ span(b).
template <class F>
bool contained_in(const DenseMatrix<F>& a, const DenseMatrix<F>& b) {
  return rank(DenseMatrix<F>::hstack(b, a)) == rank(b);
}

inline CMatrix to_complex(const QMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < m.cols(); ++k) c(r, k) = Scalar(m(r, k));
  return c;
}

/// Leading principal minors of a Hermitian/real-symmetric matrix, in order.
inline std::vector<Scalar> leading_minors(const CMatrix& m) {
  std::vector<Scalar> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) out.push_back(determinant(m.block(0, 0, k, k)));
  return out;
}

}  // namespace tgk
