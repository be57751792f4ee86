#pragma once

#include <vector>

#include "tgk/forms.hpp"
#include "tgk/linalg.hpp"

namespace tgk {

/// Matrix of ring elements; bundle maps written in the coordinate frame.
class RingMatrix {
public:
  RingMatrix() = default;
  RingMatrix(const ChartPtr& chart, std::size_t rows, std::size_t cols)
      : chart_(chart), rows_(rows), cols_(cols), data_(rows * cols, RingElement::zero(chart)) {}

  static RingMatrix identity(const ChartPtr& chart, std::size_t n) {
    RingMatrix m(chart, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RingElement::one(chart);
    return m;
  }

  const ChartPtr& chart() const { return chart_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  RingElement& operator()(std::size_t r, std::size_t c) { return data_.at(r * cols_ + c); }
  const RingElement& operator()(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix shape mismatch in product");
    require_same_chart(a.chart_, b.chart_);
    RingMatrix p(a.chart_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const RingElement& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) p(i, j) += aik * b(k, j);
      }
    return p;
  }
  friend RingMatrix operator+(RingMatrix a, const RingMatrix& b) {
    a.check_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend RingMatrix operator-(RingMatrix a, const RingMatrix& b) {
    a.check_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend RingMatrix operator-(RingMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend RingMatrix operator*(const Scalar& s, RingMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// m * v for a column of ring elements.
  std::vector<RingElement> apply(const std::vector<RingElement>& v) const {
    if (v.size() != cols_) throw PreconditionError("vector length mismatch");
    std::vector<RingElement> out(rows_, RingElement::zero(chart_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (!(*this)(i, k).is_zero() && !v[k].is_zero()) out[i] += (*this)(i, k) * v[k];
    return out;
  }

  RingMatrix transpose() const {
    RingMatrix t(chart_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  RingMatrix conj() const {
    RingMatrix m = *this;
    for (auto& x : m.data_) x = x.conj();
    return m;
  }

  bool is_real() const {
    for (const auto& x : data_)
      if (!x.is_real()) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_constant() const {
    for (const auto& x : data_)
      if (!x.as_constant()) return false;
    return true;
  }

  RingMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    RingMatrix b(chart_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const RingMatrix& b) {
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  CMatrix evaluate(const EvalPoint& p) const {
    CMatrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).evaluate(p);
    return m;
  }

  /// Laplace expansion; matrices here are at most a few rows.
  RingElement determinant() const {
    if (rows_ != cols_) throw PreconditionError("determinant of a non-square matrix");
    std::vector<std::size_t> rows(rows_), cols(cols_);
    for (std::size_t i = 0; i < rows_; ++i) rows[i] = cols[i] = i;
    return minor_det(rows, cols);
  }

  /// Inverse via the adjugate; requires the determinant to be a unit.
  RingMatrix inverse() const {
    if (rows_ != cols_) throw PreconditionError("inverse of a non-square matrix");
    RingElement det = determinant();
    if (!det.is_unit()) throw PreconditionError("matrix determinant " + det.str() + " is not a unit");
    RingElement inv_det = det.inverse();
    RingMatrix adj(chart_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        std::vector<std::size_t> rows, cols;
        for (std::size_t r = 0; r < rows_; ++r)
          if (r != j) rows.push_back(r);
        for (std::size_t c = 0; c < cols_; ++c)
          if (c != i) cols.push_back(c);
        RingElement cof = rows.empty() ? RingElement::one(chart_) : minor_det(rows, cols);
        adj(i, j) = ((i + j) % 2 ? -cof : cof) * inv_det;
      }
    return adj;
  }

  std::vector<std::vector<std::string>> str_rows() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r].push_back((*this)(r, c).str());
    return out;
  }

private:
  RingElement minor_det(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    if (rows.size() == 1) return (*this)(rows[0], cols[0]);
    RingElement det = RingElement::zero(chart_);
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const RingElement& a = (*this)(rows[0], cols[k]);
      if (a.is_zero()) continue;
      std::vector<std::size_t> sub_cols;
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (c != k) sub_cols.push_back(cols[c]);
      RingElement term = a * minor_det(sub_rows, sub_cols);
      if (k % 2) det -= term;
      else det += term;
    }
    return det;
  }

  void check_shape(const RingMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw PreconditionError("matrix shape mismatch");
  }

  ChartPtr chart_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RingElement> data_;
};

/// The 2-form B as the bundle map X -> i_X B (column j holds i_{d/dx_j} B).
inline RingMatrix two_form_matrix(const DiffForm& B) {
  if (B.degree() != 2) throw ValidationError("expected a 2-form");
  const auto& chart = B.chart();
  const std::size_t n = chart->dim();
  RingMatrix m(chart, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    DiffForm col = interior(VectorField::coordinate(chart, j), B);
    for (const auto& [idx, c] : col.coeffs()) m(idx[0], j) = c;
  }
  return m;
}

}  // namespace tgk
