#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tgk/ring.hpp"

namespace tgk {

/// X = sum_j X^j d/dx_j in the coordinate frame.
class VectorField {
public:
  VectorField() = default;
  explicit VectorField(const ChartPtr& chart) : chart_(chart), comps_(chart->dim(), RingElement::zero(chart)) {}
  VectorField(const ChartPtr& chart, std::vector<RingElement> comps) : chart_(chart), comps_(std::move(comps)) {
    if (comps_.size() != chart_->dim()) throw ValidationError("vector field needs one component per coordinate");
    for (const auto& c : comps_) require_same_chart(chart_, c.chart());
  }

  /// The coordinate field d/dx_j.
  static VectorField coordinate(const ChartPtr& chart, std::size_t j) {
    VectorField v(chart);
    v.comps_.at(j) = RingElement::one(chart);
    return v;
  }

  const ChartPtr& chart() const { return chart_; }
  std::size_t dim() const { return comps_.size(); }
  const RingElement& operator[](std::size_t j) const { return comps_.at(j); }
  RingElement& operator[](std::size_t j) { return comps_.at(j); }
  const std::vector<RingElement>& components() const { return comps_; }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const RingElement& c) { return c.is_zero(); });
  }

  /// X(f) = sum_j X^j df/dx_j.
  RingElement apply(const RingElement& f) const {
    require_same_chart(chart_, f.chart());
    RingElement r = RingElement::zero(chart_);
    for (std::size_t j = 0; j < comps_.size(); ++j)
      if (!comps_[j].is_zero()) r += comps_[j] * f.partial(j);
    return r;
  }

  VectorField& operator+=(const VectorField& o) {
    require_same_chart(chart_, o.chart_);
    for (std::size_t j = 0; j < comps_.size(); ++j) comps_[j] += o.comps_[j];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    require_same_chart(chart_, o.chart_);
    for (std::size_t j = 0; j < comps_.size(); ++j) comps_[j] -= o.comps_[j];
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const RingElement& f, VectorField v) {
    for (auto& c : v.comps_) c = f * c;
    return v;
  }
  friend VectorField operator*(const Scalar& s, VectorField v) {
    for (auto& c : v.comps_) c *= s;
    return v;
  }
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return same_chart(a.chart_, b.chart_) && a.comps_ == b.comps_;
  }

  VectorField conj() const {
    VectorField v = *this;
    for (auto& c : v.comps_) c = c.conj();
    return v;
  }

  std::string str() const {
    std::string s;
    for (std::size_t j = 0; j < comps_.size(); ++j) {
      if (comps_[j].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + comps_[j].str() + ")*d/d" + chart_->coord(j).name;
    }
    return s.empty() ? "0" : s;
  }

private:
  ChartPtr chart_;
  std::vector<RingElement> comps_;
};

/// Degree-k differential form stored on strictly increasing index tuples.
/// Degrees above the chart dimension are allowed and always zero.
class DiffForm {
public:
  using Index = std::vector<std::size_t>;

  DiffForm() = default;
  DiffForm(const ChartPtr& chart, std::size_t degree) : chart_(chart), degree_(degree) {}

  static DiffForm function(const RingElement& f) {
    DiffForm w(f.chart(), 0);
    w.add(Index{}, f);
    return w;
  }

  /// dx_j.
  static DiffForm coordinate(const ChartPtr& chart, std::size_t j) {
    DiffForm w(chart, 1);
    w.add(Index{j}, RingElement::one(chart));
    return w;
  }

  /// Accumulate coeff * dx_{idx[0]} ^ ... ^ dx_{idx[k-1]}; the tuple may be
  /// in any order (sign and repeats are resolved here).
  void add(Index idx, const RingElement& coeff) {
    if (idx.size() != degree_) throw ValidationError("index tuple length differs from form degree");
    if (coeff.is_zero()) return;
    require_same_chart(chart_, coeff.chart());
    for (auto i : idx)
      if (i >= chart_->dim()) throw ValidationError("form index out of range");
    bool negative = false;
    for (std::size_t i = 1; i < idx.size(); ++i)
      for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
        if (idx[j - 1] == idx[j]) return;
        std::swap(idx[j - 1], idx[j]);
        negative = !negative;
      }
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) {
      coeffs_.emplace(std::move(idx), negative ? -coeff : coeff);
      return;
    }
    if (negative) it->second -= coeff;
    else it->second += coeff;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  const ChartPtr& chart() const { return chart_; }
  std::size_t degree() const { return degree_; }
  const std::map<Index, RingElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient on a strictly increasing tuple (zero if absent).
  RingElement coeff(const Index& idx) const {
    auto it = coeffs_.find(idx);
    return it == coeffs_.end() ? RingElement::zero(chart_) : it->second;
  }

  /// The function of a 0-form.
  RingElement as_function() const {
    if (degree_ != 0) throw PreconditionError("form is not a function");
    return coeff(Index{});
  }

  DiffForm& operator+=(const DiffForm& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.coeffs_) add(idx, c);
    return *this;
  }
  DiffForm& operator-=(const DiffForm& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.coeffs_) add(idx, -c);
    return *this;
  }
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator-(DiffForm a) {
    for (auto& [idx, c] : a.coeffs_) c = -c;
    return a;
  }
  friend DiffForm operator*(const RingElement& f, const DiffForm& a) {
    DiffForm r(a.chart_, a.degree_);
    for (const auto& [idx, c] : a.coeffs_) r.add(idx, f * c);
    return r;
  }
  friend DiffForm operator*(const Scalar& s, const DiffForm& a) {
    DiffForm r(a.chart_, a.degree_);
    for (const auto& [idx, c] : a.coeffs_) r.add(idx, c * s);
    return r;
  }
  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.degree_ == b.degree_ && same_chart(a.chart_, b.chart_) && a.coeffs_ == b.coeffs_;
  }

  DiffForm conj() const {
    DiffForm r(chart_, degree_);
    for (const auto& [idx, c] : coeffs_) r.add(idx, c.conj());
    return r;
  }

  bool is_real() const { return *this == conj(); }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [idx, c] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")";
      for (std::size_t k = 0; k < idx.size(); ++k)
        s += std::string(k ? "^" : "*") + "d" + chart_->coord(idx[k]).name;
    }
    return s;
  }

private:
  void check_compatible(const DiffForm& o) const {
    require_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw PreconditionError("adding forms of different degree");
  }

  ChartPtr chart_;
  std::size_t degree_ = 0;
  std::map<Index, RingElement> coeffs_;
};

inline DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a.chart(), b.chart());
  DiffForm r(a.chart(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.coeffs())
    for (const auto& [ib, cb] : b.coeffs()) {
      DiffForm::Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add(std::move(idx), ca * cb);
    }
  return r;
}

inline DiffForm exterior_d(const DiffForm& a) {
  const auto& chart = a.chart();
  DiffForm r(chart, a.degree() + 1);
  for (const auto& [idx, c] : a.coeffs())
    for (std::size_t j = 0; j < chart->dim(); ++j) {
      RingElement dc = c.partial(j);
      if (dc.is_zero()) continue;
      DiffForm::Index ij{j};
      ij.insert(ij.end(), idx.begin(), idx.end());
      r.add(std::move(ij), dc);
    }
  return r;
}

inline DiffForm exterior_d(const RingElement& f) { return exterior_d(DiffForm::function(f)); }

/// Contraction: i_X (c dx_{i0}^...^dx_{ik}) = sum_r (-1)^r X^{ir} c (...omit ir...).
inline DiffForm interior(const VectorField& X, const DiffForm& a) {
  require_same_chart(X.chart(), a.chart());
  if (a.degree() == 0) return DiffForm(a.chart(), 0);
  DiffForm r(a.chart(), a.degree() - 1);
  for (const auto& [idx, c] : a.coeffs())
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const RingElement& xi = X[idx[pos]];
      if (xi.is_zero()) continue;
      DiffForm::Index rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t q = 0; q < idx.size(); ++q)
        if (q != pos) rest.push_back(idx[q]);
      RingElement term = xi * c;
      r.add(std::move(rest), pos % 2 ? -term : term);
    }
  return r;
}

/// L_X = d i_X + i_X d.
inline DiffForm lie_derivative(const VectorField& X, const DiffForm& a) {
  DiffForm r = interior(X, exterior_d(a));
  if (a.degree() > 0) r += exterior_d(interior(X, a));
  return r;
}

inline RingElement lie_derivative(const VectorField& X, const RingElement& f) { return X.apply(f); }

inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  require_same_chart(X.chart(), Y.chart());
  VectorField r(X.chart());
  for (std::size_t j = 0; j < X.dim(); ++j) r[j] = X.apply(Y[j]) - Y.apply(X[j]);
  return r;
}

/// alpha(X) for a 1-form.
inline RingElement evaluate_one_form(const DiffForm& alpha, const VectorField& X) {
  if (alpha.degree() != 1) throw PreconditionError("expected a 1-form");
  return interior(X, alpha).as_function();
}

}  // namespace tgk
