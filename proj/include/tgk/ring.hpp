#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tgk/chart.hpp"
#include "tgk/scalar.hpp"

namespace tgk {

/// Exponent vector over a chart: polynomial degree on affine coordinates,
/// Fourier frequency (e^{i k x}) on periodic ones.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exps(n, 0) {}

  bool is_one() const {
    for (int e : exps)
      if (e != 0) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
    return r;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

class EvalPoint;

/// Finite sum of Gaussian-rational multiples of monomials on a chart, kept in
/// canonical form (no zero coefficients), so equality is structural.
class RingElement {
public:
  using TermMap = std::map<Monomial, Scalar>;

  RingElement() = default;
  explicit RingElement(ChartPtr chart) : chart_(std::move(chart)) {}

  static RingElement constant(const ChartPtr& chart, const Scalar& c) {
    RingElement r(chart);
    if (!c.is_zero()) r.terms_.emplace(Monomial(chart->dim()), c);
    return r;
  }

  static RingElement zero(const ChartPtr& chart) { return RingElement(chart); }
  static RingElement one(const ChartPtr& chart) { return constant(chart, Scalar(1)); }

  /// The affine coordinate function x_i.
  static RingElement coordinate(const ChartPtr& chart, std::size_t i) {
    if (chart->is_periodic(i))
      throw ValidationError("polynomial degree on periodic coordinate '" + chart->coord(i).name + "'");
    Monomial m(chart->dim());
    m.exps[i] = 1;
    RingElement r(chart);
    r.terms_.emplace(std::move(m), Scalar(1));
    return r;
  }

  /// e^{i k x_i} on a periodic coordinate.
  static RingElement exponential(const ChartPtr& chart, std::size_t i, int k) {
    if (!chart->is_periodic(i))
      throw ValidationError("exponential on affine coordinate '" + chart->coord(i).name + "'");
    Monomial m(chart->dim());
    m.exps[i] = k;
    RingElement r(chart);
    r.terms_.emplace(std::move(m), Scalar(1));
    return r;
  }

  static RingElement from_terms(const ChartPtr& chart, const TermMap& terms) {
    RingElement r(chart);
    for (const auto& [m, c] : terms) r.add_term(m, c);
    return r;
  }

  const ChartPtr& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::optional<Scalar> as_constant() const {
    if (terms_.empty()) return Scalar(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
    return std::nullopt;
  }

  /// Units of the ring are c * e^{i k.x} with no affine factor.
  bool is_unit() const {
    if (terms_.size() != 1) return false;
    const auto& m = terms_.begin()->first;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (!chart_->is_periodic(i) && m.exps[i] != 0) return false;
    return true;
  }

  RingElement inverse() const {
    if (!is_unit()) throw PreconditionError("element " + str() + " is not a unit of the ring");
    const auto& [m, c] = *terms_.begin();
    Monomial inv(m.exps.size());
    for (std::size_t i = 0; i < m.exps.size(); ++i) inv.exps[i] = -m.exps[i];
    RingElement r(chart_);
    r.terms_.emplace(std::move(inv), Scalar(1) / c);
    return r;
  }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  RingElement& operator+=(const RingElement& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  RingElement& operator-=(const RingElement& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
  RingElement& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator-(const RingElement& a) {
    RingElement r = a;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    ChartPtr chart = a.chart_ ? a.chart_ : b.chart_;
    if (a.chart_ && b.chart_) require_same_chart(a.chart_, b.chart_);
    RingElement r(chart);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend RingElement operator*(RingElement a, const Scalar& s) { return a *= s; }
  friend RingElement operator*(const Scalar& s, RingElement a) { return a *= s; }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    if (a.chart_ && b.chart_ && !same_chart(a.chart_, b.chart_)) return false;
    return a.terms_ == b.terms_;
  }

  RingElement pow(unsigned e) const {
    RingElement r = one(chart_);
    RingElement base = *this;
    while (e) {
      if (e & 1u) r *= base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return r;
  }

  /// Complex conjugation: coefficients conjugated, e^{ikx} -> e^{-ikx}.
  RingElement conj() const {
    RingElement r(chart_);
    for (const auto& [m, c] : terms_) {
      Monomial mc = m;
      for (std::size_t i = 0; i < mc.exps.size(); ++i)
        if (chart_->is_periodic(i)) mc.exps[i] = -mc.exps[i];
      r.terms_.emplace(std::move(mc), c.conj());
    }
    return r;
  }

  bool is_real() const { return *this == conj(); }

  RingElement partial(std::size_t j) const {
    RingElement r(chart_);
    const bool periodic = chart_->is_periodic(j);
    for (const auto& [m, c] : terms_) {
      const int e = m.exps[j];
      if (e == 0) continue;
      Monomial md = m;
      if (periodic) {
        r.add_term(md, c * Scalar(Rational(0), Rational(e)));
      } else {
        md.exps[j] = e - 1;
        r.add_term(md, c * Scalar(e));
      }
    }
    return r;
  }

  /// Replace the affine coordinate x_j by the constant `value`.
  RingElement substitute(std::size_t j, const Rational& value) const {
    if (chart_->is_periodic(j)) throw PreconditionError("cannot substitute a periodic coordinate");
    RingElement r(chart_);
    for (const auto& [m, c] : terms_) {
      Monomial ms = m;
      Rational factor = 1;
      for (int e = 0; e < m.exps[j]; ++e) factor *= value;
      ms.exps[j] = 0;
      r.add_term(ms, c * Scalar(factor));
    }
    return r;
  }

  Scalar evaluate(const EvalPoint& p) const;

  std::string str() const;

private:
  void adopt(const RingElement& o) {
    if (!chart_) chart_ = o.chart_;
    else if (o.chart_) require_same_chart(chart_, o.chart_);
  }

  ChartPtr chart_;
  TermMap terms_;
};

/// A point of the chart: affine coordinates take rational values, periodic
/// coordinates take an integer number q of quarter turns (value q*pi/2), so
/// every exponential evaluates to one of 1, i, -1, -i.
class EvalPoint {
public:
  EvalPoint() = default;

  EvalPoint(ChartPtr chart, std::vector<Rational> values)
      : chart_(std::move(chart)), values_(std::move(values)) {
    if (values_.size() != chart_->dim()) throw ValidationError("point does not assign every coordinate");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      values_[i].canonicalize();
      if (chart_->is_periodic(i) && values_[i].get_den() != 1)
        throw ValidationError("periodic coordinate '" + chart_->coord(i).name +
                              "' needs an integer number of quarter turns");
    }
  }

  /// Build from name -> value; every coordinate must be present.
  static EvalPoint from_map(const ChartPtr& chart, const std::map<std::string, Rational>& values) {
    std::vector<Rational> v(chart->dim());
    for (const auto& [name, val] : values) v[chart->require_index(name)] = val;
    for (std::size_t i = 0; i < chart->dim(); ++i)
      if (!values.count(chart->coord(i).name))
        throw ValidationError("missing assignment for coordinate '" + chart->coord(i).name + "'");
    return EvalPoint(chart, std::move(v));
  }

  const ChartPtr& chart() const { return chart_; }
  const Rational& value(std::size_t i) const { return values_.at(i); }
  long quarter_turns(std::size_t i) const { return values_.at(i).get_num().get_si(); }
  const std::vector<Rational>& values() const { return values_; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) s += ", ";
      s += chart_->coord(i).name + "=" + values_[i].get_str();
      if (chart_->is_periodic(i)) s += "q";
    }
    return s + ")";
  }

private:
  ChartPtr chart_;
  std::vector<Rational> values_;
};

inline Scalar RingElement::evaluate(const EvalPoint& p) const {
  if (chart_) require_same_chart(chart_, p.chart());
  Scalar total(0);
  for (const auto& [m, c] : terms_) {
    Scalar v = c;
    long quarter = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (p.chart()->is_periodic(i)) {
        quarter += static_cast<long>(m.exps[i]) * p.quarter_turns(i);
      } else {
        Rational x = 1;
        for (int e = 0; e < m.exps[i]; ++e) x *= p.value(i);
        v *= Scalar(x);
      }
    }
    total += v * Scalar::i_power(quarter);
  }
  return total;
}

namespace detail {

inline std::string monomial_factors(const ChartModel& chart, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    const int e = m.exps[i];
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    if (chart.is_periodic(i)) {
      s += "E(" + chart.coord(i).name + ";" + std::to_string(e) + ")";
    } else {
      s += chart.coord(i).name;
      if (e != 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace detail

/// Canonical text in the expression grammar; parsing it back gives the same
/// element.
inline std::string RingElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const std::string factors = detail::monomial_factors(*chart_, m);
    // Pull a leading sign out of purely real or purely imaginary coefficients.
    bool negative = false;
    Scalar shown = c;
    if ((c.is_real() && sgn(c.re()) < 0) || (sgn(c.re()) == 0 && sgn(c.im()) < 0)) {
      negative = true;
      shown = -c;
    }
    std::string coef = shown.str();
    std::string term;
    if (factors.empty()) term = coef;
    else if (shown == Scalar(1)) term = factors;
    else term = coef + "*" + factors;
    if (first) out += negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const RingElement& r) { return os << r.str(); }

}  // namespace tgk
