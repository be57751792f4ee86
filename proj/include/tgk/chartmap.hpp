#pragma once

#include <variant>

#include "tgk/forms.hpp"

namespace tgk {

/// Periodic target coordinate y = s + q*pi/2 for a periodic source
/// coordinate s.
struct PeriodicShift {
  std::size_t source = 0;
  long quarter_turns = 0;
};

/// Smooth map from `source` to `target`, given by the pull-back of every target
/// coordinate.  Affine target coordinates may be any ring element of the
/// source; periodic ones only a shifted periodic source coordinate, which keeps
/// pull-back inside the ring.
class ChartMap {
public:
  using Assignment = std::variant<RingElement, PeriodicShift>;

  ChartMap(ChartPtr source, ChartPtr target, std::vector<Assignment> assign)
      : source_(std::move(source)), target_(std::move(target)), assign_(std::move(assign)) {
    if (assign_.size() != target_->dim()) throw ValidationError("chart map must assign every target coordinate");
    for (std::size_t j = 0; j < assign_.size(); ++j) {
      if (target_->is_periodic(j)) {
        const auto* shift = std::get_if<PeriodicShift>(&assign_[j]);
        if (!shift || shift->source >= source_->dim() || !source_->is_periodic(shift->source))
          throw ValidationError("periodic target coordinate '" + target_->coord(j).name +
                                "' must map to a shifted periodic source coordinate");
      } else {
        const auto* f = std::get_if<RingElement>(&assign_[j]);
        if (!f) throw ValidationError("affine target coordinate '" + target_->coord(j).name + "' needs a function");
        require_same_chart(source_, f->chart());
      }
    }
  }

  const ChartPtr& source() const { return source_; }
  const ChartPtr& target() const { return target_; }

  RingElement pullback(const RingElement& f) const {
    require_same_chart(target_, f.chart());
    RingElement r = RingElement::zero(source_);
    for (const auto& [m, c] : f.terms()) {
      RingElement term = RingElement::constant(source_, c);
      for (std::size_t j = 0; j < m.exps.size(); ++j) {
        const int e = m.exps[j];
        if (e == 0) continue;
        if (const auto* shift = std::get_if<PeriodicShift>(&assign_[j])) {
          term = term * RingElement::exponential(source_, shift->source, e);
          term *= Scalar::i_power(static_cast<long>(e) * shift->quarter_turns);
        } else {
          term = term * std::get<RingElement>(assign_[j]).pow(static_cast<unsigned>(e));
        }
      }
      r += term;
    }
    return r;
  }

  /// Pull-back of dy_j.
  DiffForm pullback_differential(std::size_t j) const {
    if (const auto* shift = std::get_if<PeriodicShift>(&assign_[j])) return DiffForm::coordinate(source_, shift->source);
    return exterior_d(std::get<RingElement>(assign_[j]));
  }

  DiffForm pullback(const DiffForm& a) const {
    require_same_chart(target_, a.chart());
    DiffForm r(source_, a.degree());
    std::vector<DiffForm> dys;
    for (std::size_t j = 0; j < target_->dim(); ++j) dys.push_back(pullback_differential(j));
    for (const auto& [idx, c] : a.coeffs()) {
      DiffForm term = DiffForm::function(pullback(c));
      for (auto j : idx) term = wedge(term, dys[j]);
      r += term;
    }
    return r;
  }

private:
  ChartPtr source_;
  ChartPtr target_;
  std::vector<Assignment> assign_;
};

}  // namespace tgk
