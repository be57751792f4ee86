#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tgk/genstruct.hpp"

namespace tgk {

/// Action of a k-torus through k commuting generating vector fields.
class TorusAction {
public:
  TorusAction() = default;
  TorusAction(ChartPtr chart, std::vector<VectorField> generators)
      : chart_(std::move(chart)), gens_(std::move(generators)) {
    for (const auto& g : gens_) require_same_chart(chart_, g.chart());
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (!lie_bracket(gens_[i], gens_[j]).is_zero())
          throw ValidationError("generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
  }

  const ChartPtr& chart() const { return chart_; }
  std::size_t rank() const { return gens_.size(); }
  const VectorField& operator[](std::size_t i) const { return gens_.at(i); }
  const std::vector<VectorField>& generators() const { return gens_; }

  bool preserves(const RingElement& f) const {
    for (const auto& g : gens_)
      if (!g.apply(f).is_zero()) return false;
    return true;
  }

  bool preserves(const DiffForm& a) const {
    for (const auto& g : gens_)
      if (!lie_derivative(g, a).is_zero()) return false;
    return true;
  }

  /// Generators as the columns of an n x k matrix at p.
  CMatrix generator_matrix(const EvalPoint& p) const {
    CMatrix m(chart_->dim(), gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = 0; j < chart_->dim(); ++j) m(j, i) = gens_[i][j].evaluate(p);
    return m;
  }

  /// Pointwise independence of the generators on the declared free locus.
  CheckOutcome check_free(const std::vector<EvalPoint>& points) const {
    CheckOutcome out;
    for (const auto& p : points) {
      std::size_t r = tgk::rank(generator_matrix(p));
      if (r != gens_.size()) out.fail("generator rank at " + p.str(), std::to_string(r));
    }
    return out;
  }

private:
  ChartPtr chart_;
  std::vector<VectorField> gens_;
};

/// Element of (Omega(M) (x) S(g*))^G: multi-degree in the dual symbols u_1..u_k -> form.
class EquivariantForm {
public:
  using MultiDegree = std::vector<int>;

  EquivariantForm() = default;
  EquivariantForm(ChartPtr chart, std::size_t rank) : chart_(std::move(chart)), rank_(rank) {}

  /// A plain form placed in polynomial degree zero.
  static EquivariantForm from_form(const DiffForm& a, std::size_t rank) {
    EquivariantForm e(a.chart(), rank);
    e.add(MultiDegree(rank, 0), a);
    return e;
  }

  /// H + sum_i alpha^i u_i.
  static EquivariantForm three_form_with_moment(const DiffForm& H, const std::vector<DiffForm>& alpha) {
    EquivariantForm e = from_form(H, alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      MultiDegree d(alpha.size(), 0);
      d[i] = 1;
      e.add(d, alpha[i]);
    }
    return e;
  }

  void add(const MultiDegree& d, const DiffForm& a) {
    if (d.size() != rank_) throw ValidationError("multi-degree length differs from the torus rank");
    require_same_chart(chart_, a.chart());
    auto it = terms_.find(d);
    if (it == terms_.end()) {
      if (!a.is_zero()) terms_.emplace(d, a);
      return;
    }
    it->second += a;
    if (it->second.is_zero()) terms_.erase(it);
  }

  const ChartPtr& chart() const { return chart_; }
  std::size_t rank() const { return rank_; }
  const std::map<MultiDegree, DiffForm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degrees (form degree + 2|d|) present; a homogeneous form has one.
  std::vector<std::size_t> total_degrees() const {
    std::vector<std::size_t> out;
    for (const auto& [d, a] : terms_) {
      std::size_t t = a.degree();
      for (int x : d) t += 2 * static_cast<std::size_t>(x);
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
  }

  friend bool operator==(const EquivariantForm& a, const EquivariantForm& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [d, a] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + a.str() + ")";
      for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i]) s += "*u" + std::to_string(i + 1) + (d[i] > 1 ? "^" + std::to_string(d[i]) : "");
    }
    return s;
  }

private:
  ChartPtr chart_;
  std::size_t rank_ = 0;
  std::map<MultiDegree, DiffForm> terms_;
};

/// d_G = d - sum_i i_{xi_i} (x) u_i on invariant cochains.
inline EquivariantForm cartan_d(const EquivariantForm& eta, const TorusAction& action) {
  if (eta.rank() != action.rank()) throw PreconditionError("equivariant form rank differs from the action rank");
  EquivariantForm out(eta.chart(), eta.rank());
  for (const auto& [d, a] : eta.terms()) {
    if (!action.preserves(a)) throw PreconditionError("cartan_d needs invariant components");
    out.add(d, exterior_d(a));
    if (a.degree() == 0) continue;
    for (std::size_t i = 0; i < action.rank(); ++i) {
      auto up = d;
      ++up[i];
      out.add(up, -interior(action[i], a));
    }
  }
  return out;
}

struct ClosureReport : CheckOutcome {
  bool closed_twist = true;    // dH = 0
  bool contraction = true;     // i_i H = d alpha^i
  bool antisymmetry = true;    // i_i alpha^j + i_j alpha^i = 0
};

/// The three component identities of d_G(H + alpha) = 0, checked directly.
inline ClosureReport is_equivariantly_closed(const DiffForm& H, const std::vector<DiffForm>& alpha,
                                             const TorusAction& action) {
  if (H.degree() != 3) throw PreconditionError("H must be a 3-form");
  if (alpha.size() != action.rank()) throw PreconditionError("one moment 1-form per generator required");
  ClosureReport rep;
  DiffForm dH = exterior_d(H);
  if (!dH.is_zero()) {
    rep.closed_twist = false;
    rep.fail("dH", clip(dH.str()));
  }
  for (std::size_t i = 0; i < action.rank(); ++i) {
    DiffForm r = interior(action[i], H) - exterior_d(alpha[i]);
    if (!r.is_zero()) {
      rep.contraction = false;
      rep.fail("i_xi" + std::to_string(i + 1) + " H - d alpha^" + std::to_string(i + 1), clip(r.str()));
    }
  }
  for (std::size_t i = 0; i < action.rank(); ++i)
    for (std::size_t j = i; j < action.rank(); ++j) {
      RingElement s = evaluate_one_form(alpha[j], action[i]) + evaluate_one_form(alpha[i], action[j]);
      if (!s.is_zero()) {
        rep.antisymmetry = false;
        rep.fail("alpha^" + std::to_string(j + 1) + "(xi" + std::to_string(i + 1) + ") + alpha^" +
                     std::to_string(i + 1) + "(xi" + std::to_string(j + 1) + ")",
                 clip(s.str()));
      }
    }
  return rep;
}

/// Invariant with all generator contractions zero.
inline bool is_basic(const DiffForm& a, const TorusAction& action) {
  if (!action.preserves(a)) return false;
  if (a.degree() == 0) return true;
  for (const auto& g : action.generators())
    if (!interior(g, a).is_zero()) return false;
  return true;
}

struct MomentData {
  std::vector<RingElement> f;
  std::vector<DiffForm> alpha;

  static MomentData untwisted(std::vector<RingElement> f) {
    MomentData md;
    for (const auto& fi : f) md.alpha.emplace_back(fi.chart(), 1);
    md.f = std::move(f);
    return md;
  }

  friend bool operator==(const MomentData& a, const MomentData& b) { return a.f == b.f && a.alpha == b.alpha; }
};

/// xi_M + alpha^xi - i df^xi as a complex section.
inline GenSection moment_section(const TorusAction& action, const MomentData& md, std::size_t i) {
  return {action[i], md.alpha.at(i) - Scalar::i() * exterior_d(md.f.at(i))};
}

/// L_xi on TM + T*M: [xi, Y] + L_xi b.
inline GenSection lie_derivative(const VectorField& xi, const GenSection& u) {
  return {lie_bracket(xi, u.vec), lie_derivative(xi, u.form)};
}

/// Frame sections where L_xi J differs from zero, as (generator, column) witnesses.
inline CheckOutcome check_action_preserves(const GenStructure& J, const TorusAction& action) {
  CheckOutcome out;
  const auto& chart = J.chart();
  const std::size_t n = J.dim();
  for (std::size_t i = 0; i < action.rank(); ++i) {
    if (!action.preserves(J.twist())) out.fail("L_xi" + std::to_string(i + 1) + " H", "nonzero");
    for (std::size_t a = 0; a < 2 * n; ++a) {
      std::vector<RingElement> e(2 * n, RingElement::zero(chart));
      e[a] = RingElement::one(chart);
      GenSection ea = GenSection::from_column(chart, e);
      GenSection Jea = GenSection::from_column(chart, J.mat().apply(e));
      auto lhs = lie_derivative(action[i], Jea).to_column();
      auto rhs = J.mat().apply(lie_derivative(action[i], ea).to_column());
      for (std::size_t r = 0; r < 2 * n; ++r)
        if (!(lhs[r] == rhs[r])) {
          out.fail("L_xi" + std::to_string(i + 1) + " J column " + std::to_string(a), clip((lhs[r] - rhs[r]).str()));
          break;
        }
    }
  }
  return out;
}

struct MomentReport : CheckOutcome {
  bool in_eigenbundle = true;
  bool equivariant = true;
  bool preserved = true;
};

/// Verifies J v = i v for v = xi_M + alpha^xi - i df^xi, plus invariance of
/// f, alpha and of J itself.
inline MomentReport check_moment_map(const GenStructure& J, const TorusAction& action, const MomentData& md) {
  require_same_chart(J.chart(), action.chart());
  if (md.f.size() != action.rank() || md.alpha.size() != action.rank())
    throw PreconditionError("moment data must have one component per generator");
  if (!check_algebraic(J).passed) throw PreconditionError("structure fails the algebraic check");
  if (!check_integrable(J).passed) throw PreconditionError("structure fails the integrability check");
  MomentReport rep;
  for (std::size_t i = 0; i < action.rank(); ++i) {
    auto v = moment_section(action, md, i).to_column();
    auto Jv = J.mat().apply(v);
    for (std::size_t r = 0; r < v.size(); ++r) {
      RingElement res = Jv[r] - Scalar::i() * v[r];
      if (!res.is_zero()) {
        rep.in_eigenbundle = false;
        rep.fail("J v - i v for generator " + std::to_string(i + 1) + " entry " + std::to_string(r), clip(res.str()));
      }
    }
    if (!action.preserves(md.f[i])) {
      rep.equivariant = false;
      rep.fail("f^" + std::to_string(i + 1) + " invariance", clip(md.f[i].str()));
    }
    if (!action.preserves(md.alpha[i])) {
      rep.equivariant = false;
      rep.fail("alpha^" + std::to_string(i + 1) + " invariance", clip(md.alpha[i].str()));
    }
  }
  CheckOutcome pres = check_action_preserves(J, action);
  if (!pres.passed) rep.preserved = false;
  rep.merge(pres);
  return rep;
}

/// alpha^xi -> alpha^xi + i_xi B for an invariant 2-form B.
inline MomentData moment_b_transform(const DiffForm& B, const MomentData& md, const TorusAction& action) {
  if (B.degree() != 2) throw ValidationError("B-transform needs a 2-form");
  if (!action.preserves(B)) throw PreconditionError("B is not invariant");
  MomentData out = md;
  for (std::size_t i = 0; i < action.rank(); ++i) out.alpha.at(i) += interior(action[i], B);
  return out;
}

struct Connection {
  std::vector<DiffForm> theta;
};

/// theta_i(xi_j) = delta_ij and invariance.
inline CheckOutcome check_connection(const Connection& c, const TorusAction& action) {
  CheckOutcome out;
  if (c.theta.size() != action.rank()) {
    out.fail("connection", "expected " + std::to_string(action.rank()) + " one-forms");
    return out;
  }
  for (std::size_t i = 0; i < action.rank(); ++i) {
    if (c.theta[i].degree() != 1) {
      out.fail("theta" + std::to_string(i + 1), "not a 1-form");
      continue;
    }
    for (std::size_t j = 0; j < action.rank(); ++j) {
      RingElement v = evaluate_one_form(c.theta[i], action[j]);
      RingElement want = i == j ? RingElement::one(action.chart()) : RingElement::zero(action.chart());
      if (!(v == want))
        out.fail("theta" + std::to_string(i + 1) + "(xi" + std::to_string(j + 1) + ")", clip(v.str()));
    }
    if (!action.preserves(c.theta[i])) out.fail("theta" + std::to_string(i + 1) + " invariance", "L_xi theta != 0");
  }
  return out;
}

/// Gamma = -sum_i alpha^i ^ theta_i + beta,  beta = sum_{i<j} alpha^j(xi_i) theta_i ^ theta_j,
/// so that i_xi Gamma = alpha^xi and H + dGamma is basic.
inline DiffForm gamma_from_connection(const DiffForm& H, const MomentData& md, const Connection& c,
                                      const TorusAction& action) {
  if (!is_equivariantly_closed(H, md.alpha, action).passed)
    throw PreconditionError("H + alpha is not equivariantly closed");
  if (!check_connection(c, action).passed) throw PreconditionError("connection invariants fail");
  const std::size_t k = action.rank();
  DiffForm gamma(action.chart(), 2);
  for (std::size_t i = 0; i < k; ++i) gamma -= wedge(md.alpha[i], c.theta[i]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      gamma += evaluate_one_form(md.alpha[j], action[i]) * wedge(c.theta[i], c.theta[j]);
  for (std::size_t i = 0; i < k; ++i)
    if (!(interior(action[i], gamma) == md.alpha[i])) throw Error("i_xi Gamma != alpha^xi");
  if (!action.preserves(gamma)) throw Error("Gamma is not invariant");
  if (!is_basic(H + exterior_d(gamma), action)) throw Error("H + dGamma is not basic");
  return gamma;
}

/// e^{-Gamma} J: twist H + dGamma with trivial moment one-form.
struct GammaTransform {
  DiffForm gamma;
  GenStructure J;
  MomentData md;
};

inline GammaTransform trivialize_moment_form(const GenStructure& J, const MomentData& md, const Connection& c,
                                             const TorusAction& action) {
  DiffForm gamma = gamma_from_connection(J.twist(), md, c, action);
  return {gamma, b_transform_structure(-gamma, J), moment_b_transform(-gamma, md, action)};
}

}  // namespace tgk
