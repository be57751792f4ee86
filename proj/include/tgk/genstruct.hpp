#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tgk/report.hpp"
#include "tgk/ringmatrix.hpp"

namespace tgk {

/// X + alpha, a section of (complexified) TM + T*M.
struct GenSection {
  VectorField vec;
  DiffForm form;

  GenSection() = default;
  GenSection(VectorField v, DiffForm f) : vec(std::move(v)), form(std::move(f)) {
    if (form.degree() != 1) throw ValidationError("section form part must be a 1-form");
    require_same_chart(vec.chart(), form.chart());
  }

  static GenSection vector(const VectorField& v) { return {v, DiffForm(v.chart(), 1)}; }
  static GenSection covector(const DiffForm& a) { return {VectorField(a.chart()), a}; }

  /// Components in the frame (d/dx_1..d/dx_n, dx_1..dx_n).
  static GenSection from_column(const ChartPtr& chart, const std::vector<RingElement>& col) {
    const std::size_t n = chart->dim();
    if (col.size() != 2 * n) throw ValidationError("section column must have 2n entries");
    VectorField v(chart, std::vector<RingElement>(col.begin(), col.begin() + static_cast<long>(n)));
    DiffForm a(chart, 1);
    for (std::size_t j = 0; j < n; ++j) a.add({j}, col[n + j]);
    return {std::move(v), std::move(a)};
  }

  std::vector<RingElement> to_column() const {
    const std::size_t n = vec.dim();
    std::vector<RingElement> col = vec.components();
    for (std::size_t j = 0; j < n; ++j) col.push_back(form.coeff({j}));
    return col;
  }

  const ChartPtr& chart() const { return vec.chart(); }

  GenSection conj() const { return {vec.conj(), form.conj()}; }

  friend GenSection operator+(const GenSection& a, const GenSection& b) { return {a.vec + b.vec, a.form + b.form}; }
  friend GenSection operator-(const GenSection& a, const GenSection& b) { return {a.vec - b.vec, a.form - b.form}; }
  friend GenSection operator*(const RingElement& f, const GenSection& a) { return {f * a.vec, f * a.form}; }
  friend GenSection operator*(const Scalar& s, const GenSection& a) { return {s * a.vec, s * a.form}; }
  friend bool operator==(const GenSection& a, const GenSection& b) { return a.vec == b.vec && a.form == b.form; }

  bool is_zero() const { return vec.is_zero() && form.is_zero(); }

  std::string str() const { return vec.str() + " + " + form.str(); }
};

/// <X + a, Y + b> = (a(Y) + b(X)) / 2.
inline RingElement pairing(const GenSection& u, const GenSection& v) {
  require_same_chart(u.chart(), v.chart());
  return (evaluate_one_form(u.form, v.vec) + evaluate_one_form(v.form, u.vec)) * Scalar(Rational(1, 2));
}

/// Constant Gram matrix of the pairing in the coordinate frame.
inline CMatrix pairing_gram(std::size_t n) {
  CMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) g(i, n + i) = g(n + i, i) = Scalar(Rational(1, 2));
  return g;
}

/// [X+a, Y+b]_H = [X,Y] + L_X b - L_Y a - (1/2) d(i_X b - i_Y a) + i_Y i_X H.
inline GenSection courant_bracket(const GenSection& u, const GenSection& v, const DiffForm& H) {
  require_same_chart(u.chart(), v.chart());
  if (H.degree() != 3) throw PreconditionError("twist must be a 3-form");
  require_same_chart(u.chart(), H.chart());
  const VectorField& X = u.vec;
  const VectorField& Y = v.vec;
  DiffForm form = lie_derivative(X, v.form) - lie_derivative(Y, u.form);
  DiffForm contractions = interior(X, v.form) - interior(Y, u.form);
  form -= Scalar(Rational(1, 2)) * exterior_d(contractions);
  if (!H.is_zero()) form += interior(Y, interior(X, H));
  return {lie_bracket(X, Y), std::move(form)};
}

/// e^B (X + a) = X + a + i_X B.
inline GenSection b_transform_section(const DiffForm& B, const GenSection& u) {
  if (B.degree() != 2) throw ValidationError("B-transform needs a 2-form");
  require_same_chart(B.chart(), u.chart());
  return {u.vec, u.form + interior(u.vec, B)};
}

/// e^B = [[1, 0], [B, 1]] as a 2n x 2n ring matrix.
inline RingMatrix b_field_matrix(const DiffForm& B) {
  const auto& chart = B.chart();
  const std::size_t n = chart->dim();
  RingMatrix m = RingMatrix::identity(chart, 2 * n);
  m.set_block(n, 0, two_form_matrix(B));
  return m;
}

/// A generalized (almost) complex structure: mat in the frame
/// (d/dx, dx) plus its closed background 3-form.
class GenStructure {
public:
  GenStructure() = default;
  GenStructure(RingMatrix mat, DiffForm twist) : mat_(std::move(mat)), twist_(std::move(twist)) {
    const auto& chart = mat_.chart();
    if (mat_.rows() != 2 * chart->dim() || mat_.cols() != 2 * chart->dim())
      throw ValidationError("structure matrix must be 2n x 2n");
    if (twist_.degree() != 3) throw ValidationError("twist must be a 3-form");
    require_same_chart(chart, twist_.chart());
    if (!exterior_d(twist_).is_zero()) throw ValidationError("twist not closed");
    if (!mat_.is_real()) throw ValidationError("structure matrix entries must be real");
  }

  const ChartPtr& chart() const { return mat_.chart(); }
  std::size_t dim() const { return chart()->dim(); }
  const RingMatrix& mat() const { return mat_; }
  const DiffForm& twist() const { return twist_; }

  GenStructure with_twist(DiffForm twist) const { return {mat_, std::move(twist)}; }

  /// P = (Id - i J)/2, projecting onto the +i eigenbundle L.
  RingMatrix projector() const {
    return Scalar(Rational(1, 2)) * (RingMatrix::identity(chart(), 2 * dim()) - Scalar::i() * mat_);
  }

  /// (Id + i J)/2, which annihilates exactly L.
  RingMatrix coprojector() const {
    return Scalar(Rational(1, 2)) * (RingMatrix::identity(chart(), 2 * dim()) + Scalar::i() * mat_);
  }

  GenStructure negated() const { return {-mat_, twist_}; }

private:
  RingMatrix mat_;
  DiffForm twist_;
};

inline DiffForm zero_twist(const ChartPtr& chart) { return DiffForm(chart, 3); }

/// J_omega = [[0, -omega^{-1}], [omega, 0]].
inline GenStructure symplectic_structure(const DiffForm& omega, const DiffForm& twist) {
  RingMatrix w = two_form_matrix(omega);
  const std::size_t n = omega.chart()->dim();
  RingMatrix mat(omega.chart(), 2 * n, 2 * n);
  mat.set_block(0, n, -w.inverse());
  mat.set_block(n, 0, w);
  return {mat, twist};
}

/// J_I = diag(-I, I^*) for a complex structure I on TM.
inline GenStructure complex_structure(const RingMatrix& I, const DiffForm& twist) {
  const std::size_t n = I.chart()->dim();
  if (I.rows() != n || I.cols() != n) throw ValidationError("complex structure must be n x n");
  if (!(I * I == -RingMatrix::identity(I.chart(), n))) throw ValidationError("I^2 != -1");
  RingMatrix mat(I.chart(), 2 * n, 2 * n);
  mat.set_block(0, 0, -I);
  mat.set_block(n, n, I.transpose());
  return {mat, twist};
}

/// e^B J e^{-B}.  With the bracket above, [e^B u, e^B v]_H = e^B [u, v]_{H+dB},
/// so the transformed structure is integrable for the twist H - dB.
inline GenStructure b_transform_structure(const DiffForm& B, const GenStructure& J) {
  if (B.degree() != 2) throw ValidationError("B-transform needs a 2-form");
  if (!B.is_real()) throw PreconditionError("B must be real");
  require_same_chart(B.chart(), J.chart());
  RingMatrix mat = b_field_matrix(B) * J.mat() * b_field_matrix(-B);
  return {mat, J.twist() - exterior_d(B)};
}

/// The generalized complex pair of a bihermitian structure (g, I+, I-):
/// J1 = I+ on C+ and I- on C-, J2 = I+ on C+ and -I- on C-, where
/// C+- = {X +- g X}.  Constant g only needs a unit determinant.
inline std::pair<GenStructure, GenStructure> bihermitian_pair(const RingMatrix& g, const RingMatrix& Ip,
                                                              const RingMatrix& Im, const DiffForm& twist) {
  const auto& chart = g.chart();
  const std::size_t n = chart->dim();
  for (const RingMatrix* I : {&Ip, &Im}) {
    if (I->rows() != n || I->cols() != n) throw ValidationError("complex structure must be n x n");
    if (!(*I * *I == -RingMatrix::identity(chart, n))) throw ValidationError("I^2 != -1");
    if (!(I->transpose() * g * *I == g)) throw ValidationError("complex structure is not g-orthogonal");
  }
  if (!(g.transpose() == g)) throw ValidationError("metric must be symmetric");
  RingMatrix gi = g.inverse();
  auto build = [&](const RingMatrix& Im2) {
    RingMatrix m(chart, 2 * n, 2 * n);
    Scalar h(Rational(1, 2));
    m.set_block(0, 0, h * (Ip + Im2));
    m.set_block(0, n, h * ((Ip - Im2) * gi));
    m.set_block(n, 0, h * (g * (Ip - Im2)));
    m.set_block(n, n, h * (g * (Ip + Im2) * gi));
    return GenStructure(m, twist);
  };
  return {build(Im), build(-Im)};
}

struct AlgebraicReport : CheckOutcome {};

/// J^2 = -Id and J^T g J = g, entrywise.
inline AlgebraicReport check_algebraic(const GenStructure& J) {
  AlgebraicReport rep;
  const std::size_t n2 = 2 * J.dim();
  const auto& chart = J.chart();
  RingMatrix sq = J.mat() * J.mat() + RingMatrix::identity(chart, n2);
  for (std::size_t r = 0; r < n2; ++r)
    for (std::size_t c = 0; c < n2; ++c)
      if (!sq(r, c).is_zero())
        rep.fail("J^2+1 (" + std::to_string(r) + "," + std::to_string(c) + ")", clip(sq(r, c).str()));
  RingMatrix g(chart, n2, n2);
  const std::size_t n = J.dim();
  for (std::size_t i = 0; i < n; ++i) g(i, n + i) = g(n + i, i) = RingElement::constant(chart, Scalar(Rational(1, 2)));
  RingMatrix orth = J.mat().transpose() * g * J.mat() - g;
  for (std::size_t r = 0; r < n2; ++r)
    for (std::size_t c = 0; c < n2; ++c)
      if (!orth(r, c).is_zero())
        rep.fail("J^T g J - g (" + std::to_string(r) + "," + std::to_string(c) + ")", clip(orth(r, c).str()));
  return rep;
}

struct IntegrabilityReport : CheckOutcome {
  std::size_t pairs_checked = 0;
};

/// Closure of L under the twisted bracket, tested on the 2n projector
/// columns (they span L pointwise; the checker also confirms P^2 = P and
/// rank P = n at the given points).
inline IntegrabilityReport check_integrable(const GenStructure& J, const std::vector<EvalPoint>& points = {}) {
  if (!check_algebraic(J).passed) throw PreconditionError("structure fails the algebraic check");
  IntegrabilityReport rep;
  const auto& chart = J.chart();
  const std::size_t n = J.dim();
  RingMatrix P = J.projector();
  RingMatrix Q = J.coprojector();
  if (!(P * P == P)) rep.fail("projector", "P^2 != P");
  for (const auto& p : points) {
    std::size_t r = rank(P.evaluate(p));
    if (r != n) rep.fail("projector rank at " + p.str(), std::to_string(r));
  }
  std::vector<GenSection> cols;
  for (std::size_t a = 0; a < 2 * n; ++a) {
    std::vector<RingElement> col(2 * n);
    for (std::size_t r = 0; r < 2 * n; ++r) col[r] = P(r, a);
    cols.push_back(GenSection::from_column(chart, col));
  }
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = a + 1; b < 2 * n; ++b) {
      if (cols[a].is_zero() || cols[b].is_zero()) continue;
      ++rep.pairs_checked;
      auto residual = Q.apply(courant_bracket(cols[a], cols[b], J.twist()).to_column());
      for (std::size_t r = 0; r < 2 * n; ++r)
        if (!residual[r].is_zero()) {
          rep.fail("columns (" + std::to_string(a) + "," + std::to_string(b) + ") entry " + std::to_string(r),
                   clip(residual[r].str()));
          break;
        }
    }
  return rep;
}

/// (dim - rank of the Poisson block)/2 at p, in complex dimensions.
inline std::size_t type_at(const GenStructure& J, const EvalPoint& p) {
  const std::size_t n = J.dim();
  std::size_t r = rank(J.mat().block(0, n, n, n).evaluate(p));
  if (r % 2 || n % 2) throw ValidationError("odd rank " + std::to_string(r) + " of the bivector block");
  return (n - r) / 2;
}

/// Type of a constant matrix written in a (tangent, cotangent) basis.
inline std::size_t type_of_matrix(const CMatrix& J) {
  const std::size_t n = J.rows() / 2;
  std::size_t r = rank(J.block(0, n, n, n));
  if (r % 2 || n % 2) throw ValidationError("odd rank " + std::to_string(r) + " of the bivector block");
  return (n - r) / 2;
}

struct GkPairReport : CheckOutcome {
  bool commute = true;
  std::vector<std::vector<Scalar>> minors;  // per sample point
};

/// Commuting pair with -J1 J2 positive definite for the pairing (Sylvester
/// criterion at the sample points).
inline GkPairReport check_gk_pair(const GenStructure& J1, const GenStructure& J2, const std::vector<EvalPoint>& points) {
  require_same_chart(J1.chart(), J2.chart());
  if (!(J1.twist() == J2.twist())) throw PreconditionError("structures have different twists");
  GkPairReport rep;
  RingMatrix comm = J1.mat() * J2.mat() - J2.mat() * J1.mat();
  const std::size_t n2 = 2 * J1.dim();
  for (std::size_t r = 0; r < n2; ++r)
    for (std::size_t c = 0; c < n2; ++c)
      if (!comm(r, c).is_zero()) {
        rep.commute = false;
        rep.fail("[J1,J2] (" + std::to_string(r) + "," + std::to_string(c) + ")", clip(comm(r, c).str()));
      }
  RingMatrix G = -(J1.mat() * J2.mat());
  CMatrix g = pairing_gram(J1.dim());
  for (const auto& p : points) {
    CMatrix gram = G.evaluate(p).transpose() * g;
    if (!(gram == gram.transpose())) rep.fail("metric Gram at " + p.str(), "not symmetric");
    auto minors = leading_minors(gram);
    for (std::size_t k = 0; k < minors.size(); ++k)
      if (!minors[k].is_real() || sgn(minors[k].re()) <= 0) {
        rep.fail("leading minor " + std::to_string(k + 1) + " at " + p.str(), minors[k].str());
        break;
      }
    rep.minors.push_back(std::move(minors));
  }
  return rep;
}

}  // namespace tgk
