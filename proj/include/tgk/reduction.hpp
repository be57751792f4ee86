#pragma once

// Fiberwise reduction at points of a level set.  All fibers are written in
// the frame (d/dx_1..d/dx_n, dx_1..dx_n); reduced fibers in the frame built
// from a complement T of the orbit directions inside ker df.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgk/chartmap.hpp"
#include "tgk/equivariant.hpp"

namespace tgk {

struct FiberData {
  EvalPoint point;
  std::size_t n = 0;  // real dimension of M
  std::size_t k = 0;  // torus rank
  CMatrix J;          // 2n x 2n
  CMatrix L;          // 2n x n, basis of the +i eigenspace
  CMatrix A;          // n x k, generators at the point
  CMatrix D;          // n x k, df^i at the point as columns
};

/// Ltᵀ g L = 0 for the pairing Gram matrix.
inline bool is_isotropic(const CMatrix& L) {
  CMatrix g = pairing_gram(L.rows() / 2);
  CMatrix s = L.transpose() * g * L;
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = 0; c < s.cols(); ++c)
      if (!s(r, c).is_zero()) return false;
  return true;
}

inline bool is_transverse_to_conj(const CMatrix& L) { return rank(CMatrix::hstack(L, conj(L))) == 2 * L.cols(); }

inline FiberData fiber_extract(const GenStructure& J, const TorusAction& action, const MomentData& md,
                               const std::vector<Rational>& level, const EvalPoint& p) {
  require_same_chart(J.chart(), action.chart());
  const std::size_t k = action.rank();
  if (md.f.size() != k || md.alpha.size() != k || level.size() != k)
    throw PreconditionError("moment data and level must have one entry per generator");
  for (std::size_t i = 0; i < k; ++i) {
    Scalar v = md.f[i].evaluate(p);
    if (!(v == Scalar(level[i])))
      throw PreconditionError("point " + p.str() + " is off the level set: f^" + std::to_string(i + 1) + " = " + v.str());
  }
  FiberData fd;
  fd.point = p;
  fd.n = J.dim();
  fd.k = k;
  fd.J = J.mat().evaluate(p);
  fd.L = column_basis(J.projector().evaluate(p));
  fd.A = action.generator_matrix(p);
  fd.D = CMatrix(fd.n, k);
  for (std::size_t i = 0; i < k; ++i) {
    DiffForm df = exterior_d(md.f[i]);
    for (std::size_t j = 0; j < fd.n; ++j) fd.D(j, i) = df.coeff({j}).evaluate(p);
  }
  if (fd.L.cols() != fd.n) throw PreconditionError("eigenspace has the wrong dimension at " + p.str());
  if (!is_isotropic(fd.L) || !is_transverse_to_conj(fd.L))
    throw PreconditionError("eigenspace is not a transverse Lagrangian at " + p.str());
  if (rank(fd.A) != k) throw PreconditionError("rank deficiency: the action is not free at " + p.str());
  if (rank(fd.D) != k) throw PreconditionError("rank deficiency: f is not a submersion at " + p.str());
  CMatrix pair = fd.D.transpose() * fd.A;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c)
      if (!pair(r, c).is_zero()) throw PreconditionError("df does not annihilate the orbit directions at " + p.str());
  for (std::size_t i = 0; i < k; ++i) {
    auto col = moment_section(action, md, i).to_column();
    CMatrix v(2 * fd.n, 1);
    for (std::size_t r = 0; r < 2 * fd.n; ++r) v(r, 0) = col[r].evaluate(p);
    if (!(fd.J * v == Scalar::i() * v))
      throw PreconditionError("moment section " + std::to_string(i + 1) + " is not in L at " + p.str());
  }
  return fd;
}

/// Coordinates on W / W^perp, W = ker df + ann(A):  q(X, a) = (c(X), a(T)).
struct QuotientFrame {
  std::size_t m = 0;  // real dimension of the quotient base
  CMatrix T;          // n x m, complement of A inside ker df
  CMatrix C;          // n x m, covectors in ann(A) dual to T
  CMatrix W;          // 2n x (2n - 2k)
  CMatrix Wperp;      // 2n x 2k
  CMatrix q;          // 2m x 2n
};

inline QuotientFrame quotient_frame(const CMatrix& A, const CMatrix& D) {
  const std::size_t n = A.rows(), k = A.cols();
  QuotientFrame qf;
  CMatrix ker_df = nullspace(D.transpose());
  std::vector<std::size_t> piv;
  CMatrix both = CMatrix::hstack(A, ker_df);
  rref(both, &piv);
  std::vector<std::size_t> extra;
  for (auto c : piv)
    if (c >= k) extra.push_back(c);
  qf.m = extra.size();
  if (qf.m + 2 * k != n) throw PreconditionError("orbit directions are not inside ker df");
  qf.T = CMatrix(n, qf.m);
  for (std::size_t i = 0; i < qf.m; ++i)
    for (std::size_t r = 0; r < n; ++r) qf.T(r, i) = both(r, extra[i]);
  CMatrix AT = CMatrix::hstack(A, qf.T);
  CMatrix rhs(k + qf.m, qf.m);
  for (std::size_t i = 0; i < qf.m; ++i) rhs(k + i, i) = Scalar(1);
  auto sol = solve(AT.transpose(), rhs);
  if (!sol) throw Error("no dual covectors for the quotient frame");
  qf.C = *sol;
  CMatrix annA = nullspace(A.transpose());
  qf.W = CMatrix(2 * n, ker_df.cols() + annA.cols());
  qf.W.set_block(0, 0, ker_df);
  qf.W.set_block(n, ker_df.cols(), annA);
  qf.Wperp = CMatrix(2 * n, 2 * k);
  qf.Wperp.set_block(0, 0, A);
  qf.Wperp.set_block(n, k, D);
  qf.q = CMatrix(2 * qf.m, 2 * n);
  qf.q.set_block(0, 0, qf.C.transpose());
  qf.q.set_block(qf.m, n, qf.T.transpose());
  return qf;
}

/// The complex structure with +i eigenspace span(L) and -i eigenspace its conjugate.
inline CMatrix structure_from_lagrangian(const CMatrix& L) {
  const std::size_t r = L.cols();
  CMatrix M = CMatrix::hstack(L, conj(L));
  if (rank(M) != 2 * r) throw PreconditionError("subspace meets its conjugate");
  CMatrix diag(2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) {
    diag(i, i) = Scalar::i();
    diag(r + i, r + i) = -Scalar::i();
  }
  return M * diag * inverse(M);
}

/// Maximal isotropy, transversality, J^2 = -1 and orthogonality on a fiber.
inline CheckOutcome check_fiber_structure(const CMatrix& L, const CMatrix& J, const std::string& where) {
  CheckOutcome out;
  const std::size_t m2 = J.rows();
  if (2 * L.cols() != m2) out.fail(where + " dim L", std::to_string(L.cols()) + " of " + std::to_string(m2));
  if (!is_isotropic(L)) out.fail(where + " isotropy", "L^T g L != 0");
  if (!is_transverse_to_conj(L)) out.fail(where + " transversality", "L meets conj(L)");
  if (!(J * J == -CMatrix::identity(m2))) out.fail(where + " J^2", "J^2 != -1");
  CMatrix g = pairing_gram(m2 / 2);
  if (!(J.transpose() * g * J == g)) out.fail(where + " orthogonality", "J^T g J != g");
  if (!is_real(J)) out.fail(where + " reality", "J has non-real entries");
  return out;
}

struct ReducedFiber {
  QuotientFrame frame;
  CMatrix Ltilde;  // 2m x m
  CMatrix J;       // 2m x 2m
  CheckOutcome checks;
};

/// q(S ∩ W) as a column basis.
inline CMatrix reduce_subspace(const CMatrix& S, const CMatrix& W, const CMatrix& q) {
  return column_basis(q * intersect(S, W));
}

inline ReducedFiber dirac_reduce_fiber(const FiberData& fd) {
  ReducedFiber rf;
  rf.frame = quotient_frame(fd.A, fd.D);
  const auto& qf = rf.frame;
  CMatrix g = pairing_gram(fd.n);
  // W^perp must lie in W and be annihilated by q
  if (!contained_in(qf.Wperp, qf.W)) rf.checks.fail("W^perp in W", "not contained");
  CMatrix wpw = qf.Wperp.transpose() * g * qf.W;
  for (std::size_t r = 0; r < wpw.rows(); ++r)
    for (std::size_t c = 0; c < wpw.cols(); ++c)
      if (!wpw(r, c).is_zero()) rf.checks.fail("W^perp orthogonal to W", wpw(r, c).str());
  if (!(qf.q * qf.Wperp == CMatrix(2 * qf.m, qf.Wperp.cols()))) rf.checks.fail("q(W^perp)", "nonzero");
  CMatrix gw = qf.W.transpose() * g * qf.W;
  CMatrix qw = qf.q * qf.W;
  if (!(qw.transpose() * pairing_gram(qf.m) * qw == gw)) rf.checks.fail("induced pairing", "q does not carry g");
  rf.Ltilde = reduce_subspace(fd.L, qf.W, qf.q);
  if (rf.Ltilde.cols() != qf.m || !is_transverse_to_conj(rf.Ltilde)) {
    rf.checks.fail("reduced eigenspace", "dimension " + std::to_string(rf.Ltilde.cols()) + " or meets its conjugate");
    rf.J = CMatrix(2 * qf.m, 2 * qf.m);
    return rf;
  }
  rf.J = structure_from_lagrangian(rf.Ltilde);
  rf.checks.merge(check_fiber_structure(rf.Ltilde, rf.J, "reduced"));
  return rf;
}

/// Level set first (W1 = ker df + T*), then the group (W2 = T + ann(A)),
/// landing in the same final frame so the matrices are comparable.
inline CMatrix two_step_reduce(const FiberData& fd, const QuotientFrame& final_frame) {
  const std::size_t n = fd.n, k = fd.k, m = final_frame.m;
  const std::size_t n1 = n - k;
  CMatrix K1 = CMatrix::hstack(fd.A, final_frame.T);  // basis of ker df
  CMatrix W1(2 * n, n1 + n);
  W1.set_block(0, 0, K1);
  W1.set_block(n, n1, CMatrix::identity(n));
  auto E = solve(K1.transpose(), CMatrix::identity(n1));
  if (!E) throw Error("level-set frame is singular");
  CMatrix q1(2 * n1, 2 * n);
  q1.set_block(0, 0, E->transpose());
  q1.set_block(n1, n, K1.transpose());
  CMatrix L1 = reduce_subspace(fd.L, W1, q1);
  // on V1 the orbit directions are the first k coordinate vectors
  CMatrix W2(2 * n1, n1 + m);
  W2.set_block(0, 0, CMatrix::identity(n1));
  for (std::size_t i = 0; i < m; ++i) W2(n1 + k + i, n1 + i) = Scalar(1);
  CMatrix q2(2 * m, 2 * n1);
  for (std::size_t i = 0; i < m; ++i) {
    q2(i, k + i) = Scalar(1);
    q2(m + i, n1 + k + i) = Scalar(1);
  }
  CMatrix L2 = reduce_subspace(L1, W2, q2);
  if (L2.cols() != m) throw PreconditionError("two-step reduction produced the wrong dimension");
  return structure_from_lagrangian(L2);
}

struct TypeReport : CheckOutcome {
  std::size_t upstairs = 0;
  std::size_t reduced = 0;
};

inline TypeReport reduced_type_check(const FiberData& fd, const ReducedFiber& rf) {
  TypeReport rep;
  rep.upstairs = type_of_matrix(fd.J);
  rep.reduced = type_of_matrix(rf.J);
  if (rep.upstairs != rep.reduced)
    rep.fail("type at " + fd.point.str(), std::to_string(rep.reduced) + " != " + std::to_string(rep.upstairs));
  return rep;
}

/// e^B on a fiber of real dimension n from the matrix of i_X B.
inline CMatrix fiber_b_matrix(const CMatrix& B) {
  const std::size_t n = B.rows();
  CMatrix e = CMatrix::identity(2 * n);
  e.set_block(n, 0, B);
  return e;
}

/// The restriction of a 2-form to the quotient frame: B~ = T^t B T.
inline CMatrix reduce_two_form(const CMatrix& B, const QuotientFrame& qf) { return qf.T.transpose() * B * qf.T; }

struct GkReducedFiber {
  ReducedFiber first;
  CMatrix J2;
  CMatrix G;
  CheckOutcome checks;
};

/// Reduces J1 by Dirac reduction and G = -J1 J2 through its +1 eigenspace,
/// then sets J2~ = J1~ G~.
inline GkReducedFiber gk_reduce_fiber(const FiberData& fd1, const CMatrix& J2) {
  GkReducedFiber out;
  const std::size_t n = fd1.n;
  CMatrix J1 = fd1.J;
  if (!(J1 * J2 == J2 * J1)) throw PreconditionError("structures do not commute at " + fd1.point.str());
  out.first = dirac_reduce_fiber(fd1);
  out.checks.merge(out.first.checks);
  const auto& qf = out.first.frame;
  const std::size_t m = qf.m;
  CMatrix G = -(J1 * J2);
  CMatrix Cplus = nullspace(G - CMatrix::identity(2 * n));
  if (Cplus.cols() != n) throw PreconditionError("generalized metric has the wrong +1 eigenspace");
  CMatrix Cr = reduce_subspace(Cplus, qf.W, qf.q);
  if (Cr.cols() != m) {
    out.checks.fail("reduced C+", "dimension " + std::to_string(Cr.cols()) + ", expected " + std::to_string(m));
    out.J2 = out.G = CMatrix(2 * m, 2 * m);
    return out;
  }
  CMatrix gm = pairing_gram(m);
  CMatrix Cminus = nullspace(Cr.transpose() * gm);
  CMatrix basis = CMatrix::hstack(Cr, Cminus);
  if (rank(basis) != 2 * m) {
    out.checks.fail("reduced C+", "degenerate for the pairing");
    out.J2 = out.G = CMatrix(2 * m, 2 * m);
    return out;
  }
  CMatrix sign = CMatrix::identity(2 * m);
  for (std::size_t i = m; i < 2 * m; ++i) sign(i, i) = Scalar(-1);
  out.G = basis * sign * inverse(basis);
  out.J2 = out.first.J * out.G;
  const CMatrix& R1 = out.first.J;
  const CMatrix& R2 = out.J2;
  if (!(R2 * R2 == -CMatrix::identity(2 * m))) out.checks.fail("reduced J2^2", "J2^2 != -1");
  if (!(R1 * R2 == R2 * R1)) out.checks.fail("reduced commute", "J1 J2 != J2 J1");
  if (!(R2.transpose() * gm * R2 == gm)) out.checks.fail("reduced J2 orthogonality", "J2^T g J2 != g");
  CMatrix gram = (-(R1 * R2)).transpose() * gm;
  auto minors = leading_minors(gram);
  for (std::size_t i = 0; i < minors.size(); ++i)
    if (!minors[i].is_real() || sgn(minors[i].re()) <= 0) {
      out.checks.fail("reduced metric minor " + std::to_string(i + 1), minors[i].str());
      break;
    }
  return out;
}

struct TypeFormulaReport : CheckOutcome {
  std::size_t type1 = 0, type1_reduced = 0;
  std::size_t type2 = 0, type2_reduced = 0;
  std::size_t k = 0;
  std::size_t intersection = 0;  // dim_C (A_C ∩ pi(L2))
  long predicted = 0;            // type2 - k + 2 * intersection
};

inline TypeFormulaReport gk_type_formula_check(const FiberData& fd1, const CMatrix& J2, const GkReducedFiber& gk) {
  TypeFormulaReport rep;
  const std::size_t n = fd1.n;
  rep.k = fd1.k;
  rep.type1 = type_of_matrix(fd1.J);
  rep.type1_reduced = type_of_matrix(gk.first.J);
  rep.type2 = type_of_matrix(J2);
  rep.type2_reduced = type_of_matrix(gk.J2);
  CMatrix P2 = Scalar(Rational(1, 2)) * (CMatrix::identity(2 * n) - Scalar::i() * J2);
  CMatrix piL2 = column_basis(P2.block(0, 0, n, 2 * n));
  rep.intersection = intersect(fd1.A, piL2).cols();
  rep.predicted = static_cast<long>(rep.type2) - static_cast<long>(rep.k) + 2 * static_cast<long>(rep.intersection);
  if (rep.type1 != rep.type1_reduced)
    rep.fail("type(J1~) at " + fd1.point.str(), std::to_string(rep.type1_reduced) + " != " + std::to_string(rep.type1));
  if (rep.predicted != static_cast<long>(rep.type2_reduced))
    rep.fail("type(J2~) at " + fd1.point.str(),
             std::to_string(rep.type2_reduced) + " != predicted " + std::to_string(rep.predicted));
  return rep;
}

// ---------------------------------------------------------------------------
// Section-level closure on L ∩ df^perp.

/// Sections of L annihilating every df^i, built from projector columns by
/// Cramer combinations so no division is needed.
inline std::vector<GenSection> df_perp_sections(const GenStructure& J, const MomentData& md) {
  const auto& chart = J.chart();
  const std::size_t n = J.dim(), k = md.f.size();
  RingMatrix P = J.projector();
  std::vector<GenSection> cols;
  for (std::size_t a = 0; a < 2 * n; ++a) {
    std::vector<RingElement> c(2 * n);
    for (std::size_t r = 0; r < 2 * n; ++r) c[r] = P(r, a);
    GenSection s = GenSection::from_column(chart, c);
    if (!s.is_zero()) cols.push_back(std::move(s));
  }
  std::vector<DiffForm> df;
  for (const auto& f : md.f) df.push_back(exterior_d(f));
  // phi(i, a) = df^i(pi u_a)
  RingMatrix phi(chart, k, cols.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t a = 0; a < cols.size(); ++a) phi(i, a) = evaluate_one_form(df[i], cols[a].vec);
  // greedy choice of k pivot columns with a nonzero k x k minor
  std::vector<std::size_t> piv;
  for (std::size_t a = 0; a < cols.size() && piv.size() < k; ++a) {
    std::vector<std::size_t> trial = piv;
    trial.push_back(a);
    RingMatrix sub(chart, trial.size(), trial.size());
    for (std::size_t i = 0; i < trial.size(); ++i)
      for (std::size_t j = 0; j < trial.size(); ++j) sub(i, j) = phi(i, trial[j]);
    if (!sub.determinant().is_zero()) piv = trial;
  }
  if (piv.size() < k) throw PreconditionError("df does not pair nondegenerately with L");
  std::vector<GenSection> out;
  for (std::size_t a = 0; a < cols.size(); ++a) {
    if (std::find(piv.begin(), piv.end(), a) != piv.end()) continue;
    std::vector<std::size_t> idx = piv;
    idx.push_back(a);
    GenSection w{VectorField(chart), DiffForm(chart, 1)};
    for (std::size_t s = 0; s <= k; ++s) {
      RingMatrix minor(chart, k, k);
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t cc = 0;
        for (std::size_t r = 0; r <= k; ++r)
          if (r != s) minor(i, cc++) = phi(i, idx[r]);
      }
      RingElement coeff = k == 0 ? RingElement::one(chart) : minor.determinant();
      if ((k - s) % 2) coeff = -coeff;
      w = w + coeff * cols[idx[s]];
    }
    if (!w.is_zero()) out.push_back(std::move(w));
  }
  return out;
}

/// Restriction to a level set as a chain of graph substitutions t_j -> (a - g)/c,
/// one per component f^i = c t_j + g with c a nonzero real constant.
using LevelRestriction = std::vector<ChartMap>;

inline ChartMap substitution_map(const ChartPtr& chart, std::size_t j, const RingElement& value) {
  std::vector<ChartMap::Assignment> assign;
  for (std::size_t l = 0; l < chart->dim(); ++l) {
    if (chart->is_periodic(l)) assign.emplace_back(PeriodicShift{l, 0});
    else if (l == j) assign.emplace_back(value);
    else assign.emplace_back(RingElement::coordinate(chart, l));
  }
  return ChartMap(chart, chart, std::move(assign));
}

inline RingElement restrict_to_level(RingElement r, const LevelRestriction& steps) {
  for (const auto& s : steps) r = s.pullback(r);
  return r;
}

inline std::optional<LevelRestriction> level_substitutions(const MomentData& md, const std::vector<Rational>& level) {
  LevelRestriction steps;
  if (md.f.empty()) return steps;
  const auto& chart = md.f[0].chart();
  std::vector<RingElement> cur = md.f;
  std::vector<bool> used(chart->dim(), false);
  for (std::size_t i = 0; i < cur.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < chart->dim() && !found; ++j) {
      if (chart->is_periodic(j) || used[j]) continue;
      auto c = cur[i].partial(j).as_constant();
      if (!c || c->is_zero() || !c->is_real()) continue;
      RingElement g = cur[i] - RingElement::constant(chart, *c) * RingElement::coordinate(chart, j);
      RingElement value = (RingElement::constant(chart, Scalar(level[i])) - g) * Scalar(1 / c->re());
      steps.push_back(substitution_map(chart, j, value));
      for (auto& f : cur) f = steps.back().pullback(f);
      used[j] = found = true;
    }
    if (!found) return std::nullopt;
  }
  for (std::size_t i = 0; i < cur.size(); ++i)
    if (!(cur[i] == RingElement::constant(chart, Scalar(level[i])))) return std::nullopt;
  return steps;
}

struct ClosureCheckReport : CheckOutcome {
  bool skipped = false;
  std::string reason;
  std::size_t sections = 0;
  std::size_t pairs = 0;
};

/// For the df^perp sections u, v of L: <[u,v]_H, df^i> = 0, [u,v]_H in L, and
/// <u, xi_M + alpha^xi> = 0.  `subs` restricts every residual to the level set.
inline ClosureCheckReport closure_residuals(const GenStructure& J, const TorusAction& action, const MomentData& md,
                                            const LevelRestriction& subs) {
  ClosureCheckReport rep;
  auto secs = df_perp_sections(J, md);
  rep.sections = secs.size();
  RingMatrix Q = J.coprojector();
  std::vector<GenSection> dfs, orbit;
  for (std::size_t i = 0; i < md.f.size(); ++i) {
    dfs.push_back(GenSection::covector(exterior_d(md.f[i])));
    orbit.push_back({action[i], md.alpha[i]});
  }
  for (std::size_t a = 0; a < secs.size(); ++a)
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      RingElement r = restrict_to_level(pairing(secs[a], orbit[i]), subs);
      if (!r.is_zero()) rep.fail("<u" + std::to_string(a) + ", xi" + std::to_string(i + 1) + " + alpha>", clip(r.str()));
    }
  for (std::size_t a = 0; a < secs.size(); ++a)
    for (std::size_t b = a + 1; b < secs.size(); ++b) {
      ++rep.pairs;
      GenSection br = courant_bracket(secs[a], secs[b], J.twist());
      for (std::size_t i = 0; i < dfs.size(); ++i) {
        RingElement r = restrict_to_level(pairing(br, dfs[i]), subs);
        if (!r.is_zero())
          rep.fail("<[u" + std::to_string(a) + ",u" + std::to_string(b) + "], df" + std::to_string(i + 1) + ">",
                   clip(r.str()));
      }
      auto res = Q.apply(br.to_column());
      for (std::size_t r = 0; r < res.size(); ++r) {
        RingElement x = restrict_to_level(res[r], subs);
        if (!x.is_zero()) {
          rep.fail("[u" + std::to_string(a) + ",u" + std::to_string(b) + "] leaves L, entry " + std::to_string(r),
                   clip(x.str()));
          break;
        }
      }
    }
  return rep;
}

/// Closure checks restricted to the level set by exact substitution.
inline ClosureCheckReport level_closure_property(const GenStructure& J, const TorusAction& action,
                                                 const MomentData& md, const std::vector<Rational>& level) {
  if (action.rank() == 0) {
    ClosureCheckReport rep;
    rep.reason = "trivial action";
    return rep;
  }
  auto subs = level_substitutions(md, level);
  if (!subs) {
    ClosureCheckReport rep;
    rep.skipped = true;
    rep.reason = "level set is not a coordinate slice";
    return rep;
  }
  return closure_residuals(J, action, md, *subs);
}

/// The same checks as identities on all of M.
inline ClosureCheckReport df_perp_frame_closure(const GenStructure& J, const TorusAction& action,
                                                const MomentData& md) {
  if (action.rank() == 0) {
    ClosureCheckReport rep;
    rep.reason = "trivial action";
    return rep;
  }
  return closure_residuals(J, action, md, {});
}

}  // namespace tgk
