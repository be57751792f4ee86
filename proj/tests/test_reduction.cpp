#include <gtest/gtest.h>

#include "test_support.hpp"

namespace tgk {
namespace {

using testing::E;

DiffForm dx(const ChartPtr& c, std::size_t j) { return DiffForm::coordinate(c, j); }

Rational q(long a, long b = 1) { return Rational(a, b); }

// Unit sphere in C^2, level f = 1/2 of the standard moment map.
struct KahlerC2 {
  ChartPtr c = testing::c2_chart();
  TorusAction act = testing::diagonal_circle(c);
  GenStructure J = symplectic_structure(testing::c2_omega(c), zero_twist(c));
  GenStructure JI = complex_structure(testing::c2_complex(c), zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "1/2*(x1^2 + y1^2 + x2^2 + y2^2)")});
  std::vector<Rational> level{q(1, 2)};

  std::vector<EvalPoint> points() const {
    std::vector<std::vector<Rational>> v{{1, 0, 0, 0},
                                         {0, 1, 0, 0},
                                         {0, 0, 1, 0},
                                         {0, 0, 0, 1},
                                         {q(3, 5), q(4, 5), 0, 0},
                                         {q(3, 5), 0, q(4, 5), 0},
                                         {q(1, 2), q(1, 2), q(1, 2), q(1, 2)}};
    std::vector<EvalPoint> out;
    for (auto& x : v) out.emplace_back(c, x);
    return out;
  }
};

TEST(FiberExtract, DimensionsAndPreconditions) {
  KahlerC2 k;
  FiberData fd = fiber_extract(k.J, k.act, k.md, k.level, EvalPoint(k.c, {1, 0, 0, 0}));
  EXPECT_EQ(fd.n, 4u);
  EXPECT_EQ(fd.k, 1u);
  EXPECT_EQ(fd.A.cols(), 1u);
  EXPECT_EQ(fd.D.cols(), 1u);
  EXPECT_EQ(fd.L.cols(), 4u);
  EXPECT_THROW(fiber_extract(k.J, k.act, k.md, k.level, EvalPoint(k.c, {1, 1, 0, 0})), PreconditionError);
  EXPECT_THROW(fiber_extract(k.J, k.act, k.md, {q(0)}, EvalPoint(k.c, {0, 0, 0, 0})), PreconditionError);
  EXPECT_THROW(fiber_extract(k.J, k.act, k.md, {q(1, 2), q(1)}, EvalPoint(k.c, {1, 0, 0, 0})), PreconditionError);
}

TEST(FiberExtract, RejectsSwappedRoles) {
  // the complex structure does not carry the moment data
  KahlerC2 k;
  EXPECT_THROW(fiber_extract(k.JI, k.act, k.md, k.level, EvalPoint(k.c, {1, 0, 0, 0})), PreconditionError);
}

TEST(DiracReduce, KahlerC2AtLevelPoints) {
  KahlerC2 k;
  for (const auto& p : k.points()) {
    FiberData fd = fiber_extract(k.J, k.act, k.md, k.level, p);
    ReducedFiber rf = dirac_reduce_fiber(fd);
    EXPECT_EQ(rf.frame.m, 2u);
    EXPECT_TRUE(rf.checks.passed) << p.str();
    TypeReport tr = reduced_type_check(fd, rf);
    EXPECT_TRUE(tr.passed);
    EXPECT_EQ(tr.reduced, 0u);
    EXPECT_TRUE(two_step_reduce(fd, rf.frame) == rf.J) << p.str();
  }
}

TEST(DiracReduce, QuotientFrameAnnihilatesWPerp) {
  KahlerC2 k;
  FiberData fd = fiber_extract(k.J, k.act, k.md, k.level, EvalPoint(k.c, {q(3, 5), 0, q(4, 5), 0}));
  QuotientFrame qf = quotient_frame(fd.A, fd.D);
  EXPECT_TRUE(contained_in(qf.Wperp, qf.W));
  EXPECT_TRUE(qf.q * qf.Wperp == CMatrix(4, 2));
  EXPECT_TRUE(qf.C.transpose() * qf.T == CMatrix::identity(2));
  EXPECT_TRUE(qf.C.transpose() * fd.A == CMatrix(2, 1));
}

TEST(DiracReduce, TrivialActionGivesTheFiber) {
  auto c = testing::c2_chart();
  TorusAction none(c, {});
  GenStructure J = symplectic_structure(testing::c2_omega(c), zero_twist(c));
  EvalPoint p(c, {2, q(-1, 3), 0, 5});
  FiberData fd = fiber_extract(J, none, MomentData{}, {}, p);
  ReducedFiber rf = dirac_reduce_fiber(fd);
  EXPECT_EQ(rf.frame.m, 4u);
  EXPECT_TRUE(rf.checks.passed);
  EXPECT_TRUE(rf.J == J.mat().evaluate(p));
}

TEST(DiracReduce, BasicBTransformCommutesWithReduction) {
  KahlerC2 k;
  DiffForm B = wedge(exterior_d(E(k.c, "x1^2 + y1^2")), exterior_d(E(k.c, "x1*x2 + y1*y2")));
  ASSERT_TRUE(is_basic(B, k.act));
  GenStructure JB = b_transform_structure(B, k.J);
  ASSERT_TRUE(check_moment_map(JB, k.act, k.md).passed);
  for (const auto& p : k.points()) {
    ReducedFiber plain = dirac_reduce_fiber(fiber_extract(k.J, k.act, k.md, k.level, p));
    FiberData fdB = fiber_extract(JB, k.act, k.md, k.level, p);
    ReducedFiber twisted = dirac_reduce_fiber(fdB);
    ASSERT_TRUE(twisted.checks.passed);
    CMatrix Bt = reduce_two_form(two_form_matrix(B).evaluate(p), plain.frame);
    CMatrix expect = fiber_b_matrix(Bt) * plain.J * fiber_b_matrix(-Bt);
    EXPECT_TRUE(twisted.J == expect) << p.str();
  }
}

// T^2 x R^2 x R^2 with the torus acting on x1, x2 and moment map (t1, t2).
struct CylinderPlane {
  ChartPtr c = make_chart({{"x1", CoordKind::periodic},
                           {"x2", CoordKind::periodic},
                           {"t1", CoordKind::affine},
                           {"t2", CoordKind::affine},
                           {"u", CoordKind::affine},
                           {"v", CoordKind::affine}});
  TorusAction act = testing::translations(c, 2);
  DiffForm omega = wedge(dx(c, 0), dx(c, 2)) + wedge(dx(c, 1), dx(c, 3)) + wedge(dx(c, 5), dx(c, 4));
  MomentData md = MomentData::untwisted({E(c, "t1"), E(c, "t2")});
  std::vector<Rational> level{q(1, 2), q(-1)};
};

TEST(GammaReduction, ConnectionChangeIsABasicBTransformDownstairs) {
  CylinderPlane s;
  const auto& c = s.c;
  GenStructure J = symplectic_structure(s.omega, zero_twist(c));
  DiffForm B = E(c, "t1") * wedge(dx(c, 0), dx(c, 1)) + E(c, "u") * wedge(dx(c, 0), dx(c, 5)) +
               E(c, "v^2") * wedge(dx(c, 1), dx(c, 4));
  GenStructure JB = b_transform_structure(B, J);
  MomentData mdB = moment_b_transform(B, s.md, s.act);
  ASSERT_TRUE(check_moment_map(JB, s.act, mdB).passed);
  Connection theta{{dx(c, 0), dx(c, 1)}};
  Connection theta2{{dx(c, 0) + dx(c, 4), dx(c, 1) + E(c, "t1") * dx(c, 5)}};
  GammaTransform g1 = trivialize_moment_form(JB, mdB, theta, s.act);
  GammaTransform g2 = trivialize_moment_form(JB, mdB, theta2, s.act);
  DiffForm diff = g1.gamma - g2.gamma;
  ASSERT_TRUE(is_basic(diff, s.act));
  for (const auto& pv : std::vector<std::vector<Rational>>{{0, 0, q(1, 2), -1, 0, 0}, {1, 3, q(1, 2), -1, 2, q(-3, 7)}}) {
    EvalPoint p(c, pv);
    ReducedFiber r1 = dirac_reduce_fiber(fiber_extract(g1.J, s.act, g1.md, s.level, p));
    ReducedFiber r2 = dirac_reduce_fiber(fiber_extract(g2.J, s.act, g2.md, s.level, p));
    ASSERT_EQ(r1.frame.m, 2u);
    EXPECT_TRUE(r1.checks.passed && r2.checks.passed);
    CMatrix Dt = reduce_two_form(two_form_matrix(diff).evaluate(p), r1.frame);
    EXPECT_TRUE(r2.J == fiber_b_matrix(Dt) * r1.J * fiber_b_matrix(-Dt)) << p.str();
  }
}

TEST(GammaReduction, FullTorusOnTorusCylinderReducesToAPoint) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  DiffForm omega = wedge(dx(c, 0), dx(c, 2)) + wedge(dx(c, 1), dx(c, 3));
  GenStructure J = symplectic_structure(omega, zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "t1"), E(c, "t2")});
  DiffForm B = E(c, "t1") * wedge(dx(c, 0), dx(c, 1));
  GammaTransform gt =
      trivialize_moment_form(b_transform_structure(B, J), moment_b_transform(B, md, act), {{dx(c, 0), dx(c, 1)}}, act);
  ReducedFiber rf = dirac_reduce_fiber(fiber_extract(gt.J, act, gt.md, {q(2), q(0)}, EvalPoint(c, {0, 1, 2, 0})));
  EXPECT_EQ(rf.frame.m, 0u);
  EXPECT_TRUE(rf.checks.passed);
}

TEST(GkReduce, KahlerC2TypeFormula) {
  KahlerC2 k;
  ASSERT_TRUE(check_gk_pair(k.J, k.JI, k.points()).passed);
  for (const auto& p : k.points()) {
    FiberData fd = fiber_extract(k.J, k.act, k.md, k.level, p);
    CMatrix J2 = k.JI.mat().evaluate(p);
    GkReducedFiber gk = gk_reduce_fiber(fd, J2);
    EXPECT_TRUE(gk.checks.passed) << p.str();
    TypeFormulaReport tf = gk_type_formula_check(fd, J2, gk);
    EXPECT_TRUE(tf.passed);
    EXPECT_EQ(tf.type1, 0u);
    EXPECT_EQ(tf.type2, 2u);
    EXPECT_EQ(tf.intersection, 0u);
    EXPECT_EQ(tf.type2_reduced, 1u);
  }
}

// Flat hyperkahler R^4 with quaternions I, J, K = IJ on the frame (x1, x2, t1, t2).
struct Quaternions {
  ChartPtr c = testing::torus_cylinder_chart();
  RingMatrix I{c, 4, 4}, Jq{c, 4, 4};
  Quaternions() {
    auto one = RingElement::one(c);
    I(2, 0) = one, I(0, 2) = -one, I(3, 1) = one, I(1, 3) = -one;
    Jq(1, 0) = one, Jq(0, 1) = -one, Jq(3, 2) = -one, Jq(2, 3) = one;
  }
  RingMatrix K() const { return I * Jq; }
};

TEST(GkReduce, BihermitianPairTypeFormula) {
  Quaternions h;
  const auto& c = h.c;
  auto [J1, J2] = bihermitian_pair(RingMatrix::identity(c, 4), h.I, h.K(), zero_twist(c));
  TorusAction act(c, {VectorField::coordinate(c, 0)});
  MomentData md{{E(c, "t1 - t2")}, {-dx(c, 1)}};
  ASSERT_TRUE(check_moment_map(J1, act, md).passed);
  std::vector<EvalPoint> pts{EvalPoint(c, {0, 0, 0, 0}), EvalPoint(c, {1, 2, q(3, 2), q(3, 2)})};
  ASSERT_TRUE(check_gk_pair(J1, J2, pts).passed);
  GammaTransform gt = trivialize_moment_form(J1, md, {{dx(c, 0)}}, act);
  GenStructure J2g = b_transform_structure(-gt.gamma, J2);
  ASSERT_TRUE(check_gk_pair(gt.J, J2g, pts).passed);
  for (const auto& p : pts) {
    FiberData fd = fiber_extract(gt.J, act, gt.md, {q(0)}, p);
    CMatrix M2 = J2g.mat().evaluate(p);
    GkReducedFiber gk = gk_reduce_fiber(fd, M2);
    EXPECT_TRUE(gk.checks.passed);
    TypeFormulaReport tf = gk_type_formula_check(fd, M2, gk);
    EXPECT_TRUE(tf.passed) << (tf.witnesses.empty() ? "" : tf.witnesses[0].location + ": " + tf.witnesses[0].value);
    EXPECT_EQ(tf.type1, 0u);
    EXPECT_EQ(tf.type2, 0u);
    EXPECT_EQ(tf.intersection, 1u);
    EXPECT_EQ(tf.predicted, 1);
  }
}

TEST(LevelClosure, TorusCylinderPasses) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  DiffForm omega = wedge(dx(c, 0), dx(c, 2)) + wedge(dx(c, 1), dx(c, 3));
  GenStructure J = symplectic_structure(omega, zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "t1"), E(c, "t2")});
  ClosureCheckReport rep = level_closure_property(J, act, md, {q(1), q(-2)});
  EXPECT_FALSE(rep.skipped);
  EXPECT_TRUE(rep.passed);
  EXPECT_GT(rep.sections, 0u);
  EXPECT_TRUE(df_perp_frame_closure(J, act, md).passed);
  // generalized moment data after an invariant B-transform
  DiffForm B = E(c, "t2") * wedge(dx(c, 0), dx(c, 3)) + E(c, "t1^2") * wedge(dx(c, 0), dx(c, 1));
  GenStructure JB = b_transform_structure(B, J);
  MomentData mdB = moment_b_transform(B, md, act);
  EXPECT_TRUE(level_closure_property(JB, act, mdB, {q(1), q(-2)}).passed);
}

TEST(LevelClosure, PerturbedMomentMapFails) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act(c, {VectorField::coordinate(c, 0)});
  DiffForm omega = wedge(dx(c, 0), dx(c, 2)) + wedge(dx(c, 1), dx(c, 3));
  GenStructure J = symplectic_structure(omega, zero_twist(c));
  EXPECT_TRUE(level_closure_property(J, act, MomentData::untwisted({E(c, "t1")}), {q(1)}).passed);
  MomentData bad = MomentData::untwisted({E(c, "t1 + t2^2")});
  EXPECT_FALSE(check_moment_map(J, act, bad).passed);
  ClosureCheckReport rep = level_closure_property(J, act, bad, {q(1)});
  EXPECT_FALSE(rep.skipped);
  EXPECT_FALSE(rep.passed);
  EXPECT_FALSE(rep.witnesses.empty());
}

TEST(LevelClosure, ReparametrizedMomentMapKeepsTheLevelSets) {
  // (t1 + t2^2, t2) is not a moment map but cuts out the same level sets
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  DiffForm omega = wedge(dx(c, 0), dx(c, 2)) + wedge(dx(c, 1), dx(c, 3));
  GenStructure J = symplectic_structure(omega, zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "t1 + t2^2"), E(c, "t2")});
  EXPECT_FALSE(check_moment_map(J, act, md).passed);
  EXPECT_TRUE(level_closure_property(J, act, md, {q(1), q(-2)}).passed);
}

TEST(LevelClosure, TrivialActionIsVacuous) {
  auto c = testing::c2_chart();
  GenStructure J = symplectic_structure(testing::c2_omega(c), zero_twist(c));
  ClosureCheckReport rep = level_closure_property(J, TorusAction(c, {}), MomentData{}, {});
  EXPECT_TRUE(rep.passed);
  EXPECT_FALSE(rep.skipped);
  EXPECT_EQ(rep.reason, "trivial action");
}

TEST(LevelClosure, SphereIsSkippedButFrameIdentitiesHold) {
  KahlerC2 k;
  ClosureCheckReport rep = level_closure_property(k.J, k.act, k.md, k.level);
  EXPECT_TRUE(rep.skipped);
  ClosureCheckReport frame = df_perp_frame_closure(k.J, k.act, k.md);
  EXPECT_TRUE(frame.passed);
  EXPECT_GT(frame.pairs, 0u);
}

TEST(LevelSubstitutions, GraphOverAnAffineCoordinate) {
  auto c = testing::torus_cylinder_chart();
  MomentData md = MomentData::untwisted({E(c, "2*t1 + t2^2 + cos(x1)"), E(c, "t2")});
  auto subs = level_substitutions(md, {q(1), q(3)});
  ASSERT_TRUE(subs.has_value());
  EXPECT_EQ(restrict_to_level(md.f[0], *subs), RingElement::constant(c, Scalar(1)));
  EXPECT_EQ(restrict_to_level(E(c, "t1"), *subs), E(c, "-4 - 1/2*cos(x1)"));
  EXPECT_FALSE(level_substitutions(MomentData::untwisted({E(c, "t1^2")}), {q(1)}).has_value());
}

}  // namespace
}  // namespace tgk
