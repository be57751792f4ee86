#include <gtest/gtest.h>

#include "test_support.hpp"

namespace tgk {
namespace {

using testing::E;
using testing::Gen;
using MD = EquivariantForm::MultiDegree;

DiffForm dx(const ChartPtr& c, std::size_t j) { return DiffForm::coordinate(c, j); }

const std::vector<bool> kTOnly{false, false, true, true};

// Invariant 2-form B and the closed pair it generates: alpha = i_xi B, H = -dB.
struct ClosedPair {
  DiffForm H;
  std::vector<DiffForm> alpha;
};

ClosedPair pair_from_b(const DiffForm& B, const TorusAction& act) {
  ClosedPair p{-exterior_d(B), {}};
  for (std::size_t i = 0; i < act.rank(); ++i) p.alpha.push_back(interior(act[i], B));
  return p;
}

TEST(TorusAction, RejectsNonCommutingGenerators) {
  auto c = testing::plane_chart();
  EXPECT_THROW(TorusAction(c, {VectorField::coordinate(c, 0), E(c, "x") * VectorField::coordinate(c, 1)}),
               ValidationError);
}

TEST(TorusAction, FreeLocus) {
  auto c = testing::c2_chart();
  TorusAction act = testing::diagonal_circle(c);
  EXPECT_TRUE(act.check_free({EvalPoint(c, {1, 0, 0, 0})}).passed);
  EXPECT_FALSE(act.check_free({EvalPoint(c, {0, 0, 0, 0})}).passed);
}

TEST(CartanD, Examples) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  RingElement h = E(c, "t1^2*t2");
  EquivariantForm dh = cartan_d(EquivariantForm::from_form(DiffForm::function(h), 2), act);
  EXPECT_EQ(dh, EquivariantForm::from_form(exterior_d(h), 2));

  DiffForm B = E(c, "t1") * wedge(dx(c, 0), dx(c, 1));
  EquivariantForm dB = cartan_d(EquivariantForm::from_form(B, 2), act);
  EquivariantForm want = EquivariantForm::from_form(exterior_d(B), 2);
  want.add({1, 0}, -interior(act[0], B));
  want.add({0, 1}, -interior(act[1], B));
  EXPECT_EQ(dB, want);
  EXPECT_EQ(dB.terms().at({1, 0}), -(E(c, "t1") * dx(c, 1)));

  EXPECT_THROW(cartan_d(EquivariantForm::from_form(E(c, "E(x1;1)") * dx(c, 2), 2), act), PreconditionError);
}

TEST(CartanD, SquaresToZeroOnInvariantCochains) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  Gen g(41);
  for (int t = 0; t < 40; ++t) {
    EquivariantForm eta(c, 2);
    const int total = g.uniform(0, 6);
    for (int k = 0; k < 3; ++k) {
      MD d{g.uniform(0, total / 2), 0};
      d[1] = g.uniform(0, total / 2 - d[0]);
      eta.add(d, testing::restricted_form(g, c, static_cast<std::size_t>(total - 2 * (d[0] + d[1])), kTOnly));
    }
    EquivariantForm once = cartan_d(eta, act);
    EXPECT_TRUE(cartan_d(once, act).is_zero()) << eta.str();
  }
  ClosedPair p = pair_from_b(E(c, "t1") * wedge(dx(c, 0), dx(c, 1)), act);
  EXPECT_TRUE(cartan_d(cartan_d(EquivariantForm::three_form_with_moment(p.H, p.alpha), act), act).is_zero());
}

TEST(CartanD, PreservesHomogeneousTotalDegree) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  Gen g(42);
  for (int t = 0; t < 20; ++t) {
    EquivariantForm eta(c, 2);
    eta.add({1, 0}, testing::restricted_form(g, c, 1, kTOnly));
    eta.add({0, 0}, testing::restricted_form(g, c, 3, kTOnly));
    auto deg = cartan_d(eta, act).total_degrees();
    EXPECT_LE(deg.size(), 1u);
    if (!deg.empty()) {
      EXPECT_EQ(deg[0], 4u);
    }
  }
}

TEST(EquivariantlyClosed, Examples) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  std::vector<DiffForm> zero{DiffForm(c, 1), DiffForm(c, 1)};
  EXPECT_TRUE(is_equivariantly_closed(DiffForm(c, 3), zero, act).passed);

  DiffForm B = E(c, "t2") * wedge(dx(c, 2), dx(c, 1)) + E(c, "t1^2") * wedge(dx(c, 0), dx(c, 1));
  ClosedPair p = pair_from_b(B, act);
  EXPECT_FALSE(exterior_d(B).is_zero());
  EXPECT_TRUE(is_equivariantly_closed(p.H, p.alpha, act).passed);
  // the opposite sign of the twist breaks only the contraction identity
  ClosureReport wrong = is_equivariantly_closed(exterior_d(B), p.alpha, act);
  EXPECT_FALSE(wrong.passed);
  EXPECT_TRUE(wrong.closed_twist);
  EXPECT_FALSE(wrong.contraction);
  EXPECT_TRUE(wrong.antisymmetry);
}

TEST(EquivariantlyClosed, EachBulletCanFailAlone) {
  auto xyz = testing::affine_chart({"x", "y", "z"});
  TorusAction dz(xyz, {VectorField::coordinate(xyz, 2)});
  // alpha = x dy: d alpha = dx^dy while i_dz H = 0
  ClosureReport b2 = is_equivariantly_closed(DiffForm(xyz, 3), {E(xyz, "x") * dx(xyz, 1)}, dz);
  EXPECT_FALSE(b2.contraction);
  EXPECT_TRUE(b2.antisymmetry);
  EXPECT_TRUE(b2.closed_twist);
  // alpha = dz: closed, but alpha(xi) = 1
  ClosureReport b3 = is_equivariantly_closed(DiffForm(xyz, 3), {dx(xyz, 2)}, dz);
  EXPECT_TRUE(b3.contraction);
  EXPECT_FALSE(b3.antisymmetry);
  auto r4 = testing::affine_chart({"a", "b", "c", "d"});
  DiffForm H(r4, 3);
  H.add({1, 2, 3}, E(r4, "a"));
  TorusAction none(r4, {});
  ClosureReport b1 = is_equivariantly_closed(H, {}, none);
  EXPECT_FALSE(b1.closed_twist);
}

TEST(EquivariantlyClosed, AgreesWithCartanDifferential) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  Gen g(43);
  int closed_seen = 0, open_seen = 0;
  for (int t = 0; t < 60; ++t) {
    DiffForm H(c, 3);
    std::vector<DiffForm> alpha;
    if (t % 2) {
      ClosedPair p = pair_from_b(testing::restricted_form(g, c, 2, kTOnly), act);
      H = p.H;
      alpha = p.alpha;
      // adding dh with h invariant keeps the pair closed
      RingElement h = testing::restricted_form(g, c, 0, kTOnly).as_function();
      alpha[t % 4 == 1 ? 0 : 1] += exterior_d(h);
      if (t % 3 == 0) alpha[0] += testing::restricted_form(g, c, 1, kTOnly);
    } else {
      H = exterior_d(testing::restricted_form(g, c, 2, kTOnly));
      alpha = {testing::restricted_form(g, c, 1, kTOnly), testing::restricted_form(g, c, 1, kTOnly)};
    }
    bool direct = is_equivariantly_closed(H, alpha, act).passed;
    bool via_cartan = cartan_d(EquivariantForm::three_form_with_moment(H, alpha), act).is_zero();
    EXPECT_EQ(direct, via_cartan);
    (direct ? closed_seen : open_seen)++;
  }
  EXPECT_GT(closed_seen, 10);
  EXPECT_GT(open_seen, 10);
}

TEST(IsBasic, Examples) {
  auto c = make_chart({{"x", CoordKind::periodic}, {"t", CoordKind::affine}});
  TorusAction act = testing::translations(c, 1);
  EXPECT_TRUE(is_basic(dx(c, 1), act));
  EXPECT_FALSE(is_basic(dx(c, 0), act));
  EXPECT_FALSE(is_basic(E(c, "cos(x)") * dx(c, 1), act));
  EXPECT_TRUE(is_basic(E(c, "t^3") * dx(c, 1), act));
}

TEST(MomentMap, StandardC2Circle) {
  auto c = testing::c2_chart();
  TorusAction act = testing::diagonal_circle(c);
  GenStructure J = symplectic_structure(testing::c2_omega(c), zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "1/2*(x1^2 + y1^2 + x2^2 + y2^2)")});
  MomentReport rep = check_moment_map(J, act, md);
  EXPECT_TRUE(rep.passed);
  // the complex structure is preserved too, but it has no moment map
  GenStructure JI = complex_structure(testing::c2_complex(c), zero_twist(c));
  EXPECT_TRUE(check_action_preserves(JI, act).passed);
  MomentReport none = check_moment_map(JI, act, md);
  EXPECT_FALSE(none.in_eigenbundle);

  // reversed orientation of omega needs the opposite sign of f
  GenStructure Jr = symplectic_structure(-testing::c2_omega(c), zero_twist(c));
  EXPECT_FALSE(check_moment_map(Jr, act, md).passed);
  MomentData neg = MomentData::untwisted({-md.f[0]});
  EXPECT_TRUE(check_moment_map(Jr, act, neg).passed);
}

TEST(MomentMap, DetectsNonInvariantData) {
  auto c = testing::c2_chart();
  TorusAction act = testing::diagonal_circle(c);
  GenStructure J = symplectic_structure(testing::c2_omega(c), zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "1/2*(x1^2 + y1^2 + x2^2 + y2^2) + x1")});
  MomentReport rep = check_moment_map(J, act, md);
  EXPECT_FALSE(rep.equivariant);
  EXPECT_FALSE(rep.in_eigenbundle);
}

TEST(MomentMap, GeneralizedMomentMapGivesExactMomentForm) {
  // e^B of the symplectic cylinder with B = dx1^dt2: the circle acquires f + i t2.
  auto c = testing::torus_cylinder_chart();
  TorusAction act(c, {VectorField::coordinate(c, 0)});
  DiffForm omega = wedge(dx(c, 0), dx(c, 2)) + wedge(dx(c, 1), dx(c, 3));
  GenStructure J = symplectic_structure(omega, zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "t1")});
  ASSERT_TRUE(check_moment_map(J, act, md).passed);
  DiffForm B = wedge(dx(c, 0), dx(c, 3));
  GenStructure JB = b_transform_structure(B, J);
  RingElement h = E(c, "t2");
  MomentData gen{md.f, {exterior_d(h)}};
  EXPECT_TRUE(check_moment_map(JB, act, gen).passed);
  EXPECT_EQ(moment_b_transform(B, md, act), gen);
  // the generalized moment map condition xi - i d(f + i h) in L, written out
  GenSection v{act[0], exterior_d(h) - Scalar::i() * exterior_d(md.f[0])};
  auto col = v.to_column();
  auto Jv = JB.mat().apply(col);
  for (std::size_t r = 0; r < col.size(); ++r) EXPECT_EQ(Jv[r], Scalar::i() * col[r]);
}

TEST(MomentMap, SurvivesInvariantBTransforms) {
  auto c = testing::c2_chart();
  TorusAction act = testing::diagonal_circle(c);
  GenStructure J = symplectic_structure(testing::c2_omega(c), zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "1/2*(x1^2 + y1^2 + x2^2 + y2^2)")});
  std::vector<DiffForm> Bs{
      E(c, "x1^2 + y1^2") * wedge(dx(c, 2), dx(c, 3)),
      wedge(dx(c, 0), dx(c, 1)) + E(c, "x1*x2 + y1*y2") * wedge(dx(c, 0), dx(c, 1)),
      E(c, "x1*y2 - y1*x2") * (wedge(dx(c, 0), dx(c, 1)) + wedge(dx(c, 2), dx(c, 3)))};
  for (const auto& B : Bs) {
    ASSERT_TRUE(act.preserves(B)) << B.str();
    GenStructure JB = b_transform_structure(B, J);
    MomentData mdB = moment_b_transform(B, md, act);
    EXPECT_TRUE(check_moment_map(JB, act, mdB).passed) << B.str();
    EXPECT_TRUE(is_equivariantly_closed(JB.twist(), mdB.alpha, act).passed);
  }
}

TEST(MomentBTransform, Examples) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  MomentData md = MomentData::untwisted({E(c, "t1"), E(c, "t2")});
  EXPECT_EQ(moment_b_transform(DiffForm(c, 2), md, act), md);
  DiffForm B = E(c, "t1") * wedge(dx(c, 0), dx(c, 1));
  MomentData mdB = moment_b_transform(B, md, act);
  EXPECT_EQ(mdB.alpha[0], E(c, "t1") * dx(c, 1));
  EXPECT_EQ(mdB.alpha[1], -(E(c, "t1") * dx(c, 0)));
  EXPECT_EQ(moment_b_transform(-B, mdB, act), md);
  EXPECT_THROW(moment_b_transform(E(c, "cos(x1)") * wedge(dx(c, 2), dx(c, 3)), md, act), PreconditionError);
}

TEST(MomentBTransform, Composes) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  Gen g(44);
  for (int t = 0; t < 20; ++t) {
    MomentData md{{E(c, "t1"), E(c, "t2")},
                  {testing::restricted_form(g, c, 1, kTOnly), testing::restricted_form(g, c, 1, kTOnly)}};
    DiffForm B1 = testing::restricted_form(g, c, 2, kTOnly), B2 = testing::restricted_form(g, c, 2, kTOnly);
    EXPECT_EQ(moment_b_transform(B2, moment_b_transform(B1, md, act), act), moment_b_transform(B1 + B2, md, act));
  }
}

TEST(Connection, Invariants) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  EXPECT_TRUE(check_connection({{dx(c, 0), dx(c, 1)}}, act).passed);
  EXPECT_TRUE(check_connection({{dx(c, 0) + E(c, "t2") * dx(c, 2), dx(c, 1)}}, act).passed);
  EXPECT_FALSE(check_connection({{dx(c, 1), dx(c, 0)}}, act).passed);
  EXPECT_FALSE(check_connection({{dx(c, 0) + E(c, "cos(x2)") * dx(c, 2), dx(c, 1)}}, act).passed);
}

TEST(Gamma, Examples) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  Connection theta{{dx(c, 0), dx(c, 1)}};
  MomentData md = MomentData::untwisted({E(c, "t1"), E(c, "t2")});
  EXPECT_TRUE(gamma_from_connection(DiffForm(c, 3), md, theta, act).is_zero());

  DiffForm B = E(c, "t1") * wedge(dx(c, 0), dx(c, 1));
  MomentData mdB = moment_b_transform(B, md, act);
  DiffForm H = -exterior_d(B);
  DiffForm G = gamma_from_connection(H, mdB, theta, act);
  // -alpha^1^dx1 - alpha^2^dx2 = 2 t1 dx1^dx2, beta = alpha^2(xi1) dx1^dx2 = -t1 dx1^dx2
  EXPECT_EQ(G, B);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(interior(act[i], G), mdB.alpha[i]);
  EXPECT_TRUE(is_basic(H + exterior_d(G), act));

  EXPECT_THROW(gamma_from_connection(exterior_d(B), mdB, theta, act), PreconditionError);
  EXPECT_THROW(gamma_from_connection(H, mdB, {{dx(c, 1), dx(c, 0)}}, act), PreconditionError);
}

TEST(Gamma, PostconditionsAndConnectionChange) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  Gen g(45);
  for (int t = 0; t < 25; ++t) {
    ClosedPair p = pair_from_b(testing::restricted_form(g, c, 2, kTOnly), act);
    RingElement h = testing::restricted_form(g, c, 0, kTOnly).as_function();
    p.alpha[t % 2] += exterior_d(h);
    MomentData md{{E(c, "t1"), E(c, "t2")}, p.alpha};
    Connection theta{{dx(c, 0), dx(c, 1)}};
    DiffForm G = gamma_from_connection(p.H, md, theta, act);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(interior(act[i], G), md.alpha[i]);
    EXPECT_TRUE(is_basic(p.H + exterior_d(G), act));
    // shift by a basic g-valued 1-form
    std::vector<bool> keep = kTOnly;
    DiffForm s1(c, 1), s2(c, 1);
    s1.add({2}, testing::restricted_form(g, c, 0, keep).as_function());
    s2.add({3}, testing::restricted_form(g, c, 0, keep).as_function());
    s2.add({2}, testing::restricted_form(g, c, 0, keep).as_function());
    Connection theta2{{dx(c, 0) + s1, dx(c, 1) + s2}};
    DiffForm G2 = gamma_from_connection(p.H, md, theta2, act);
    EXPECT_TRUE(is_basic(G - G2, act));
  }
}

TEST(Gamma, TrivializedStructureHasBasicTwistAndNoMomentForm) {
  auto c = testing::torus_cylinder_chart();
  TorusAction act = testing::translations(c, 2);
  DiffForm omega = wedge(dx(c, 0), dx(c, 2)) + wedge(dx(c, 1), dx(c, 3));
  GenStructure J = symplectic_structure(omega, zero_twist(c));
  MomentData md = MomentData::untwisted({E(c, "t1"), E(c, "t2")});
  ASSERT_TRUE(check_moment_map(J, act, md).passed);
  DiffForm B = E(c, "t1") * wedge(dx(c, 0), dx(c, 1)) + E(c, "t2^2") * wedge(dx(c, 2), dx(c, 1));
  GenStructure JB = b_transform_structure(B, J);
  MomentData mdB = moment_b_transform(B, md, act);
  ASSERT_TRUE(check_moment_map(JB, act, mdB).passed);
  GammaTransform gt = trivialize_moment_form(JB, mdB, {{dx(c, 0), dx(c, 1)}}, act);
  for (const auto& a : gt.md.alpha) EXPECT_TRUE(a.is_zero());
  EXPECT_TRUE(is_basic(gt.J.twist(), act));
  EXPECT_EQ(gt.J.twist(), JB.twist() + exterior_d(gt.gamma));
  EXPECT_TRUE(check_moment_map(gt.J, act, gt.md).passed);
}

}  // namespace
}  // namespace tgk
