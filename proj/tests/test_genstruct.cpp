#include <gtest/gtest.h>

#include "test_support.hpp"

namespace tgk {
namespace {

using testing::E;
using testing::Gen;

DiffForm dx(const ChartPtr& c, std::size_t j) { return DiffForm::coordinate(c, j); }
VectorField dd(const ChartPtr& c, std::size_t j) { return VectorField::coordinate(c, j); }
GenSection vec(const ChartPtr& c, std::size_t j) { return GenSection::vector(dd(c, j)); }
GenSection cov(const DiffForm& a) { return GenSection::covector(a); }

// x1, x2, y1, y2 with omega = dx1^dy1 + dx2^dy2
ChartPtr r4() { return testing::affine_chart({"x1", "x2", "y1", "y2"}); }

DiffForm std_omega(const ChartPtr& c) { return wedge(dx(c, 0), dx(c, 2)) + wedge(dx(c, 1), dx(c, 3)); }

RingMatrix std_complex_r2(const ChartPtr& c) {
  RingMatrix I(c, 2, 2);
  I(1, 0) = RingElement::one(c);  // I d/dx = d/dy
  I(0, 1) = -RingElement::one(c);
  return I;
}

std::vector<EvalPoint> grid(const ChartPtr& c) {
  std::vector<EvalPoint> pts;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) pts.emplace_back(c, std::vector<Rational>{Rational(a), Rational(b, 2)});
  return pts;
}

GenSection random_section(Gen& g, const ChartPtr& c) { return {g.field(c), g.form(c, 1)}; }

TEST(Pairing, Examples) {
  auto c = testing::plane_chart();
  EXPECT_EQ(pairing(vec(c, 0), cov(dx(c, 0))), E(c, "1/2"));
  EXPECT_TRUE(pairing(vec(c, 0), vec(c, 1)).is_zero());
  GenSection u{dd(c, 0), dx(c, 0)};
  EXPECT_EQ(pairing(u, u), RingElement::one(c));
}

TEST(Pairing, SymmetricAndMatchesGram) {
  auto c = testing::xyz_chart();
  Gen g(31);
  CMatrix gram = pairing_gram(3);
  for (int t = 0; t < 40; ++t) {
    GenSection u = random_section(g, c), v = random_section(g, c);
    EXPECT_EQ(pairing(u, v), pairing(v, u));
    EvalPoint p = g.point(c);
    auto cu = u.to_column(), cv = v.to_column();
    Scalar s(0);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) s += cu[i].evaluate(p) * gram(i, j) * cv[j].evaluate(p);
    EXPECT_EQ(pairing(u, v).evaluate(p), s);
  }
}

TEST(CourantBracket, Examples) {
  auto t3 = make_chart({{"x", CoordKind::periodic}, {"y", CoordKind::periodic}, {"z", CoordKind::periodic}});
  DiffForm H = wedge(wedge(dx(t3, 0), dx(t3, 1)), dx(t3, 2));
  GenSection b = courant_bracket(vec(t3, 0), vec(t3, 1), H);
  EXPECT_TRUE(b.vec.is_zero());
  EXPECT_EQ(b.form, dx(t3, 2));

  auto c = testing::plane_chart();
  GenSection u{dd(c, 0) + E(c, "y") * dd(c, 1), E(c, "x") * dx(c, 1)};
  EXPECT_TRUE(courant_bracket(u, u, zero_twist(c)).is_zero());

  GenSection r = courant_bracket(vec(c, 0), cov(E(c, "x") * dx(c, 0)), zero_twist(c));
  EXPECT_TRUE(r.vec.is_zero());
  EXPECT_EQ(r.form, Scalar(Rational(1, 2)) * dx(c, 0));
}

TEST(CourantBracket, RejectsWrongDegree) {
  auto c = testing::xyz_chart();
  EXPECT_THROW(courant_bracket(vec(c, 0), vec(c, 1), DiffForm(c, 2)), PreconditionError);
}

TEST(CourantBracket, AntisymmetricAndEquivariantUnderBTransform) {
  // [e^B u, e^B v]_H = e^B [u, v]_{H + dB}
  auto c = testing::xyz_chart();
  Gen g(32);
  for (int t = 0; t < 25; ++t) {
    GenSection u = random_section(g, c), v = random_section(g, c);
    DiffForm H = g.form(c, 3, 2);
    EXPECT_EQ(courant_bracket(u, v, H), Scalar(-1) * courant_bracket(v, u, H));
    DiffForm B = g.form(c, 2, 2, true);
    GenSection lhs = courant_bracket(b_transform_section(B, u), b_transform_section(B, v), H);
    GenSection rhs = b_transform_section(B, courant_bracket(u, v, H + exterior_d(B)));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(BTransform, SectionExamples) {
  auto c = testing::plane_chart();
  DiffForm B = wedge(dx(c, 0), dx(c, 1));
  EXPECT_EQ(b_transform_section(B, vec(c, 0)), (GenSection{dd(c, 0), dx(c, 1)}));
  EXPECT_EQ(b_transform_section(B, cov(dx(c, 0))), cov(dx(c, 0)));
  GenSection u{dd(c, 0), E(c, "x") * dx(c, 1)};
  EXPECT_EQ(b_transform_section(B, b_transform_section(-B, u)), u);
  EXPECT_THROW(b_transform_section(dx(c, 0), u), ValidationError);
}

TEST(BTransform, PreservesPairingAndAgreesWithMatrix) {
  auto c = testing::xyz_chart();
  Gen g(33);
  for (int t = 0; t < 40; ++t) {
    DiffForm B = g.form(c, 2);
    GenSection u = random_section(g, c), v = random_section(g, c);
    GenSection bu = b_transform_section(B, u);
    EXPECT_EQ(pairing(bu, b_transform_section(B, v)), pairing(u, v));
    EXPECT_EQ(GenSection::from_column(c, b_field_matrix(B).apply(u.to_column())), bu);
  }
}

TEST(BTransform, StructureWithZeroBIsUnchanged) {
  auto c = r4();
  GenStructure J = symplectic_structure(std_omega(c), zero_twist(c));
  GenStructure K = b_transform_structure(DiffForm(c, 2), J);
  EXPECT_EQ(K.mat(), J.mat());
  EXPECT_EQ(K.twist(), J.twist());
}

TEST(Algebraic, StandardStructuresPass) {
  auto c = testing::plane_chart();
  EXPECT_TRUE(check_algebraic(symplectic_structure(wedge(dx(c, 0), dx(c, 1)), zero_twist(c))).passed);
  EXPECT_TRUE(check_algebraic(complex_structure(std_complex_r2(c), zero_twist(c))).passed);
}

TEST(Algebraic, PerturbationListsOffendingEntries) {
  auto c = testing::plane_chart();
  RingMatrix m = symplectic_structure(wedge(dx(c, 0), dx(c, 1)), zero_twist(c)).mat();
  m(0, 1) += RingElement::one(c);
  AlgebraicReport rep = check_algebraic(GenStructure(m, zero_twist(c)));
  EXPECT_FALSE(rep.passed);
  EXPECT_FALSE(rep.witnesses.empty());
  bool names_entry = false;
  for (const auto& w : rep.witnesses) names_entry |= w.location.find("(") != std::string::npos;
  EXPECT_TRUE(names_entry);
}

TEST(GenStructure, RejectsBadInput) {
  auto c = testing::plane_chart();
  RingMatrix m = RingMatrix::identity(c, 4);
  EXPECT_THROW(GenStructure(RingMatrix::identity(c, 3), zero_twist(c)), ValidationError);
  m(0, 1) = E(c, "I");
  EXPECT_THROW(GenStructure(m, zero_twist(c)), ValidationError);
  auto x4 = r4();
  DiffForm open(x4, 3);
  open.add({1, 2, 3}, E(x4, "x1"));
  EXPECT_THROW(GenStructure(RingMatrix::identity(x4, 8), open), ValidationError);
}

TEST(Integrable, StandardStructuresPass) {
  auto t4 = make_chart({{"x1", CoordKind::periodic},
                        {"x2", CoordKind::periodic},
                        {"y1", CoordKind::periodic},
                        {"y2", CoordKind::periodic}});
  GenStructure Jw = symplectic_structure(std_omega(t4), zero_twist(t4));
  auto rep = check_integrable(Jw, {EvalPoint(t4, {0, 1, 2, 3})});
  EXPECT_TRUE(rep.passed);
  EXPECT_GT(rep.pairs_checked, 0u);
  auto c = testing::plane_chart();
  EXPECT_TRUE(check_integrable(complex_structure(std_complex_r2(c), zero_twist(c)), grid(c)).passed);
}

TEST(Integrable, BTransformTwistSign) {
  auto c = r4();
  GenStructure Jw = symplectic_structure(std_omega(c), zero_twist(c));
  DiffForm B = E(c, "x1") * wedge(dx(c, 1), dx(c, 3));
  DiffForm dB = exterior_d(B);
  EXPECT_EQ(dB, wedge(wedge(dx(c, 0), dx(c, 1)), dx(c, 3)));
  GenStructure K = b_transform_structure(B, Jw);
  EXPECT_EQ(K.twist(), -dB);
  EXPECT_TRUE(check_algebraic(K).passed);
  EXPECT_TRUE(check_integrable(K).passed);
  EXPECT_FALSE(check_integrable(K.with_twist(zero_twist(c))).passed);
  IntegrabilityReport plus = check_integrable(K.with_twist(dB));
  EXPECT_FALSE(plus.passed);
  EXPECT_FALSE(plus.witnesses.empty());
}

TEST(Integrable, SurvivesRandomClosedBTransforms) {
  auto c = testing::plane_chart();
  Gen g(34);
  GenStructure JI = complex_structure(std_complex_r2(c), zero_twist(c));
  GenStructure Jw = symplectic_structure(wedge(dx(c, 1), dx(c, 0)), zero_twist(c));
  for (int t = 0; t < 8; ++t) {
    DiffForm B = g.form(c, 2, 2, true);
    EXPECT_TRUE(check_integrable(b_transform_structure(B, JI)).passed);
    EXPECT_TRUE(check_integrable(b_transform_structure(B, Jw)).passed);
  }
  auto x4 = r4();
  GenStructure J4 = symplectic_structure(std_omega(x4), zero_twist(x4));
  for (int t = 0; t < 3; ++t) {
    DiffForm B = g.form(x4, 2, 2, true);
    EXPECT_TRUE(check_integrable(b_transform_structure(B, J4)).passed);
  }
}

TEST(Type, Examples) {
  auto c = testing::plane_chart();
  GenStructure Jw = symplectic_structure(wedge(dx(c, 0), dx(c, 1)), zero_twist(c));
  GenStructure JI = complex_structure(std_complex_r2(c), zero_twist(c));
  Gen g(35);
  for (const auto& p : grid(c)) {
    EXPECT_EQ(type_at(Jw, p), 0u);
    EXPECT_EQ(type_at(JI, p), 1u);
  }
  for (int t = 0; t < 10; ++t) {
    DiffForm B = g.form(c, 2, 2, true);
    for (const auto& p : grid(c)) {
      EXPECT_EQ(type_at(b_transform_structure(B, Jw), p), 0u);
      EXPECT_EQ(type_at(b_transform_structure(B, JI), p), 1u);
    }
  }
}

TEST(Type, OddRankIsRejected) {
  CMatrix m(4, 4);
  m(0, 2) = Scalar(1);
  EXPECT_THROW(type_of_matrix(m), ValidationError);
}

TEST(GkPair, KaehlerPlanePasses) {
  // Compatible with I d/dx = d/dy in the sign conventions of this library: omega = dy^dx.
  auto c = testing::plane_chart();
  GenStructure Jw = symplectic_structure(wedge(dx(c, 1), dx(c, 0)), zero_twist(c));
  GenStructure JI = complex_structure(std_complex_r2(c), zero_twist(c));
  GkPairReport rep = check_gk_pair(Jw, JI, grid(c));
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.commute);
  ASSERT_EQ(rep.minors.size(), grid(c).size());
  for (const auto& m : rep.minors) ASSERT_EQ(m.size(), 4u);
}

TEST(GkPair, Failures) {
  auto c = testing::plane_chart();
  GenStructure Jw = symplectic_structure(wedge(dx(c, 1), dx(c, 0)), zero_twist(c));
  GenStructure JI = complex_structure(std_complex_r2(c), zero_twist(c));
  GkPairReport same = check_gk_pair(Jw, Jw, grid(c));
  EXPECT_FALSE(same.passed);
  EXPECT_TRUE(same.commute);
  GkPairReport flipped = check_gk_pair(Jw, JI.negated(), grid(c));
  EXPECT_TRUE(flipped.commute);
  EXPECT_FALSE(flipped.passed);
  // the opposite orientation of omega is the flipped pair in disguise
  GenStructure Jw2 = symplectic_structure(wedge(dx(c, 0), dx(c, 1)), zero_twist(c));
  EXPECT_FALSE(check_gk_pair(Jw2, JI, grid(c)).passed);
  auto x4 = r4();
  GenStructure J4 = symplectic_structure(std_omega(x4), zero_twist(x4));
  DiffForm H = wedge(wedge(dx(x4, 0), dx(x4, 1)), dx(x4, 2));
  EXPECT_THROW(check_gk_pair(J4, J4.with_twist(H), {}), PreconditionError);
}

TEST(GkPair, BTransformedPairStaysGeneralizedKaehler) {
  auto c = testing::plane_chart();
  GenStructure Jw = symplectic_structure(wedge(dx(c, 1), dx(c, 0)), zero_twist(c));
  GenStructure JI = complex_structure(std_complex_r2(c), zero_twist(c));
  Gen g(36);
  for (int t = 0; t < 6; ++t) {
    DiffForm B = g.form(c, 2, 2, true);
    EXPECT_TRUE(check_gk_pair(b_transform_structure(B, Jw), b_transform_structure(B, JI), grid(c)).passed);
  }
}

TEST(Projector, IdempotentWithRankN) {
  auto c = r4();
  GenStructure J = b_transform_structure(E(c, "x1") * wedge(dx(c, 1), dx(c, 3)),
                                         symplectic_structure(std_omega(c), zero_twist(c)));
  RingMatrix P = J.projector();
  EXPECT_EQ(P * P, P);
  EXPECT_TRUE((J.coprojector() * P).is_zero());
  EXPECT_EQ(rank(P.evaluate(EvalPoint(c, {1, 2, 3, 4}))), 4u);
}

}  // namespace
}  // namespace tgk
