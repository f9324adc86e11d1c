#include <gtest/gtest.h>

#include <acbm/analysis.hpp>
#include <acbm/verify.hpp>
#include <acbm/zoo.hpp>

#include "oracle.hpp"

using acbm::Rational;
using acbm::SectionKind;
using acbm::SectionPlane;
using acbm::Tensor;

namespace {

acbm::Analysis<Rational> analysed(const acbm::ModelSpec& spec) {
  return acbm::analyse(acbm::build_structure<Rational>(spec));
}

}  // namespace

TEST(CurvatureD, MatchesOracleConnectionCurvature) {
  for (const auto& name : acbm::zoo_names()) {
    const auto spec = acbm::builtin(name);
    const auto a = analysed(spec);
    const auto m = oracle::from_spec(spec);
    const auto RD = oracle::curvature(m.c, oracle::svk(m, oracle::koszul(m.c, m.g)));
    const std::size_t d = m.d;
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z)
          for (std::size_t w = 0; w < d; ++w) {
            Rational v = 0;
            for (std::size_t l = 0; l < d; ++l) v += RD[l][x][y][z] * m.g[l][w];
            ASSERT_EQ(a.curvature.R_D(x, y, z, w), v) << name;
          }
  }
}

TEST(CurvatureD, FormulaResidualsVanishAcrossZoo) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(acbm::builtin(name));
    const auto& r = a.curvature.residuals;
    EXPECT_TRUE(r.all().exact_zero) << name;
    EXPECT_EQ(a.curvature.R_D, acbm::curvature_D_formula(a.s, a.curvature.R, a.shape.S_op, a.s.g())) << name;
  }
}

TEST(CurvatureD, FormulaResidualsVanishOnRandomModels) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto a = analysed(acbm::random_structure(seed, 1 + seed % 2));
    EXPECT_TRUE(a.curvature.residuals.all().exact_zero) << seed;
  }
}

TEST(CurvatureD, ScalarCurvatureFormula) {
  const auto a = analysed(acbm::builtin("f5-3"));
  const auto& c = a.curvature;
  const auto S2 = acbm::compose(a.shape.S_op, a.shape.S_op);
  EXPECT_EQ(c.tau_D, c.tau - Rational(2) * c.rho_xi_xi - acbm::trace(S2) + a.shape.trace_S * a.shape.trace_S);
}

TEST(CurvatureD, ReebDirectionIsFlatForD) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(acbm::builtin(name));
    const std::size_t d = a.s.dim();
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z) EXPECT_EQ(a.curvature.R_D(x, y, z, d - 1), Rational(0)) << name;
  }
}

TEST(Sections, TypesOfBasisPlanes) {
  const auto s = acbm::build_structure<Rational>(acbm::builtin("abelian3"));
  EXPECT_EQ(acbm::section_type(SectionPlane<Rational>{s.basis(0), s.xi()}, s, s.g()).kind, SectionKind::xi_section);
  const auto hol = acbm::section_type(SectionPlane<Rational>{s.basis(0), s.basis(1)}, s, s.g());
  EXPECT_EQ(hol.kind, SectionKind::phi_holomorphic);
  EXPECT_TRUE(hol.orthogonal_to_xi);

  const auto s5 = acbm::build_structure<Rational>(acbm::builtin("dim5-tr"));
  const auto tr = acbm::section_type(SectionPlane<Rational>{s5.basis(0), s5.basis(1)}, s5, s5.g());
  EXPECT_EQ(tr.kind, SectionKind::totally_real);
  const auto gen =
      acbm::section_type(SectionPlane<Rational>{s5.basis(0), s5.basis(1) + Rational(2) * s5.basis(2)}, s5, s5.g());
  EXPECT_EQ(gen.kind, SectionKind::generic);
}

TEST(Sections, DegeneratePlaneThrows) {
  const auto s = acbm::build_structure<Rational>(acbm::builtin("abelian3"));
  // e0 + phi e0 is g-null and g-orthogonal to xi.
  const SectionPlane<Rational> null{s.basis(0) + s.basis(1), s.basis(0) + s.basis(1) + s.xi()};
  EXPECT_EQ(acbm::plane_norm(null, s.g()), Rational(0));
  EXPECT_THROW(acbm::section_type(null, s, s.g()), acbm::DegeneratePlane);
  EXPECT_THROW(acbm::sectional_curvature(null, Tensor<Rational>(3, 0, 4), s.g()), acbm::DegeneratePlane);
}

TEST(Sections, SectionalCurvatureIsBasisIndependent) {
  const auto a = analysed(acbm::builtin("dim5-tr"));
  const auto& s = a.s;
  const SectionPlane<Rational> p{s.basis(0) + Rational(2) * s.basis(3), s.basis(1) - s.xi()};
  const SectionPlane<Rational> q{Rational(2) * p.x + p.y, p.x - Rational(3) * p.y};
  EXPECT_EQ(acbm::sectional_curvature(p, a.curvature.R, s.g()), acbm::sectional_curvature(q, a.curvature.R, s.g()));
}

TEST(Sections, KDVanishesOnXiSectionsBothSides) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(acbm::builtin(name));
    const auto st = a.s.associated();
    const auto planes = acbm::random_planes(a.s, 8, 42);
    int xi_sections = 0;
    for (const auto& p : planes) {
      const auto r = acbm::kD_relation(p, a.s, a.curvature.R, a.curvature.R_D, a.shape.S_op);
      const auto rt = acbm::kD_relation(p, st, a.curvature.R_tilde, a.curvature.R_Dt, a.shape.S_tilde);
      EXPECT_TRUE(r.general.exact_zero) << name;
      EXPECT_TRUE(rt.general.exact_zero) << name;
      if (r.type.kind == SectionKind::xi_section) {
        ++xi_sections;
        EXPECT_EQ(r.k_D, Rational(0)) << name;
        EXPECT_EQ(rt.k_D, Rational(0)) << name;
      }
    }
    EXPECT_GT(xi_sections, 0) << name;
  }
}

TEST(Sections, RandomPlanesAreDeterministicAndNonDegenerate) {
  const auto s = acbm::build_structure<Rational>(acbm::builtin("dim7-a"));
  const auto p1 = acbm::random_planes(s, 20, 9);
  const auto p2 = acbm::random_planes(s, 20, 9);
  ASSERT_EQ(p1.size(), 26u);
  for (std::size_t k = 0; k < p1.size(); ++k) {
    EXPECT_EQ(p1[k].x, p2[k].x);
    EXPECT_EQ(p1[k].y, p2[k].y);
    EXPECT_NE(acbm::plane_norm(p1[k], s.g()), Rational(0));
    EXPECT_NE(acbm::plane_norm(p1[k], s.g_tilde()), Rational(0));
  }
}

TEST(Sections, SpecialisedRelationOnHolomorphicPlane) {
  const auto a = analysed(acbm::builtin("f5-3"));
  const auto r = acbm::kD_relation(SectionPlane<Rational>{a.s.basis(0), a.s.basis(1)}, a.s, a.curvature.R,
                                   a.curvature.R_D, a.shape.S_op);
  EXPECT_EQ(r.type.kind, SectionKind::phi_holomorphic);
  ASSERT_TRUE(r.special.has_value());
  EXPECT_TRUE(r.special->exact_zero);
}
