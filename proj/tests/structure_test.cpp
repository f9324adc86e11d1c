#include <gtest/gtest.h>

#include <acbm/analysis.hpp>
#include <acbm/zoo.hpp>
#include <set>

#include "oracle.hpp"

using acbm::ClassId;
using acbm::Rational;
using acbm::Tensor;

namespace {

acbm::Analysis<Rational> analysed(const acbm::ModelSpec& spec) {
  return acbm::analyse(acbm::build_structure<Rational>(spec));
}

const acbm::ValidationItem& item(const acbm::ValidationReport& r, const std::string& identity) {
  for (const auto& it : r.items)
    if (it.identity == identity) return it;
  throw std::out_of_range(identity);
}

// Brute-force class predicates on the oracle F of the g-structure.
struct OracleClasses {
  bool f0 = true, f3 = true, u1 = true, u2 = true;
};

OracleClasses oracle_classes(const acbm::ModelSpec& spec) {
  const auto m = oracle::from_spec(spec);
  const auto gamma = oracle::koszul(m.c, m.g);
  const auto F = oracle::fundamental(m, gamma, m.g);
  const std::size_t d = m.d, xi = d - 1;
  OracleClasses out;
  for (std::size_t i = 0; i < d; ++i) {
    if (oracle::nabla_vec(gamma, i, m.xi) != oracle::Vec(d, Rational(0))) out.u1 = false;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        if (F[i][j][k] != 0) out.f0 = false;
        if (F[xi][j][k] != 0 || F[i][xi][k] != 0) out.f3 = false;
        if (F[i][j][k] + F[j][k][i] + F[k][i][j] != 0) out.f3 = false;
        if (F[i][j][k] != F[i][j][xi] * m.eta[k] + F[i][k][xi] * m.eta[j]) out.u2 = false;
      }
  }
  return out;
}

}  // namespace

TEST(Structure, ZooEntriesSatisfyEveryIdentity) {
  for (const auto& name : acbm::zoo_names()) {
    const auto s = acbm::build_structure<Rational>(acbm::builtin(name));
    const auto report = acbm::validate_structure(s);
    EXPECT_TRUE(report.ok()) << name;
    for (const auto& it : report.items) EXPECT_EQ(it.worst_residual, 0.0) << name << ": " << it.identity;
  }
}

TEST(Structure, FlippedReebNormIsReported) {
  auto spec = acbm::builtin("abelian3");
  spec.g(2, 2) = -1;
  const auto s = acbm::build_structure<Rational>(spec);
  const auto report = acbm::validate_structure(s);
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(item(report, "g(xi,xi) = 1").passed);
  EXPECT_THROW(acbm::require_valid(s), acbm::StructureInvalid);
  EXPECT_THROW(acbm::analyse(s), acbm::StructureInvalid);
}

TEST(Structure, EtaOfXiMustBeOne) {
  auto spec = acbm::builtin("abelian3");
  spec.eta(2) = 2;
  const auto report = acbm::validate_structure(acbm::build_structure<Rational>(spec));
  EXPECT_FALSE(item(report, "eta(xi) = 1").passed);
  EXPECT_FALSE(report.failures().empty());
}

TEST(Structure, RandomStructureIsValid) {
  const auto s = acbm::build_structure<Rational>(acbm::random_structure(7, 1));
  EXPECT_TRUE(acbm::validate_structure(s).ok());
}

TEST(Structure, AssociatedMetricOnReebField) {
  for (const auto& name : acbm::zoo_names()) {
    const auto s = acbm::build_structure<Rational>(acbm::builtin(name));
    EXPECT_EQ(s.g_tilde()(s.xi(), s.xi()), Rational(1)) << name;
    EXPECT_EQ(s.g_tilde().signature(), s.g().signature()) << name;
  }
}

TEST(Structure, AssociatedMetricOfAbelianModel) {
  const auto s = acbm::build_structure<Rational>(acbm::builtin("abelian3"));
  const auto& gt = s.g_tilde().matrix();
  EXPECT_EQ(gt(0, 1), Rational(-1));
  EXPECT_EQ(gt(1, 0), Rational(-1));
  EXPECT_EQ(gt(0, 0), Rational(0));
  EXPECT_EQ(gt(2, 2), Rational(1));
}

TEST(FundamentalTensor, MatchesBruteForceOracle) {
  for (const auto& name : acbm::zoo_names()) {
    const auto spec = acbm::builtin(name);
    const auto s = acbm::build_structure<Rational>(spec);
    const auto m = oracle::from_spec(spec);
    const auto nabla = acbm::levi_civita(s.lie(), s.g());
    EXPECT_EQ(oracle::nested3(acbm::fundamental_F(s, nabla, s.g()).F),
              oracle::fundamental(m, oracle::koszul(m.c, m.g), m.g))
        << name;
    const auto gt = oracle::associated(m);
    const auto nabla_t = acbm::levi_civita(s.lie(), s.g_tilde());
    EXPECT_EQ(oracle::nested3(acbm::fundamental_tensor(s, nabla_t, s.g_tilde())),
              oracle::fundamental(m, oracle::koszul(m.c, gt), gt))
        << name;
  }
}

TEST(FundamentalTensor, ConversionFormulasOnRandomModels) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = acbm::build_structure<Rational>(acbm::random_structure(seed, 1 + seed % 2));
    const auto nabla = acbm::levi_civita(s.lie(), s.g());
    const auto nabla_t = acbm::levi_civita(s.lie(), s.g_tilde());
    const auto F = acbm::fundamental_tensor(s, nabla, s.g());
    const auto Ft = acbm::fundamental_tensor(s, nabla_t, s.g_tilde());
    const auto phi_low = acbm::lower_last(nabla_t.coefficients() - nabla.coefficients(), s.g());
    EXPECT_EQ(acbm::F_tilde_from_F(s, F), Ft) << seed;
    EXPECT_EQ(acbm::phi_potential_from_F(s, F), phi_low) << seed;
    EXPECT_EQ(acbm::F_from_phi_potential(s, phi_low), F) << seed;
    EXPECT_TRUE(acbm::f_identity_residuals(s, F, nabla, s.g()).all().exact_zero) << seed;
  }
}

TEST(FundamentalTensor, CorruptedConnectionBreaksIdentities) {
  const auto s = acbm::build_structure<Rational>(acbm::builtin("f5-3"));
  auto gamma = acbm::levi_civita(s.lie(), s.g()).coefficients();
  gamma(0, 0, 1) += Rational(1, 2);
  const acbm::AffineConnection<Rational> bad(gamma);
  EXPECT_THROW(acbm::fundamental_F(s, bad, s.g()), acbm::InvariantViolation);
}

TEST(LeeForms, PhiRelationBetweenThetaAndThetaStar) {
  std::vector<acbm::ModelSpec> specs = acbm::builtin_catalog();
  for (std::uint64_t seed = 1; seed <= 6; ++seed) specs.push_back(acbm::random_structure(seed, 2));
  for (const auto& spec : specs) {
    const auto a = analysed(spec);
    for (const auto* r : {&a.report, &a.report_tilde}) {
      const auto& lee = r->lee;
      for (std::size_t z = 0; z < a.s.dim(); ++z) {
        const auto phi_z = a.s.phi_of(a.s.basis(z));
        EXPECT_EQ(acbm::dot(lee.theta_star, phi_z) + acbm::dot(lee.theta, a.s.phi_of(phi_z)), Rational(0)) << spec.name;
      }
    }
  }
}

TEST(LeeForms, ThetaOfXiIsDivStarOnF4Model) {
  const auto a = analysed(acbm::builtin("f4-3"));
  EXPECT_TRUE(a.report.member(ClassId::F4));
  EXPECT_NE(a.report.theta_xi, Rational(0));
  EXPECT_EQ(a.report.theta_xi, a.report.div_star_eta);
}

TEST(LeeForms, DivIsThetaStarOfXiOnF5Model) {
  const auto a = analysed(acbm::builtin("f5-3"));
  EXPECT_EQ(a.report.div_eta, Rational(-2));
  EXPECT_EQ(a.report.theta_star_xi, a.report.div_eta);
}

TEST(LeeForms, DivergencesVanishOnF6Model) {
  const auto a = analysed(acbm::builtin("f6-5"));
  EXPECT_EQ(a.report.div_eta, Rational(0));
  EXPECT_EQ(a.report.div_star_eta, Rational(0));
}

TEST(LeeForms, DivergenceMatchesOracleTrace) {
  for (const auto& name : acbm::zoo_names()) {
    const auto spec = acbm::builtin(name);
    const auto a = analysed(spec);
    const auto m = oracle::from_spec(spec);
    const auto gamma = oracle::koszul(m.c, m.g);
    oracle::Mat nabla_eta = oracle::zeros(m.d);
    for (std::size_t i = 0; i < m.d; ++i)
      for (std::size_t j = 0; j < m.d; ++j)
        for (std::size_t k = 0; k < m.d; ++k) nabla_eta[i][j] -= m.eta[k] * gamma[k][i][j];
    EXPECT_EQ(a.report.div_eta, oracle::trace2(nabla_eta, m.g)) << name;
    EXPECT_EQ(a.report.div_star_eta, oracle::trace2(nabla_eta, oracle::associated(m))) << name;
  }
}

TEST(Potential, SymmetricAndTraceFreeAlongXi) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(acbm::builtin(name));
    const auto& P = a.phi.low;
    const std::size_t d = a.s.dim();
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z) EXPECT_EQ(P(x, y, z), P(y, x, z)) << name;
    const auto& ginv = a.s.g().inverse();
    Rational tr = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) tr += ginv(i, j) * P(d - 1, i, j);
    EXPECT_EQ(tr, Rational(0)) << name;
  }
}

TEST(Potential, AssociatedFundamentalTensorThroughF) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(acbm::builtin(name));
    EXPECT_EQ(a.F_tilde.F, acbm::F_tilde_from_F(a.s, a.F.F)) << name;
  }
}

TEST(Classification, F4ModelMemberships) {
  const auto a = analysed(acbm::builtin("f4-3"));
  EXPECT_TRUE(a.report.member(ClassId::F4));
  EXPECT_TRUE(a.report.member(ClassId::U2));
  EXPECT_FALSE(a.report.member(ClassId::U1));
  EXPECT_EQ(a.report.basic_classes(), std::vector<ClassId>{ClassId::F4});
}

TEST(Classification, AbelianModelIsCosymplectic) {
  const auto a = analysed(acbm::builtin("abelian3"));
  for (auto c : acbm::all_classes()) {
    EXPECT_TRUE(a.report.member(c)) << acbm::class_name(c);
    EXPECT_TRUE(a.report_tilde.member(c)) << acbm::class_name(c);
  }
}

TEST(Classification, AgreesWithBruteForcePredicates) {
  std::vector<acbm::ModelSpec> specs = acbm::builtin_catalog();
  for (std::uint64_t seed = 1; seed <= 8; ++seed) specs.push_back(acbm::random_structure(seed, 1 + seed % 2));
  for (const auto& spec : specs) {
    const auto a = analysed(spec);
    const auto ref = oracle_classes(spec);
    EXPECT_EQ(a.report.member(ClassId::F0), ref.f0) << spec.name;
    EXPECT_EQ(a.report.member(ClassId::F3), ref.f3) << spec.name;
    EXPECT_EQ(a.report.member(ClassId::U1), ref.u1) << spec.name;
    EXPECT_EQ(a.report.member(ClassId::U2), ref.u2) << spec.name;
  }
}

TEST(Classification, ZooRealisesEveryBasicClass) {
  std::set<ClassId> seen;
  for (const auto& spec : acbm::builtin_catalog())
    for (auto c : analysed(spec).report.basic_classes()) seen.insert(c);
  for (int k = 1; k <= 11; ++k) EXPECT_TRUE(seen.count(static_cast<ClassId>(k))) << "F" << k;
}

TEST(Classification, ClassNamesRoundTrip) {
  for (auto c : acbm::all_classes()) EXPECT_EQ(acbm::class_from_name(acbm::class_name(c)), c);
  EXPECT_THROW(acbm::class_from_name("F12"), std::invalid_argument);
}

TEST(Classification, F3ModelFailsPotentialCondition) {
  // The F3 model satisfies the cyclic condition exactly but its potential
  // does not satisfy Phi(x, phi^2 y, phi^2 z) = -Phi(x, phi y, phi z).
  const auto spec = acbm::builtin("f3-5");
  const auto a = analysed(spec);
  EXPECT_TRUE(oracle_classes(spec).f3);
  EXPECT_TRUE(a.report.member(ClassId::F3));
  const auto r = acbm::phi_condition_residual(a.s, a.phi.low);
  EXPECT_EQ(r.max_abs, 1.0);
  EXPECT_FALSE(a.report.member(ClassId::F3_U3));
}

TEST(NablaXi, F11ClosedForm) {
  const auto a = analysed(acbm::builtin("f11-3"));
  const auto phi_omega = a.s.phi_of(a.report.lee.omega_sharp);
  const auto nabla_xi = acbm::covariant_derivative(a.nabla, a.s.xi());
  EXPECT_EQ(nabla_xi, acbm::tensor_product(phi_omega, a.s.eta()));
  EXPECT_EQ(acbm::apply(a.shape.S_op, a.s.xi()), -phi_omega);
  EXPECT_EQ(phi_omega, a.s.basis(0));
}

TEST(NablaXi, F5ModelIsPhiSquared) {
  const auto a = analysed(acbm::builtin("f5-3"));
  const auto nabla_xi = acbm::covariant_derivative(a.nabla, a.s.xi());
  EXPECT_EQ(nabla_xi, acbm::compose(a.s.phi(), a.s.phi()));
}

TEST(NablaXi, F9ModelValues) {
  const auto a = analysed(acbm::builtin("f9-3"));
  EXPECT_EQ(a.nabla(a.s.basis(0), a.s.xi()), -a.s.basis(0));
  EXPECT_EQ(a.nabla(a.s.basis(1), a.s.xi()), a.s.basis(1));
  EXPECT_TRUE(acbm::is_zero(a.nabla(a.s.xi(), a.s.xi()), acbm::Tolerance{}));
}

TEST(NablaXi, TableHoldsAcrossZoo) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(acbm::builtin(name));
    for (const auto* r : {&a.report, &a.report_tilde})
      for (const auto& row : acbm::nabla_xi_table_check(a.s, a.nabla, a.nabla_tilde, *r))
        EXPECT_TRUE(row.holds) << name << " " << acbm::class_name(row.cls);
  }
}
