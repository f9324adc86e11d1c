#include <gtest/gtest.h>

#include <acbm/analysis.hpp>
#include <acbm/zoo.hpp>
#include <random>

#include "oracle.hpp"

using acbm::ClassId;
using acbm::Rational;
using acbm::Tensor;

namespace {

acbm::Analysis<Rational> analysed(const std::string& name) {
  return acbm::analyse(acbm::build_structure<Rational>(acbm::builtin(name)));
}

bool same(const acbm::AffineConnection<Rational>& a, const acbm::AffineConnection<Rational>& b) {
  return a.coefficients() == b.coefficients();
}

}  // namespace

TEST(Svk, ClosedFormMatchesProjectorOracle) {
  std::vector<acbm::ModelSpec> specs = acbm::builtin_catalog();
  for (std::uint64_t seed = 1; seed <= 6; ++seed) specs.push_back(acbm::random_structure(seed, 2));
  for (const auto& spec : specs) {
    const auto s = acbm::build_structure<Rational>(spec);
    const auto m = oracle::from_spec(spec);
    const auto nabla = acbm::levi_civita(s.lie(), s.g());
    const auto nabla_t = acbm::levi_civita(s.lie(), s.g_tilde());
    EXPECT_EQ(oracle::nested3(acbm::svk_closed_form(s, nabla).coefficients()), oracle::svk(m, oracle::koszul(m.c, m.g)))
        << spec.name;
    EXPECT_EQ(oracle::nested3(acbm::svk_closed_form(s, nabla_t).coefficients()),
              oracle::svk(m, oracle::koszul(m.c, oracle::associated(m))))
        << spec.name;
  }
}

TEST(Svk, StructureTensorsAndDistributionsAreParallel) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(name);
    for (const auto& [conn, metric] : {std::pair{&a.svk.D, &a.s.g()}, std::pair{&a.svk.D_tilde, &a.s.g_tilde()}}) {
      const auto n = acbm::naturality(*conn, a.s, *metric);
      EXPECT_TRUE(n.xi.exact_zero) << name;
      EXPECT_TRUE(n.eta.exact_zero) << name;
      EXPECT_TRUE(n.metric.exact_zero) << name;
      for (std::size_t x = 0; x < a.s.dim(); ++x)
        for (std::size_t y = 0; y + 1 < a.s.dim(); ++y)
          EXPECT_EQ(a.s.eta_of((*conn)(a.s.basis(x), acbm::project_h(a.s, a.s.basis(y)))), Rational(0)) << name;
    }
  }
}

TEST(Svk, ProjectionsOfMixedVector) {
  const auto s = acbm::build_structure<Rational>(acbm::builtin("abelian3"));
  const auto x = s.basis(0) + Rational(3) * s.xi();
  EXPECT_EQ(acbm::project_h(s, x), s.basis(0));
  EXPECT_EQ(acbm::project_v(s, x), Rational(3) * s.xi());
  EXPECT_EQ(acbm::project_h(s, x) + acbm::project_v(s, x), x);
}

TEST(Svk, EqualsLeviCivitaWhenXiParallel) {
  const auto a = analysed("f1-3");
  ASSERT_TRUE(a.report.member(ClassId::U1));
  EXPECT_TRUE(same(a.svk.D, a.nabla));
}

TEST(Svk, DiffersFromLeviCivitaWhenXiNotParallel) {
  const auto a = analysed("f5-3");
  EXPECT_FALSE(same(a.svk.D, a.nabla));
}

TEST(Svk, F4ModelGivesPhiBConnection) {
  const auto a = analysed("f4-3");
  EXPECT_TRUE(same(a.svk.D, acbm::phiB_connection(a.s, a.nabla)));
  EXPECT_TRUE(acbm::is_natural(a.svk.D, a.s, a.s.g()));
  EXPECT_TRUE(acbm::is_zero(a.svk.D_phi, acbm::Tolerance{}));
}

TEST(Svk, F2ModelIsNotNatural) {
  const auto a = analysed("f2-5");
  EXPECT_FALSE(acbm::is_natural(a.svk.D, a.s, a.s.g()));
  EXPECT_FALSE(same(acbm::phiB_connection(a.s, a.nabla), a.svk.D));
}

TEST(Svk, PotentialAndTorsionClosedFormsOnF11) {
  const auto a = analysed("f11-3");
  const auto& s = a.s;
  const auto nabla_xi = acbm::covariant_derivative(a.nabla, s.xi());
  const auto nabla_eta = acbm::covariant_derivative(a.nabla, s.eta());
  const auto de = acbm::d_eta(s.lie(), s.eta());
  const std::size_t d = s.dim();
  Tensor<Rational> Q(d, 1, 2), T(d, 1, 2);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) {
        Q(k, x, y) = -s.eta()(y) * nabla_xi(k, x) + nabla_eta(x, y) * s.xi()(k);
        T(k, x, y) = s.eta()(x) * nabla_xi(k, y) - s.eta()(y) * nabla_xi(k, x) + de(x, y) * s.xi()(k);
      }
  EXPECT_EQ(a.svk.pt.Q_vec, Q);
  EXPECT_EQ(a.svk.pt.T_vec, T);
  EXPECT_EQ(acbm::potential_closed_form(s, a.nabla), Q);
  EXPECT_EQ(acbm::torsion_closed_form(s, a.nabla), T);
  EXPECT_FALSE(acbm::is_zero(T, acbm::Tolerance{}));
}

TEST(SvkProperty, TorsionPotentialRoundTrip) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pick(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 3 + 2 * static_cast<std::size_t>(trial % 2);
    Tensor<Rational> T(d, 0, 3);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = x + 1; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z) {
          T(x, y, z) = pick(rng);
          T(y, x, z) = -T(x, y, z);
        }
    const auto Q = acbm::potential_from_torsion(T);
    EXPECT_EQ(acbm::torsion_from_potential(Q), T);
    // Q of a metric connection is skew in its last two slots.
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z) EXPECT_EQ(Q(x, y, z), -Q(x, z, y));
  }
}

TEST(SvkProperty, SymmetricPotentialHasNoTorsion) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> pick(-3, 3);
  Tensor<Rational> Q(3, 0, 3);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = x; y < 3; ++y)
      for (std::size_t z = 0; z < 3; ++z) Q(x, y, z) = Q(y, x, z) = pick(rng);
  EXPECT_TRUE(acbm::is_zero(acbm::torsion_from_potential(Q), acbm::Tolerance{}));
}

TEST(Svk, PotentialFromTorsionRejectsNonSkewInput) {
  Tensor<Rational> T(3, 0, 3);
  T(0, 1, 2) = 1;
  EXPECT_THROW(acbm::potential_from_torsion(T), std::invalid_argument);
}

TEST(Svk, CovariantPhiClosedFormAcrossZoo) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(name);
    EXPECT_EQ(acbm::covariant_phi(a.s, a.svk.D), acbm::covariant_phi_D_closed_form(a.s, a.nabla)) << name;
  }
}

TEST(Svk, AssociatedConnectionThroughPotential) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(name);
    EXPECT_TRUE(same(a.svk.D_tilde, acbm::dtilde_from_d(a.s, a.svk.D, a.phi.vec))) << name;
    EXPECT_EQ(a.svk.D_tilde_phi, acbm::dtilde_phi_relation(a.s, a.svk.D_phi, a.phi.vec)) << name;
  }
}

TEST(Svk, ConnectionsCoincideOnU3Entries) {
  for (const char* name : {"f4-3", "f5-3", "f6-5", "f11-3"}) {
    const auto a = analysed(name);
    ASSERT_TRUE(a.report.member(ClassId::U2)) << name;
    EXPECT_TRUE(same(a.svk.D_tilde, a.svk.D)) << name;
    EXPECT_TRUE(acbm::is_natural(a.svk.D_tilde, a.s, a.s.g_tilde())) << name;
  }
}

TEST(Svk, U2EntriesWithDistinctConnections) {
  // These entries are in U2 yet D~ differs from D; the oracle confirms it.
  for (const char* name : {"solv3-a", "f7-5", "f8-3", "f9-3"}) {
    const auto spec = acbm::builtin(name);
    const auto a = acbm::analyse(acbm::build_structure<Rational>(spec));
    ASSERT_TRUE(a.report.member(ClassId::U2)) << name;
    EXPECT_FALSE(same(a.svk.D_tilde, a.svk.D)) << name;
    const auto m = oracle::from_spec(spec);
    EXPECT_NE(oracle::svk(m, oracle::koszul(m.c, oracle::associated(m))), oracle::svk(m, oracle::koszul(m.c, m.g)))
        << name;
  }
}

TEST(Svk, CosymplecticModelHasFourEqualConnections) {
  const auto a = analysed("abelian3");
  EXPECT_TRUE(same(a.svk.D, a.nabla));
  EXPECT_TRUE(same(a.svk.D_tilde, a.nabla_tilde));
  EXPECT_TRUE(same(a.svk.D, a.svk.D_tilde));
}
