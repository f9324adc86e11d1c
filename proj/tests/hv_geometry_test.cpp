#include <gtest/gtest.h>

#include <acbm/analysis.hpp>
#include <acbm/zoo.hpp>

using acbm::Rational;
using acbm::Tensor;

namespace {

acbm::Analysis<Rational> analysed(const std::string& name) {
  return acbm::analyse(acbm::build_structure<Rational>(acbm::builtin(name)));
}

bool chain_value(const std::vector<acbm::EquivalenceChain>& chains, std::size_t k) {
  EXPECT_TRUE(chains.at(k).consistent()) << chains.at(k).label;
  return chains.at(k).value();
}

std::vector<acbm::EquivalenceChain> g_chains(const acbm::Analysis<Rational>& a) {
  return acbm::equivalence_chains(a.s, a.nabla, a.svk.D, a.svk.pt, a.shape.S_op, a.shape.S_diamond);
}

}  // namespace

TEST(Pi1, AbelianModelValue) {
  const auto s = acbm::build_structure<Rational>(acbm::builtin("abelian3"));
  const auto x = s.basis(0), y = s.basis(1);
  EXPECT_EQ(acbm::pi1(s.g(), x, y, y, x), Rational(-1));
  // For g~, the plane {e0, e0 + e1} has g~-norm -1 as well.
  const auto z = s.basis(0) + s.basis(1);
  EXPECT_EQ(acbm::pi1(s.g_tilde(), x, z, z, x), Rational(-1));
}

TEST(Pi1, TensorFormMatchesDefinition) {
  const auto s = acbm::build_structure<Rational>(acbm::builtin("f5-3"));
  const auto P = acbm::pi1_tensor(s.g());
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y)
      for (std::size_t z = 0; z < 3; ++z)
        for (std::size_t w = 0; w < 3; ++w) {
          const Rational ref =
              s.g().matrix()(y, z) * s.g().matrix()(x, w) - s.g().matrix()(x, z) * s.g().matrix()(y, w);
          EXPECT_EQ(P(x, y, z, w), ref);
        }
}

TEST(Shape, TraceIdentityAcrossZoo) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(name);
    EXPECT_EQ(a.shape.trace_S, a.shape.trace_S_tilde) << name;
    EXPECT_EQ(a.shape.trace_S, -a.report.div_eta) << name;
    EXPECT_EQ(a.shape.trace_S, -a.report.theta_star_xi) << name;
  }
}

TEST(Shape, ShapeOperatorIsHorizontal) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(name);
    for (std::size_t x = 0; x < a.s.dim(); ++x) {
      EXPECT_EQ(a.s.eta_of(acbm::apply(a.shape.S_op, a.s.basis(x))), Rational(0)) << name;
      EXPECT_EQ(a.s.eta_of(acbm::apply(a.shape.S_tilde, a.s.basis(x))), Rational(0)) << name;
    }
  }
}

TEST(Hv, VerticalTorsionAgreesOnBothSides) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(name);
    EXPECT_EQ(a.hv.Tv_tilde, a.hv.Tv) << name;
  }
}

TEST(Hv, ComponentsSumToWholeTensors) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(name);
    EXPECT_EQ(a.hv.Qh + a.hv.Qv, a.svk.pt.Q_vec) << name;
    EXPECT_EQ(a.hv.Th + a.hv.Tv, a.svk.pt.T_vec) << name;
    EXPECT_EQ(a.hv.Qh_tilde + a.hv.Qv_tilde, a.svk.pt_tilde.Q_vec) << name;
    EXPECT_EQ(a.hv.Th_tilde + a.hv.Tv_tilde, a.svk.pt_tilde.T_vec) << name;
  }
}

TEST(Hv, WedgeAndProductHelpers) {
  const std::size_t d = 3;
  auto alpha = Tensor<Rational>::covector(d);
  alpha(0) = 2;
  Tensor<Rational> B = Tensor<Rational>::identity(d);
  const auto w = acbm::wedge(alpha, B);
  const auto e0 = Tensor<Rational>::basis_vector(d, 0), e1 = Tensor<Rational>::basis_vector(d, 1);
  EXPECT_EQ(acbm::apply(w, e0, e1), Rational(2) * e1);
  EXPECT_EQ(acbm::apply(w, e1, e0), Rational(-2) * e1);
  const auto bv = acbm::form_times_vector(Tensor<Rational>(d, 0, 2), e0);
  EXPECT_TRUE(acbm::is_zero(bv, acbm::Tolerance{}));
  const auto ea = acbm::endo_times_form(B, alpha);
  EXPECT_EQ(acbm::apply(ea, e1, e0), Rational(2) * e1);
}

TEST(Chains, F7ModelHasSkewNablaEta) {
  const auto a = analysed("f7-5");
  const auto chains = g_chains(a);
  ASSERT_EQ(chains.size(), 3u);
  EXPECT_FALSE(chain_value(chains, 0));
  EXPECT_TRUE(chain_value(chains, 1));
  EXPECT_FALSE(chain_value(chains, 2));
}

TEST(Chains, F4ModelHasSymmetricNablaEta) {
  const auto a = analysed("f4-3");
  const auto chains = g_chains(a);
  EXPECT_TRUE(chain_value(chains, 0));
  EXPECT_FALSE(chain_value(chains, 1));
  EXPECT_FALSE(chain_value(chains, 2));
}

TEST(Chains, ParallelXiSatisfiesEveryChain) {
  const auto a = analysed("f1-3");
  const auto chains = g_chains(a);
  for (std::size_t k = 0; k < chains.size(); ++k) EXPECT_TRUE(chain_value(chains, k));
}

TEST(Chains, ConsistentOnBothSidesAcrossZoo) {
  for (const auto& name : acbm::zoo_names()) {
    const auto a = analysed(name);
    const auto st = a.s.associated();
    for (const auto& ch : g_chains(a)) EXPECT_TRUE(ch.consistent()) << name << " g " << ch.label;
    for (const auto& ch : acbm::equivalence_chains(st, a.nabla_tilde, a.svk.D_tilde, a.svk.pt_tilde, a.shape.S_tilde,
                                                   a.shape.S_tilde_diamond))
      EXPECT_TRUE(ch.consistent()) << name << " g~ " << ch.label;
  }
}
