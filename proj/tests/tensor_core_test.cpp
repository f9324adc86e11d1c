#include <gtest/gtest.h>

#include <acbm/metric.hpp>
#include <cstdlib>
#include <random>

#include "oracle.hpp"

using acbm::Metric;
using acbm::Rational;
using acbm::Tensor;

namespace {

Tensor<Rational> matrix02(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t d = rows.size();
  Tensor<Rational> m(d, 0, 2);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Tensor<Rational> random_symmetric(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> pick(-4, 4);
  Tensor<Rational> m(d, 0, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) m(i, j) = m(j, i) = pick(rng);
  return m;
}

}  // namespace

TEST(Scalar, ParsesAndFormatsCanonically) {
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational("6/4")), "3/2");
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational("-1.25")), "-5/4");
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational("3e-2")), "3/100");
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational("7")), "7");
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational("0/5")), "0");
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational("0.25")), "1/4");
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational("010/08")), "5/4");
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational("-0.075e1")), "-3/4");
  EXPECT_EQ(acbm::format_rational(acbm::parse_rational(" -2/6 ")), "-1/3");
}

TEST(Scalar, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "--1", "1.2.3", "1 2"})
    EXPECT_THROW(acbm::parse_rational(bad), acbm::ParseError) << bad;
}

TEST(Scalar, DefaultToleranceReadsEnvironment) {
  ::setenv("ACBM_EPS", "1e-6", 1);
  EXPECT_DOUBLE_EQ(acbm::default_tolerance().eps, 1e-6);
  ::unsetenv("ACBM_EPS");
  EXPECT_DOUBLE_EQ(acbm::default_tolerance().eps, 1e-9);
}

TEST(Tensor, IndexingFollowsValenceAndRowMajorLayout) {
  Tensor<Rational> t(3, 1, 2);
  t(2, 0, 1) = 5;
  EXPECT_EQ(t.size(), 27u);
  EXPECT_EQ(t.entries()[2 * 9 + 0 * 3 + 1], Rational(5));
  EXPECT_THROW(t(0, 0), acbm::DimensionMismatch);
  EXPECT_THROW(t(3, 0, 0), std::out_of_range);
  EXPECT_THROW(Tensor<Rational>(0, 1, 0), acbm::DimensionMismatch);
}

TEST(Tensor, ShapeMismatchThrows) {
  Tensor<Rational> a(3, 0, 2), b(3, 1, 1), c(4, 0, 2);
  EXPECT_THROW(a + b, acbm::DimensionMismatch);
  EXPECT_THROW(a - c, acbm::DimensionMismatch);
  EXPECT_THROW(acbm::residual(a, c), acbm::DimensionMismatch);
}

TEST(Tensor, ContractionOfIdentityIsDimension) {
  EXPECT_EQ(acbm::trace(Tensor<Rational>::identity(5)), Rational(5));
  const auto id = Tensor<Rational>::identity(4);
  EXPECT_EQ(acbm::contract(id, 0, 0).entries()[0], Rational(4));
}

TEST(Tensor, TensorProductSlotOrder) {
  auto v = Tensor<Rational>::basis_vector(3, 1);
  auto w = Tensor<Rational>::covector(3);
  w(2) = 7;
  const auto vw = acbm::tensor_product(v, w);
  ASSERT_TRUE(vw.has_valence(1, 1));
  EXPECT_EQ(vw(1, 2), Rational(7));
  EXPECT_EQ(acbm::trace(vw), Rational(0));
  EXPECT_EQ(acbm::apply(vw, Tensor<Rational>::basis_vector(3, 2)), Rational(7) * v);
}

TEST(Tensor, ComposeMatchesMatrixProduct) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(-3, 3);
  Tensor<Rational> a(4, 1, 1), b(4, 1, 1);
  for (auto& x : a.entries()) x = pick(rng);
  for (auto& x : b.entries()) x = pick(rng);
  const auto ab = acbm::compose(a, b);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Rational v = 0;
      for (std::size_t k = 0; k < 4; ++k) v += a(i, k) * b(k, j);
      EXPECT_EQ(ab(i, j), v);
    }
}

TEST(Tensor, AlternationPlusSymmetrizationIsIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(-5, 5);
  Tensor<Rational> b(5, 0, 2);
  for (auto& x : b.entries()) x = pick(rng);
  EXPECT_EQ(acbm::alternation(b) + acbm::symmetrization(b), b);
  EXPECT_EQ(acbm::transpose(acbm::alternation(b)), -acbm::alternation(b));
}

TEST(Residual, ExactAndFloatSemantics) {
  Tensor<double> a(2, 0, 1), b(2, 0, 1);
  a(0) = 1000.0;
  b(0) = 1000.0 + 1e-7;
  const auto r = acbm::residual(a, b);
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(r.ok(acbm::Tolerance{1e-9}));
  EXPECT_FALSE(r.ok(acbm::Tolerance{1e-12}));

  Tensor<Rational> p(2, 0, 1), q(2, 0, 1);
  q(1) = Rational(1, 1000000000);
  EXPECT_FALSE(acbm::residual(p, q).ok(acbm::Tolerance{1.0}));
  EXPECT_TRUE(acbm::residual(p, p).ok(acbm::Tolerance{}));
}

TEST(Metric, InverseOfLorentzianDiagonal) {
  const auto g = matrix02({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  const auto inv = acbm::metric_inverse(g);
  ASSERT_TRUE(inv.has_valence(2, 0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(inv(i, j), g(i, j));
}

TEST(Metric, InverseOfIdentity) {
  const auto inv = acbm::metric_inverse(matrix02({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(inv(i, j), Rational(i == j ? 1 : 0));
}

TEST(Metric, InverseOfAssociatedAbelianMetric) {
  const auto gt = matrix02({{0, -1, 0}, {-1, 0, 0}, {0, 0, 1}});
  const auto inv = acbm::metric_inverse(gt);
  EXPECT_EQ(inv(0, 1), Rational(-1));
  EXPECT_EQ(inv(1, 0), Rational(-1));
  EXPECT_EQ(inv(0, 0), Rational(0));
  EXPECT_EQ(inv(2, 2), Rational(1));
  EXPECT_EQ(acbm::signature_of(gt), (acbm::Signature{2, 1}));
}

TEST(Metric, DegenerateAndAsymmetricInputsThrow) {
  EXPECT_THROW(acbm::metric_inverse(matrix02({{1, 1}, {1, 1}})), acbm::DegenerateMetric);
  EXPECT_THROW(Metric<Rational>::from_matrix(matrix02({{1, 2}, {0, 1}})), acbm::AsymmetricMetric);
  Tensor<double> tiny(2, 0, 2);
  tiny(0, 0) = 1e-12;
  tiny(1, 1) = 1.0;
  EXPECT_THROW(acbm::metric_inverse(tiny, acbm::Tolerance{1e-9}), acbm::DegenerateMetric);
}

TEST(Metric, SharpOfEtaIsXi) {
  const auto g = Metric<Rational>::from_matrix(matrix02({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}));
  auto eta = Tensor<Rational>::covector(3);
  eta(2) = 1;
  EXPECT_EQ(acbm::sharp(eta, g), Tensor<Rational>::basis_vector(3, 2));
  EXPECT_EQ(acbm::flat(acbm::sharp(eta, g), g), eta);
}

TEST(Metric, TraceOfMetricIsDimension) {
  const auto g = Metric<Rational>::from_matrix(matrix02({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}));
  EXPECT_EQ(acbm::trace_with_metric(g.matrix(), g), Rational(3));
}

TEST(MetricProperty, InverseAgreesWithGaussJordanOracle) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 5);
    const auto m = random_symmetric(rng, d);
    oracle::Mat plain(d, oracle::Vec(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) plain[i][j] = m(i, j);
    if (acbm::determinant(m) == 0) {
      EXPECT_THROW(acbm::metric_inverse(m), acbm::DegenerateMetric);
      continue;
    }
    const auto inv = acbm::metric_inverse(m);
    const auto ref = oracle::inverse(plain);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) EXPECT_EQ(inv(i, j), ref[i][j]);
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST(MetricProperty, SignatureIsCongruenceInvariant) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 3 + static_cast<std::size_t>(trial % 3);
    const auto m = random_symmetric(rng, d);
    Tensor<Rational> p(d, 0, 2);
    for (auto& x : p.entries()) x = pick(rng);
    if (acbm::determinant(p) == 0) continue;
    Tensor<Rational> congruent(d, 0, 2);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b) congruent(i, j) += p(a, i) * m(a, b) * p(b, j);
    EXPECT_EQ(acbm::signature_of(m), acbm::signature_of(congruent));
  }
}

TEST(MetricProperty, RaiseLowerRoundTrip) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> pick(-3, 3);
  const auto g = Metric<Rational>::from_matrix(matrix02({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}));
  for (int trial = 0; trial < 10; ++trial) {
    Tensor<Rational> t(3, 1, 2);
    for (auto& x : t.entries()) x = pick(rng);
    EXPECT_EQ(acbm::raise_last(acbm::lower_last(t, g), g), t);
  }
}
