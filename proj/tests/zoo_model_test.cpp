#include <gtest/gtest.h>

#include <acbm/analysis.hpp>
#include <acbm/verify.hpp>
#include <acbm/zoo.hpp>
#include <filesystem>
#include <fstream>
#include <set>

using acbm::ClassId;
using acbm::Rational;

TEST(ModelJson, ZooRoundTripIsByteIdentical) {
  for (const auto& spec : acbm::builtin_catalog()) {
    const std::string text = acbm::to_json(spec);
    const auto back = acbm::from_json(text);
    EXPECT_EQ(acbm::to_json(back), text) << spec.name;
    EXPECT_EQ(back.brackets, spec.brackets) << spec.name;
    EXPECT_EQ(back.g, spec.g) << spec.name;
    EXPECT_EQ(back.expected, spec.expected) << spec.name;
    EXPECT_EQ(back.planes.size(), spec.planes.size()) << spec.name;
  }
}

TEST(ModelJson, ScalarsAreRationalStrings) {
  auto spec = acbm::adapted_spec(1, "q");
  acbm::add_bracket(spec, 2, 0, 0, Rational(3, 4));
  const std::string text = acbm::to_json(spec);
  // Stored once per pair i < j: [e0, xi] = -3/4 e0.
  EXPECT_NE(text.find("\"-3/4\""), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(acbm::from_json(text).brackets(0, 2, 0), Rational(3, 4));
}

TEST(ModelJson, AcceptsIntegerAndDecimalScalars) {
  auto spec = acbm::from_json(acbm::to_json(acbm::builtin("abelian3")));
  std::string text = acbm::to_json(spec);
  const auto pos = text.find("\"g\"");
  ASSERT_NE(pos, std::string::npos);
  const auto one = text.find("\"1\"", pos);
  text.replace(one, 3, "\"1.0\"");
  const auto minus = text.find("\"-1\"", pos);
  text.replace(minus, 4, "-1");
  EXPECT_EQ(acbm::from_json(text).g, spec.g);
}

TEST(ModelJson, MalformedInputsThrowParseError) {
  const std::string good = acbm::to_json(acbm::builtin("abelian3"));
  EXPECT_THROW(acbm::from_json("{"), acbm::ParseError);
  EXPECT_THROW(acbm::from_json("[]"), acbm::ParseError);
  EXPECT_THROW(acbm::from_json("{\"dim\": 3}"), acbm::ParseError);
  std::string bad_dim = good;
  bad_dim.replace(bad_dim.find("\"dim\": 3"), 8, "\"dim\": -3");
  EXPECT_THROW(acbm::from_json(bad_dim), acbm::ParseError);
  std::string bad_scalar = good;
  bad_scalar.replace(bad_scalar.find("\"1\""), 3, "\"x1\"");
  EXPECT_THROW(acbm::from_json(bad_scalar), acbm::ParseError);
}

TEST(ModelJson, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "acbm_model_roundtrip.json";
  const auto spec = acbm::builtin("dim5-tr");
  acbm::save_model_file(spec, path);
  EXPECT_EQ(acbm::to_json(acbm::load_model_file(path)), acbm::to_json(spec));
  std::filesystem::remove(path);
  EXPECT_THROW(acbm::load_model_file(path), std::exception);
}

TEST(ModelJson, GammaPerturbationSurvivesRoundTrip) {
  auto spec = acbm::builtin("abelian3");
  acbm::Tensor<Rational> t(3, 1, 2);
  t(0, 0, 0) = Rational(1, 2);
  spec.gamma_perturbation = t;
  const auto back = acbm::from_json(acbm::to_json(spec));
  ASSERT_TRUE(back.gamma_perturbation.has_value());
  EXPECT_EQ(*back.gamma_perturbation, t);
}

TEST(Zoo, NamesAndLookup) {
  const auto names = acbm::zoo_names();
  EXPECT_EQ(names.front(), "abelian3");
  EXPECT_EQ(names.size(), acbm::builtin_catalog().size());
  EXPECT_THROW(acbm::builtin("no-such-model"), acbm::UnknownModel);
}

TEST(Zoo, RecordedMembershipsHold) {
  for (const auto& spec : acbm::builtin_catalog()) {
    const auto a = acbm::analyse(acbm::build_structure<Rational>(spec));
    for (const auto& c : spec.expected) EXPECT_TRUE(a.report.member(acbm::class_from_name(c))) << spec.name << " " << c;
    for (const auto& c : spec.excluded)
      EXPECT_FALSE(a.report.member(acbm::class_from_name(c))) << spec.name << " " << c;
  }
}

TEST(Zoo, CoversDimensionsThreeFiveSeven) {
  std::set<std::size_t> dims;
  for (const auto& spec : acbm::builtin_catalog()) dims.insert(spec.dim());
  EXPECT_EQ(dims, (std::set<std::size_t>{3, 5, 7}));
}

TEST(Zoo, RandomStructureIsDeterministic) {
  EXPECT_EQ(acbm::to_json(acbm::random_structure(7, 2)), acbm::to_json(acbm::random_structure(7, 2)));
  EXPECT_NE(acbm::to_json(acbm::random_structure(7, 2)), acbm::to_json(acbm::random_structure(8, 2)));
}

TEST(Zoo, RandomStructureClassifiesInDimensionFive) {
  const auto spec = acbm::random_structure(1, 2);
  EXPECT_EQ(spec.dim(), 5u);
  const auto a = acbm::analyse(acbm::build_structure<Rational>(spec));
  EXPECT_FALSE(a.report.member(ClassId::F0));
  // Only [xi, .] is non-zero, so F vanishes on the contact distribution.
  const std::size_t h = spec.dim() - 1;
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t z = 0; z < h; ++z) EXPECT_EQ(a.F.F(x, y, z), Rational(0));
}

TEST(Zoo, RandomStructureRejectsZeroN) { EXPECT_THROW(acbm::random_structure(1, 0), std::invalid_argument); }

TEST(Zoo, AddBracketRejectsDiagonal) {
  auto spec = acbm::adapted_spec(1);
  EXPECT_THROW(acbm::add_bracket(spec, 1, 1, 0, Rational(1)), std::invalid_argument);
}

TEST(Zoo, BackendsAgreeOnReportedScalars) {
  for (const char* name : {"solv3-a", "f8-3", "dim5-tr"}) {
    const auto spec = acbm::builtin(name);
    const auto q = acbm::reported_scalars<Rational>(spec);
    const auto f = acbm::reported_scalars<double>(spec);
    ASSERT_EQ(q.size(), f.size()) << name;
    for (std::size_t k = 0; k < q.size(); ++k) {
      EXPECT_EQ(q[k].first, f[k].first);
      EXPECT_NEAR(q[k].second, f[k].second, 1e-9 * std::max(1.0, std::abs(q[k].second))) << name << " " << q[k].first;
    }
  }
}
