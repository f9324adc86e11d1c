#include <acbm/analysis.hpp>
#include <acbm/classify.hpp>
#include <acbm/zoo.hpp>
#include <functional>
#include <random>

namespace acbm {

ModelSpec adapted_spec(std::size_t n, std::string name, std::string description) {
  if (n == 0) throw std::invalid_argument("adapted_spec: n must be positive");
  const std::size_t d = 2 * n + 1;
  ModelSpec spec;
  spec.name = std::move(name);
  spec.description = std::move(description);
  spec.brackets = Tensor<Rational>(d, 1, 2);
  spec.phi = Tensor<Rational>(d, 1, 1);
  spec.g = Tensor<Rational>(d, 0, 2);
  for (std::size_t i = 0; i < n; ++i) {
    spec.phi(n + i, i) = 1;
    spec.phi(i, n + i) = -1;
    spec.g(i, i) = 1;
    spec.g(n + i, n + i) = -1;
  }
  spec.g(2 * n, 2 * n) = 1;
  spec.xi = Tensor<Rational>::basis_vector(d, 2 * n);
  spec.eta = Tensor<Rational>::covector(d);
  spec.eta(2 * n) = 1;
  return spec;
}

void add_bracket(ModelSpec& spec, std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
  if (i == j) throw std::invalid_argument("add_bracket: [e_i, e_i] is zero");
  spec.brackets(k, i, j) += value;
  spec.brackets(k, j, i) -= value;
}

namespace {

struct CatalogItem {
  const char* name;
  std::function<ModelSpec()> make;
};

std::function<ModelSpec()> classified(std::function<ModelSpec()> make, std::vector<std::string> expected,
                                      std::vector<std::string> excluded) {
  return [make = std::move(make), expected = std::move(expected), excluded = std::move(excluded)] {
    ModelSpec spec = make();
    spec.expected = expected;
    spec.excluded = excluded;
    return spec;
  };
}

/// [xi, e_a] = sum_b A(b, a) e_b on the contact distribution of dimension 2n.
ModelSpec xi_action(std::size_t n, const std::vector<std::vector<int>>& A, std::string name, std::string description) {
  ModelSpec spec = adapted_spec(n, std::move(name), std::move(description));
  const std::size_t xi = 2 * n;
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = 0; b < 2 * n; ++b)
      if (A[b][a] != 0) add_bracket(spec, xi, a, b, Rational(A[b][a]));
  return spec;
}

const std::vector<CatalogItem>& catalog() {
  static const std::vector<CatalogItem> items = {
      {"abelian3",
       classified([] { return adapted_spec(1, "abelian3", "abelian Lie algebra of dimension 3"); }, {"F0"}, {})},
      {"solv3-a",
       classified([] { return xi_action(1, {{1, 0}, {0, 2}}, "solv3-a", "[xi,e1] = e1, [xi,e2] = a e2 with a = 2"); },
                  {"U2"}, {"U1", "U3", "F3+U3"})},
      {"f1-3", classified(
                   [] {
                     ModelSpec spec = adapted_spec(1, "f1-3", "[e1,e2] = e1, xi central");
                     add_bracket(spec, 0, 1, 0, 1);
                     return spec;
                   },
                   {"F1", "U1"}, {"F0", "F2", "F3", "U2"})},
      {"f2-5", classified(
                   [] {
                     ModelSpec spec = adapted_spec(2, "f2-5", "[phi e2, e2] = -e1");
                     add_bracket(spec, 3, 1, 0, -1);
                     return spec;
                   },
                   {"F2", "U1"}, {"F0", "F1", "F3", "U2"})},
      {"f3-5", classified(
                   [] {
                     ModelSpec spec =
                         adapted_spec(2, "f3-5", "[e1,e2] = phi e2, [e1,phi e2] = e2, [e2,phi e2] = -e1, xi central");
                     add_bracket(spec, 0, 1, 3, 1);
                     add_bracket(spec, 0, 3, 1, 1);
                     add_bracket(spec, 1, 3, 0, -1);
                     return spec;
                   },
                   {"F3", "U1"}, {"F0", "F1", "F2", "U2"})},
      {"f4-3", classified([] { return xi_action(1, {{0, -1}, {1, 0}}, "f4-3", "[xi,x] = phi x"); }, {"F4", "U2", "U3"},
                          {"F0", "U1"})},
      {"f5-3", classified([] { return xi_action(1, {{1, 0}, {0, 1}}, "f5-3", "[xi,x] = x"); }, {"F5", "U2", "U3"},
                          {"F0", "U1"})},
      {"f6-5", classified(
                   [] {
                     return xi_action(2, {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}, "f6-5",
                                      "[xi,x] = A x with A = diag(1,-1,1,-1) commuting with phi");
                   },
                   {"F6", "U2", "U3"}, {"F0", "U1"})},
      {"f7-5", classified(
                   [] {
                     ModelSpec spec = adapted_spec(2, "f7-5", "[e1,e2] = -xi, [phi e1, phi e2] = xi");
                     add_bracket(spec, 0, 1, 4, -1);
                     add_bracket(spec, 2, 3, 4, 1);
                     return spec;
                   },
                   {"F7", "U2", "U3"}, {"F0", "U1"})},
      {"f8-3", classified(
                   [] {
                     ModelSpec spec = xi_action(1, {{0, -1}, {-1, 0}}, "f8-3",
                                                "[e1,phi e1] = 2 xi, [xi,e1] = -phi e1, [xi,phi e1] = -e1");
                     add_bracket(spec, 0, 1, 2, 2);
                     return spec;
                   },
                   {"F8", "U2"}, {"F0", "U1", "U3"})},
      {"f9-3", classified([] { return xi_action(1, {{1, 0}, {0, -1}}, "f9-3", "[xi,e1] = e1, [xi,e2] = -e2"); },
                          {"F9", "U2", "U1~"}, {"F0", "U1"})},
      {"f10-3", classified([] { return xi_action(1, {{0, 1}, {1, 0}}, "f10-3", "[xi,e1] = e2, [xi,e2] = e1"); },
                           {"F10", "U1"}, {"F0", "U2", "U1~"})},
      {"f11-3", classified(
                    [] {
                      ModelSpec spec = adapted_spec(1, "f11-3", "[e1,xi] = xi");
                      add_bracket(spec, 0, 2, 2, 1);
                      return spec;
                    },
                    {"F11", "U2", "U3"}, {"F0", "U1"})},
      {"heis3", classified(
                    [] {
                      ModelSpec spec = adapted_spec(1, "heis3", "Heisenberg algebra [e1,e2] = xi");
                      add_bracket(spec, 0, 1, 2, 1);
                      return spec;
                    },
                    {"F1+F2+U3"}, {"U1", "U2", "U1~"})},
      {"dim5-tr", classified(
                      [] {
                        ModelSpec spec =
                            xi_action(2, {{1, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {2, 0, 0, -1}}, "dim5-tr",
                                      "[xi,x] = A x on a dimension 5 model with a recorded totally real section");
                        spec.planes.push_back({"totally-real", Tensor<Rational>::basis_vector(5, 0),
                                               Tensor<Rational>::basis_vector(5, 1)});
                        return spec;
                      },
                      {}, {"U1", "U2", "U1~"})},
      {"dim7-a", classified(
                     [] {
                       return xi_action(3,
                                        {{1, 0, 0, 0, 1, 0},
                                         {0, -1, 0, 0, 0, 0},
                                         {0, 0, 2, 0, 0, 1},
                                         {0, 1, 0, 1, 0, 0},
                                         {0, 0, 0, 0, 0, 1},
                                         {1, 0, 0, 0, 0, -2}},
                                        "dim7-a", "[xi,x] = A x on a dimension 7 model");
                     },
                     {}, {"U1", "U2", "U1~"})},
  };
  return items;
}

void check_entry(const ModelSpec& spec) {
  const auto s = build_structure<Rational>(spec);
  const auto report = validate_structure(s);
  if (!report.ok()) throw InvariantViolation("zoo entry " + spec.name + " fails validation");
  const auto a = analyse(s);
  for (const auto& name : spec.expected)
    if (!a.report.member(class_from_name(name)))
      throw InvariantViolation("zoo entry " + spec.name + " is not in " + name);
  for (const auto& name : spec.excluded)
    if (a.report.member(class_from_name(name)))
      throw InvariantViolation("zoo entry " + spec.name + " is unexpectedly in " + name);
}

}  // namespace

std::vector<std::string> zoo_names() {
  std::vector<std::string> out;
  for (const auto& item : catalog()) out.emplace_back(item.name);
  return out;
}

ModelSpec builtin_unchecked(std::string_view name) {
  for (const auto& item : catalog())
    if (name == item.name) return item.make();
  throw UnknownModel("unknown zoo model: " + std::string(name));
}

ModelSpec builtin(std::string_view name) {
  ModelSpec spec = builtin_unchecked(name);
  check_entry(spec);
  return spec;
}

std::vector<ModelSpec> builtin_catalog() {
  std::vector<ModelSpec> out;
  for (const auto& item : catalog()) out.push_back(builtin(item.name));
  return out;
}

ModelSpec random_structure(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw std::invalid_argument("random_structure: n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-2, 2);
  std::uniform_int_distribution<int> denom(1, 2);
  const std::size_t h = 2 * n;
  for (int attempt = 0; attempt < 64; ++attempt) {
    ModelSpec spec = adapted_spec(n, "random-" + std::to_string(seed) + "-" + std::to_string(n),
                                  "random [xi,x] = A x, seed " + std::to_string(seed));
    bool nonzero = false;
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = 0; b < h; ++b) {
        const int num = pick(rng);
        const int den = denom(rng);
        if (num == 0) continue;
        add_bracket(spec, 2 * n, a, b, Rational(num) / Rational(den));
        nonzero = true;
      }
    if (nonzero) return spec;
  }
  throw GenerationFailed("random_structure: no admissible bracket drawn for seed " + std::to_string(seed));
}

}  // namespace acbm
