#pragma once

#include <acbm/structure.hpp>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acbm {

/// A 2-plane recorded with a model, given by two spanning vectors.
struct PlaneSpec {
  std::string label;
  Tensor<Rational> x;
  Tensor<Rational> y;
};

/// Exact description of a left-invariant almost contact B-metric model:
/// the data a model file holds. All scalars are rational so that the exact
/// backend can be fed from files.
struct ModelSpec {
  std::string name;
  std::string description;
  Tensor<Rational> brackets;  // (1,2): [e_i, e_j] = brackets(k, i, j) e_k
  Tensor<Rational> phi;
  Tensor<Rational> xi;
  Tensor<Rational> eta;
  Tensor<Rational> g;
  std::vector<std::string> expected;  // class names the model must belong to
  std::vector<std::string> excluded;  // class names it must not belong to
  std::vector<PlaneSpec> planes;
  /// Added to the Levi-Civita coefficients of g. Only test fixtures set it.
  std::optional<Tensor<Rational>> gamma_perturbation;

  std::size_t dim() const { return brackets.dim(); }
};

/// Builds the Lie algebra (Jacobi checked, InvalidModel) and assembles the
/// structure in the chosen backend. Structure identities are not checked
/// here; see validate_structure.
template <class S>
ACBStructure<S> build_structure(const ModelSpec& spec, Tolerance tol = {});

/// Canonical JSON text: fixed field order, rational-string scalars, two
/// space indentation and a trailing newline.
std::string to_json(const ModelSpec& spec);

/// Parses model JSON. Scalars may be "p/q", integer or decimal strings, or
/// JSON integers. Throws ParseError on malformed input.
ModelSpec from_json(std::string_view text);

ModelSpec load_model_file(const std::filesystem::path& path);
void save_model_file(const ModelSpec& spec, const std::filesystem::path& path);

}  // namespace acbm
