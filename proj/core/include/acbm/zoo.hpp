#pragma once

#include <acbm/model.hpp>
#include <cstdint>
#include <string_view>
#include <vector>

namespace acbm {

/// Model on the phi-adapted basis (e_1..e_n, phi e_1..phi e_n, xi) with
/// g = diag(+1^n, -1^n, +1), phi e_i = e_{n+i}, phi e_{n+i} = -e_i and an
/// abelian bracket. Index 2n is xi.
ModelSpec adapted_spec(std::size_t n, std::string name = {}, std::string description = {});

/// [e_i, e_j] += value e_k, keeping the bracket antisymmetric.
void add_bracket(ModelSpec& spec, std::size_t i, std::size_t j, std::size_t k, const Rational& value);

/// Names of the curated catalog, in catalog order.
std::vector<std::string> zoo_names();

/// A curated entry. Validates the structure and checks the recorded
/// expected and excluded class memberships with the exact pipeline
/// (InvariantViolation on disagreement). Throws UnknownModel.
ModelSpec builtin(std::string_view name);

/// The whole catalog, each entry checked as in builtin.
std::vector<ModelSpec> builtin_catalog();

/// Catalog data without the load-time check.
ModelSpec builtin_unchecked(std::string_view name);

/// Deterministic random model of dimension 2n+1: [xi, x] = A x with A a
/// random rational endomorphism of the contact distribution, every other
/// bracket zero, so Jacobi holds by construction. Throws GenerationFailed
/// (naming the seed) when no admissible A is drawn.
ModelSpec random_structure(std::uint64_t seed, std::size_t n);

}  // namespace acbm
