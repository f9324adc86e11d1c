#pragma once

#include <acbm/analysis.hpp>
#include <acbm/model.hpp>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace acbm {

/// Outcome of one theorem check on one model. `residual` is the largest
/// deviation among the compared quantities; for an equivalence it is the
/// residual of the predicates that disagree (zero-ish when all agree).
struct CheckResult {
  std::string id;
  std::string statement;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct CheckInfo {
  std::string_view id;
  std::string_view statement;
};

/// Every check the suite runs, in report order.
const std::vector<CheckInfo>& check_catalog();

struct VerifyOptions {
  Tolerance tol{};
  std::size_t random_planes = 20;
  std::uint64_t plane_seed = 0;
};

struct ModelVerification {
  std::string model;
  std::string backend;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Throws std::out_of_range for an unknown id.
  const CheckResult& check(std::string_view id) const;
};

/// Runs the whole suite. Individual checks never throw: a failed
/// cross-check inside a check becomes a FAIL with the message as detail.
/// Model construction errors (InvalidModel, DimensionMismatch, ...) do
/// propagate. A gamma_perturbation in the spec is added to the Levi-Civita
/// connection of g before anything is derived from it.
template <class S>
ModelVerification verify_model(const ModelSpec& spec, const VerifyOptions& opts = {});

/// Named scalars of the full analysis (Lee-form values, traces, scalar
/// curvatures, sectional curvatures of the recorded and basis planes),
/// used to compare backends.
template <class S>
std::vector<std::pair<std::string, double>> reported_scalars(const ModelSpec& spec, Tolerance tol = {});

/// Planes used by the sectional-curvature check: `count` random planes and
/// `count / 4 + 1` random xi-sections, each non-degenerate for g and g~.
template <class S>
std::vector<SectionPlane<S>> random_planes(const ACBStructure<S>& s, std::size_t count, std::uint64_t seed);

}  // namespace acbm
