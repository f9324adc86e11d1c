#pragma once

#include <acbm/structure.hpp>
#include <array>
#include <string_view>
#include <vector>

namespace acbm {

enum class ClassId {
  F0,
  F1,
  F2,
  F3,
  F4,
  F5,
  F6,
  F7,
  F8,
  F9,
  F10,
  F11,
  U1,        // nabla xi = 0
  U2,        // F(x,y,z) = F(x,y,xi)eta(z) + F(x,z,xi)eta(y)
  U3,        // F4 + F5 + F6 + F7 + F11
  U1_tilde,  // nabla~ xi = 0
  F3_U3,     // Phi(x, phi^2 y, phi^2 z) = -Phi(x, phi y, phi z)
  F1_F2_U3,  // F(phi y, phi z, x) + F(phi^2 y, phi^2 z, x) - (y <-> z) = 0
};

inline constexpr std::size_t kClassCount = 18;

std::string_view class_name(ClassId c);
ClassId class_from_name(std::string_view name);  // throws std::invalid_argument

inline constexpr std::array<ClassId, kClassCount> all_classes() {
  std::array<ClassId, kClassCount> out{};
  for (std::size_t i = 0; i < kClassCount; ++i) out[i] = static_cast<ClassId>(i);
  return out;
}

/// Membership of one almost contact B-metric manifold in the basic classes
/// and the named sums. "Membership in Fi" means F satisfies the defining
/// identity of Fi, so F0 members belong to every class.
///
/// A report describes either (phi, xi, eta, g) or (phi, xi, eta, g~). On
/// both sides U1 and U1~ describe the pair: nabla xi = 0 and nabla~ xi = 0.
/// Every other entry is evaluated with the side's own F, metric and
/// potential. U3 is decided as U2 and F3+U3 together: U2 is F4..F9 + F11,
/// F3+U3 is F3 + F4 + F5 + F6 + F7 + F11, and their intersection is U3.
template <class S>
struct ClassificationReport {
  MetricSide side = MetricSide::g;
  std::array<bool, kClassCount> membership{};
  std::array<Residual, kClassCount> residuals{};
  LeeForms<S> lee;
  S theta_xi{0};
  S theta_star_xi{0};
  S div_eta{0};
  S div_star_eta{0};

  bool member(ClassId c) const { return membership[static_cast<std::size_t>(c)]; }
  const Residual& residual_of(ClassId c) const { return residuals[static_cast<std::size_t>(c)]; }
  /// Basic classes F1..F11 whose identity holds (all of them for F0).
  std::vector<ClassId> basic_classes() const;
};

/// Residuals of the defining identities of F0..F11 for a fundamental
/// tensor F of `ms` (F built with ms.g()).
template <class S>
std::array<Residual, 12> basic_class_residuals(const ACBStructure<S>& ms, const Tensor<S>& F, const LeeForms<S>& lee);

template <class S>
Residual u2_residual(const ACBStructure<S>& ms, const Tensor<S>& F);

/// Phi(x, phi^2 y, phi^2 z) + Phi(x, phi y, phi z) for a lowered potential.
template <class S>
Residual phi_condition_residual(const ACBStructure<S>& ms, const Tensor<S>& phi_low);

/// F(phi y, phi z, x) + F(phi^2 y, phi^2 z, x) - F(phi z, phi y, x) - F(phi^2 z, phi^2 y, x).
template <class S>
Residual f_condition_residual(const ACBStructure<S>& ms, const Tensor<S>& F);

/// Classification of the g-side (F, nabla) or the g~-side (F~, nabla~).
template <class S>
ClassificationReport<S> classify(const ACBStructure<S>& s, const FTensor<S>& F, const FTensor<S>& F_tilde,
                                 const AffineConnection<S>& nabla, const AffineConnection<S>& nabla_tilde,
                                 MetricSide side = MetricSide::g, Tolerance tol = {});

struct NablaXiRow {
  ClassId cls;
  bool holds = true;
  Residual residual;
};

/// For each basic class the report places the manifold in, checks the
/// matching closed form of nabla xi (F4: nabla xi = div*(eta) phi / 2n,
/// F5: nabla xi = -div(eta) phi^2 / 2n, F11: nabla xi = eta (x) phi omega#,
/// symmetry rules of g(nabla_x xi, y) for F6..F9, zero otherwise).
template <class S>
std::vector<NablaXiRow> nabla_xi_table_check(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                                             const AffineConnection<S>& nabla_tilde,
                                             const ClassificationReport<S>& report, Tolerance tol = {});

}  // namespace acbm
