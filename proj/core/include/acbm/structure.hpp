#pragma once

#include <acbm/lie_model.hpp>
#include <string>
#include <vector>

namespace acbm {

/// Almost contact B-metric structure (phi, xi, eta, g) on a left-invariant
/// model of dimension 2n+1, together with the associated metric
/// g~(x,y) = g(x, phi y) + eta(x) eta(y).
///
/// `assemble` only requires g and g~ to be invertible; the algebraic
/// relations are checked by validate_structure, which reports rather than
/// throws.
template <class S>
class ACBStructure {
 public:
  ACBStructure() = default;

  static ACBStructure assemble(LieAlgebraModel<S> lie, Tensor<S> phi, Tensor<S> xi, Tensor<S> eta, Tensor<S> g,
                               Tolerance tol = {});

  const LieAlgebraModel<S>& lie() const { return lie_; }
  const Tensor<S>& phi() const { return phi_; }
  const Tensor<S>& xi() const { return xi_; }
  const Tensor<S>& eta() const { return eta_; }
  const Metric<S>& g() const { return g_; }
  const Metric<S>& g_tilde() const { return g_tilde_; }
  std::size_t dim() const { return lie_.dim(); }
  std::size_t n() const { return (dim() - 1) / 2; }

  /// The same (phi, xi, eta) carrying g~ as its metric.
  ACBStructure associated(Tolerance tol = {}) const;

  Tensor<S> basis(std::size_t i) const { return Tensor<S>::basis_vector(dim(), i); }
  Tensor<S> phi_of(const Tensor<S>& v) const { return apply(phi_, v); }
  S eta_of(const Tensor<S>& v) const { return dot(eta_, v); }

 private:
  LieAlgebraModel<S> lie_;
  Tensor<S> phi_;
  Tensor<S> xi_;
  Tensor<S> eta_;
  Metric<S> g_;
  Metric<S> g_tilde_;
};

/// g~ as a bare (0,2) tensor; usable before the structure is assembled.
template <class S>
Tensor<S> associated_metric_matrix(const Tensor<S>& phi, const Tensor<S>& eta, const Tensor<S>& g);

template <class S>
const Metric<S>& associated_metric(const ACBStructure<S>& s) {
  return s.g_tilde();
}

struct ValidationItem {
  std::string identity;
  bool passed = true;
  double worst_residual = 0.0;
  std::string detail;  // offending basis indices, when failed
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool ok() const {
    for (const auto& item : items)
      if (!item.passed) return false;
    return true;
  }
  std::vector<std::string> failures() const;
};

template <class S>
ValidationReport validate_structure(const ACBStructure<S>& s, Tolerance tol = {});

/// Throws StructureInvalid listing every failed identity.
template <class S>
void require_valid(const ACBStructure<S>& s, Tolerance tol = {});

enum class MetricSide { g, g_tilde };

/// F(x,y,z) = m((nabla_x phi) y, z) for the B-metric m and its Levi-Civita
/// connection nabla.
template <class S>
struct FTensor {
  Tensor<S> F;
  MetricSide side = MetricSide::g;
};

/// Residuals of the identities every fundamental tensor satisfies:
/// symmetry in the last two slots, the phi-decomposition, and
/// F(x, phi y, xi) = (nabla_x eta) y = m(nabla_x xi, y).
template <class S>
struct FIdentityResiduals {
  Residual symmetry;
  Residual phi_decomposition;
  Residual nabla_eta;
  Residual nabla_xi;
  Residual all() const { return Residual(symmetry).merge(phi_decomposition).merge(nabla_eta).merge(nabla_xi); }
};

/// Direct evaluation of m((conn_x phi) y, z), no checks.
template <class S>
Tensor<S> fundamental_tensor(const ACBStructure<S>& s, const AffineConnection<S>& conn, const Metric<S>& m);

template <class S>
FIdentityResiduals<S> f_identity_residuals(const ACBStructure<S>& s, const Tensor<S>& F,
                                           const AffineConnection<S>& nabla, const Metric<S>& m);

/// Fundamental tensor with all identities asserted. `m` must be g or g~ of
/// `s` and `conn` its Levi-Civita connection.
template <class S>
FTensor<S> fundamental_F(const ACBStructure<S>& s, const AffineConnection<S>& conn, const Metric<S>& m,
                         Tolerance tol = {});

/// Traces run over a basis {e_1..e_2n} of ker eta, as in theta*(phi z) = -theta(phi^2 z).
template <class S>
struct LeeForms {
  Tensor<S> theta;       // m^{ij} F(e_i, e_j, .)
  Tensor<S> theta_star;  // m^{ij} F(e_i, phi e_j, .)
  Tensor<S> omega;       // F(xi, xi, .)
  Tensor<S> omega_sharp;
};

template <class S>
LeeForms<S> lee_forms(const ACBStructure<S>& s, const FTensor<S>& F, const Metric<S>& m, Tolerance tol = {});

/// Trace of nabla omega with respect to m: m^{ij} (nabla_{e_i} omega)(e_j).
template <class S>
S divergence(const Tensor<S>& omega, const AffineConnection<S>& conn, const Metric<S>& m);

template <class S>
struct Divergences {
  S div;       // trace of nabla eta by g
  S div_star;  // trace of nabla eta by g~
};

/// div(eta) and div*(eta). Both traces take the Levi-Civita derivative of
/// the structure's own metric; they differ only in the metric used for the
/// trace. When Lee forms are supplied, theta(xi) = div* and
/// theta*(xi) = div are asserted.
template <class S>
Divergences<S> divergences(const ACBStructure<S>& s, const AffineConnection<S>& nabla, const LeeForms<S>* lee = nullptr,
                           Tolerance tol = {});

/// Phi(x,y) = nabla~_x y - nabla_x y, as a (1,2) tensor and lowered with g.
template <class S>
struct PotentialPhi {
  Tensor<S> vec;
  Tensor<S> low;
};

/// Closed form 2 Phi(x,y,z) = -F(x,y,phi z) - ... in terms of F (returns Phi, lowered by g).
template <class S>
Tensor<S> phi_potential_from_F(const ACBStructure<S>& s, const Tensor<S>& F);

/// F(x,y,z) = Phi(x,y,phi z) + Phi(x,z,phi y) + ... in terms of the lowered Phi.
template <class S>
Tensor<S> F_from_phi_potential(const ACBStructure<S>& s, const Tensor<S>& phi_low);

/// 2 F~(x,y,z) = F(phi y, z, x) - F(y, phi z, x) + ... in terms of F.
template <class S>
Tensor<S> F_tilde_from_F(const ACBStructure<S>& s, const Tensor<S>& F);

/// Difference of the connections, cross-checked against both closed forms.
template <class S>
PotentialPhi<S> potential_Phi(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                              const AffineConnection<S>& nabla_tilde, const FTensor<S>& F, Tolerance tol = {});

/// F~ computed from its definition and cross-checked against the relation
/// with F.
template <class S>
FTensor<S> F_tilde(const ACBStructure<S>& s, const AffineConnection<S>& nabla_tilde, const FTensor<S>& F,
                   Tolerance tol = {});

}  // namespace acbm
