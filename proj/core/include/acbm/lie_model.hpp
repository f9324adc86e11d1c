#pragma once

#include <acbm/metric.hpp>
#include <optional>

namespace acbm {

/// Lie algebra of left-invariant vector fields on a Lie group, given by its
/// structure constants [e_i, e_j] = c^k_{ij} e_k. Every tensor field in this
/// library is left-invariant, so its components in the basis {e_i} are
/// constants and covariant derivatives reduce to finite algebra.
template <class S>
class LieAlgebraModel {
 public:
  LieAlgebraModel() = default;

  /// Validates antisymmetry and the Jacobi identity; throws InvalidModel.
  explicit LieAlgebraModel(Tensor<S> structure_constants, Tolerance tol = {});

  std::size_t dim() const { return c_.dim(); }
  const Tensor<S>& structure_constants() const { return c_; }

  Tensor<S> bracket(const Tensor<S>& x, const Tensor<S>& y) const { return apply(c_, x, y); }
  Tensor<S> basis(std::size_t i) const { return Tensor<S>::basis_vector(dim(), i); }

  /// Largest violation of the Jacobi identity over basis triples.
  static Residual jacobi_residual(const Tensor<S>& c);

 private:
  Tensor<S> c_;
};

/// Affine connection with constant coefficients: nabla_{e_i} e_j = gamma^k_{ij} e_k,
/// stored as gamma(k, i, j).
template <class S>
class AffineConnection {
 public:
  AffineConnection() = default;
  explicit AffineConnection(Tensor<S> gamma) : gamma_(std::move(gamma)) {
    gamma_.require_valence(1, 2, "AffineConnection");
  }

  std::size_t dim() const { return gamma_.dim(); }
  const Tensor<S>& coefficients() const { return gamma_; }

  /// nabla_x y for left-invariant x, y.
  Tensor<S> operator()(const Tensor<S>& x, const Tensor<S>& y) const { return apply(gamma_, x, y); }

 private:
  Tensor<S> gamma_;
};

template <class S>
Tensor<S> bracket(const Tensor<S>& x, const Tensor<S>& y, const LieAlgebraModel<S>& lie) {
  return lie.bracket(x, y);
}

/// Levi-Civita connection of a left-invariant metric from the Koszul formula
///   2 m(nabla_x y, z) = m([x,y],z) - m([y,z],x) + m([z,x],y).
/// The result is checked for zero torsion and m-compatibility.
template <class S>
AffineConnection<S> levi_civita(const LieAlgebraModel<S>& lie, const Metric<S>& m, Tolerance tol = {});

/// Torsion T(x,y) = nabla_x y - nabla_y x - [x,y] as a (1,2) tensor.
template <class S>
Tensor<S> torsion(const LieAlgebraModel<S>& lie, const AffineConnection<S>& conn);

/// R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z, stored as
/// a (1,3) tensor R(l, i, j, k).
template <class S>
Tensor<S> curvature(const LieAlgebraModel<S>& lie, const AffineConnection<S>& conn);

/// nabla t for a left-invariant tensor t of valence (r,s). The derivative
/// slot becomes the first covariant slot of the (r, s+1) result:
///   (nabla t)(a..., i, b...) = (nabla_{e_i} t)(a..., b...).
template <class S>
Tensor<S> covariant_derivative(const AffineConnection<S>& conn, const Tensor<S>& t);

/// Contracts the derivative slot of a covariant derivative with x: nabla_x t.
template <class S>
Tensor<S> along(const Tensor<S>& derivative, const Tensor<S>& x);

/// d eta (x,y) = -eta([x,y]) for left-invariant eta. When a torsion-free
/// connection is supplied the value is cross-checked against
/// (nabla_x eta)y - (nabla_y eta)x.
template <class S>
Tensor<S> d_eta(const LieAlgebraModel<S>& lie, const Tensor<S>& eta, const AffineConnection<S>* torsion_free = nullptr,
                Tolerance tol = {});

/// (L_xi m)(x,y) = m(nabla_x xi, y) + m(nabla_y xi, x), nabla the Levi-Civita
/// connection of m.
template <class S>
Tensor<S> lie_derivative_g(const AffineConnection<S>& nabla, const Tensor<S>& xi, const Metric<S>& m);

/// Component residual of nabla m (zero iff the connection is m-compatible).
template <class S>
Residual metric_compatibility_residual(const AffineConnection<S>& conn, const Metric<S>& m);

}  // namespace acbm
