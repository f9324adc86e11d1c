#pragma once

#include <acbm/hv_geometry.hpp>
#include <optional>
#include <string>

namespace acbm {

/// (0,4) curvature R(x,y,z,w) = m(R(x,y)z, w) of an affine connection.
template <class S>
Tensor<S> curvature_04(const LieAlgebraModel<S>& lie, const AffineConnection<S>& conn, const Metric<S>& m);

/// R^D(x,y,z,w) = R(x,y,phi^2 z,phi^2 w) + pi1(S x, S y, z, w) with R, S and
/// pi1 taken on the side of `m`.
template <class S>
Tensor<S> curvature_D_formula(const ACBStructure<S>& s, const Tensor<S>& R, const Tensor<S>& S_op, const Metric<S>& m);

/// rho(y,z) = m^{ij} R(e_i, y, z, e_j).
template <class S>
Tensor<S> ricci(const Tensor<S>& R, const Metric<S>& m);

/// tau = m^{ij} rho(e_i, e_j).
template <class S>
S scalar_curvature(const Tensor<S>& rho, const Metric<S>& m);

/// rho^D(y,z) = rho(y,z) - eta(z) rho(y,xi) - R(xi,y,z,xi) - m(S S y, z) + tr(S) m(S y, z).
template <class S>
Tensor<S> ricci_D_formula(const ACBStructure<S>& s, const Tensor<S>& R, const Tensor<S>& rho, const Tensor<S>& S_op,
                          const Metric<S>& m);

/// tau^D = tau - 2 rho(xi,xi) - tr(S^2) + tr(S)^2.
template <class S>
S scalar_D_formula(const ACBStructure<S>& s, S tau, const Tensor<S>& rho, const Tensor<S>& S_op);

/// rho(xi,xi) = tr(nabla_xi S) - div(S xi) - tr(S^2).
template <class S>
S ricci_xi_xi_formula(const ACBStructure<S>& s, const AffineConnection<S>& nabla, const Tensor<S>& S_op);

/// -(nabla_x S) y + (nabla_y S) x as a (1,2) tensor, to compare with R(x,y) xi.
template <class S>
Tensor<S> curvature_xi_formula(const AffineConnection<S>& nabla, const Tensor<S>& S_op);

/// Residuals of every direct-versus-formula comparison of the curvature
/// quantities, one field per relation.
struct CurvatureResiduals {
  Residual R_D, R_Dt;
  Residual rho_D, rho_Dt;
  Residual tau_D, tau_Dt;
  Residual rho_xi_xi, rho_xi_xi_tilde;
  Residual R_xi, R_xi_tilde;
  Residual all() const {
    return Residual(R_D)
        .merge(R_Dt)
        .merge(rho_D)
        .merge(rho_Dt)
        .merge(tau_D)
        .merge(tau_Dt)
        .merge(rho_xi_xi)
        .merge(rho_xi_xi_tilde)
        .merge(R_xi)
        .merge(R_xi_tilde);
  }
};

/// Curvature of nabla, nabla~, D and D~. R and R^D are lowered by g,
/// R~ and R^{D~} by g~; Ricci and scalar curvatures contract with the same
/// metric that lowered the tensor.
template <class S>
struct CurvatureBundle {
  Tensor<S> R, R_tilde, R_D, R_Dt;
  Tensor<S> rho, rho_tilde, rho_D, rho_Dt;
  S tau{0}, tau_tilde{0}, tau_D{0}, tau_Dt{0};
  S rho_xi_xi{0}, rho_tilde_xi_xi{0};
  CurvatureResiduals residuals;
};

/// Builds the bundle and compares every quantity with its closed form.
/// With `check` set, a failing comparison throws CrossCheckMismatch.
template <class S>
CurvatureBundle<S> curvature_bundle(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                                    const AffineConnection<S>& nabla_tilde, const SvkPair<S>& pair,
                                    const ShapeData<S>& shape, Tolerance tol = {}, bool check = true);

/// Symmetries of a (0,4) curvature tensor.
struct CurvatureSymmetries {
  Residual first_pair;   // R(x,y,z,w) + R(y,x,z,w)
  Residual second_pair;  // R(x,y,z,w) + R(x,y,w,z)
  Residual pair_swap;    // R(x,y,z,w) - R(z,w,x,y)
  Residual bianchi;      // cyclic sum over (x,y,z)
};

template <class S>
CurvatureSymmetries curvature_symmetries(const Tensor<S>& R);

// ---------------------------------------------------------------------------
// Sections

template <class S>
struct SectionPlane {
  Tensor<S> x;
  Tensor<S> y;
};

enum class SectionKind { xi_section, phi_holomorphic, totally_real, generic };

std::string section_kind_name(SectionKind kind);

struct SectionType {
  SectionKind kind = SectionKind::generic;
  bool orthogonal_to_xi = false;
};

/// Classifies a plane for metric m. Precedence: xi-section, then
/// phi-holomorphic, then phi-totally-real (m(u, phi v) = 0 on the plane),
/// then generic. Throws DegeneratePlane when pi1(x,y,y,x) = 0 for m.
template <class S>
SectionType section_type(const SectionPlane<S>& plane, const ACBStructure<S>& s, const Metric<S>& m,
                         Tolerance tol = {});

/// pi1(x,y,y,x) = m(x,x) m(y,y) - m(x,y)^2.
template <class S>
S plane_norm(const SectionPlane<S>& plane, const Metric<S>& m);

/// k = R(x,y,y,x) / pi1(x,y,y,x). The value is recomputed in a second basis
/// of the plane and both must agree. Throws DegeneratePlane.
template <class S>
S sectional_curvature(const SectionPlane<S>& plane, const Tensor<S>& R, const Metric<S>& m, Tolerance tol = {});

/// Sectional curvatures of one plane on one side, with the general relation
/// between k^D and k and, where the section type admits one, the
/// specialised relation.
template <class S>
struct SectionalReport {
  SectionType type;
  S k{0};
  S k_D{0};
  Residual general;
  std::optional<Residual> special;
};

/// `ms` carries the metric of the side (g or g~); R, R_D are that side's
/// (0,4) tensors and S_op its shape operator.
template <class S>
SectionalReport<S> kD_relation(const SectionPlane<S>& plane, const ACBStructure<S>& ms, const Tensor<S>& R,
                               const Tensor<S>& R_D, const Tensor<S>& S_op, Tolerance tol = {});

}  // namespace acbm
