#pragma once

#include <acbm/structure.hpp>

namespace acbm {

/// x^h = x - eta(x) xi, asserted equal to -phi^2 x.
template <class S>
Tensor<S> project_h(const ACBStructure<S>& s, const Tensor<S>& x, Tolerance tol = {});

/// x^v = eta(x) xi.
template <class S>
Tensor<S> project_v(const ACBStructure<S>& s, const Tensor<S>& x);

/// D_x y = nabla_x y - eta(y) nabla_x xi + (nabla_x eta)(y) xi.
template <class S>
AffineConnection<S> svk_closed_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla);

/// D_x y = (nabla_x y^h)^h + (nabla_x y^v)^v.
template <class S>
AffineConnection<S> svk_projector_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla);

/// Schouten-van Kampen connection of `nabla` adapted to (ker eta, span xi).
/// `m` is the metric whose Levi-Civita connection is `nabla` (g for D, g~
/// for D~). Both routes are cross-checked, then m, xi, eta and the two
/// distributions are asserted parallel.
template <class S>
AffineConnection<S> svk_connection(const ACBStructure<S>& s, const AffineConnection<S>& nabla, const Metric<S>& m,
                                   Tolerance tol = {});

/// Potential Q = D - nabla and torsion T of D, as (1,2) tensors and lowered
/// by m into (0,3) tensors Q(x,y,z) = m(Q(x,y), z).
template <class S>
struct PotentialTorsion {
  Tensor<S> Q_vec;
  Tensor<S> T_vec;
  Tensor<S> Q;
  Tensor<S> T;
};

/// Q(x,y) = -eta(y) nabla_x xi + (nabla_x eta)(y) xi.
template <class S>
Tensor<S> potential_closed_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla);

/// T(x,y) = eta(x) nabla_y xi - eta(y) nabla_x xi + d eta(x,y) xi.
template <class S>
Tensor<S> torsion_closed_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla);

template <class S>
PotentialTorsion<S> potential_and_torsion(const ACBStructure<S>& s, const AffineConnection<S>& D,
                                          const AffineConnection<S>& nabla, const Metric<S>& m, Tolerance tol = {});

/// T(x,y,z) = Q(x,y,z) - Q(y,x,z).
template <class S>
Tensor<S> torsion_from_potential(const Tensor<S>& Q);

/// 2Q(x,y,z) = T(x,y,z) - T(y,z,x) + T(z,x,y). Rejects T that is not
/// antisymmetric in its first two slots (std::invalid_argument).
template <class S>
Tensor<S> potential_from_torsion(const Tensor<S>& T, Tolerance tol = {});

/// (conn_x phi) y as a (1,2) tensor at (k, x, y).
template <class S>
Tensor<S> covariant_phi(const ACBStructure<S>& s, const AffineConnection<S>& conn);

/// (D_x phi)y = (nabla_x phi)y + eta(y) phi nabla_x xi - eta(nabla_x phi y) xi.
template <class S>
Tensor<S> covariant_phi_D_closed_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla);

/// D phi lowered by m, cross-checked against the closed form in nabla.
template <class S>
Tensor<S> covariant_phi_D(const ACBStructure<S>& s, const AffineConnection<S>& D, const AffineConnection<S>& nabla,
                          const Metric<S>& m, Tolerance tol = {});

struct NaturalityResiduals {
  Residual phi, xi, eta, metric;
  bool natural(Tolerance tol) const { return phi.ok(tol) && xi.ok(tol) && eta.ok(tol) && metric.ok(tol); }
};

template <class S>
NaturalityResiduals naturality(const AffineConnection<S>& conn, const ACBStructure<S>& s, const Metric<S>& m);

/// conn phi = conn xi = conn eta = conn m = 0.
template <class S>
bool is_natural(const AffineConnection<S>& conn, const ACBStructure<S>& s, const Metric<S>& m, Tolerance tol = {});

/// phiB-connection nabla*_x y = nabla_x y + ((nabla_x phi) phi y + (nabla_x eta)(y) xi) / 2 - eta(y) nabla_x xi.
template <class S>
AffineConnection<S> phiB_connection(const ACBStructure<S>& s, const AffineConnection<S>& nabla);

/// D~_x y = D_x y + Phi(x,y) - eta(Phi(x,y)) xi - eta(y) Phi(x,xi), with Phi
/// the (1,2) potential nabla~ - nabla.
template <class S>
AffineConnection<S> dtilde_from_d(const ACBStructure<S>& s, const AffineConnection<S>& D, const Tensor<S>& phi_vec);

/// (D~_x phi)y = (D_x phi)y + Phi(x,phi y) - phi Phi(x,y) + eta(y) phi Phi(x,xi) - eta(Phi(x,phi y)) xi
/// as a (1,2) tensor, from the (1,2) forms of D phi and Phi.
template <class S>
Tensor<S> dtilde_phi_relation(const ACBStructure<S>& s, const Tensor<S>& d_phi_vec, const Tensor<S>& phi_vec);

/// Both Schouten-van Kampen connections with potentials and torsions. D~ is
/// built from nabla~ and cross-checked against the relation through Phi;
/// D~ phi likewise.
template <class S>
struct SvkPair {
  AffineConnection<S> D;
  AffineConnection<S> D_tilde;
  PotentialTorsion<S> pt;        // lowered by g
  PotentialTorsion<S> pt_tilde;  // lowered by g~
  Tensor<S> D_phi;               // (1,2)
  Tensor<S> D_tilde_phi;         // (1,2)
};

template <class S>
SvkPair<S> svk_pair(const ACBStructure<S>& s, const AffineConnection<S>& nabla, const AffineConnection<S>& nabla_tilde,
                    Tolerance tol = {});

}  // namespace acbm
