#include <acbm/svk.hpp>

#include "frame.hpp"

namespace acbm {

using detail::build12;
using detail::build3;
using detail::column;

template <class S>
Tensor<S> project_h(const ACBStructure<S>& s, const Tensor<S>& x, Tolerance tol) {
  Tensor<S> h = x - s.eta_of(x) * s.xi();
  Tensor<S> alt = S(-1) * apply(s.phi(), apply(s.phi(), x));
  if (!residual(h, alt).ok(tol)) throw InvariantViolation("x - eta(x) xi != -phi^2 x");
  return h;
}

template <class S>
Tensor<S> project_v(const ACBStructure<S>& s, const Tensor<S>& x) {
  return s.eta_of(x) * s.xi();
}

template <class S>
AffineConnection<S> svk_closed_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla) {
  const Tensor<S> nxi = covariant_derivative(nabla, s.xi());
  const Tensor<S> neta = covariant_derivative(nabla, s.eta());
  const auto& gam = nabla.coefficients();
  return AffineConnection<S>(build12<S>(
      s.dim(), [&](auto i, auto j) { return column(gam, i, j) - s.eta()(j) * column(nxi, i) + neta(i, j) * s.xi(); }));
}

template <class S>
AffineConnection<S> svk_projector_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla) {
  auto h = [&](const Tensor<S>& v) { return v - s.eta_of(v) * s.xi(); };
  auto v = [&](const Tensor<S>& w) { return s.eta_of(w) * s.xi(); };
  return AffineConnection<S>(build12<S>(s.dim(), [&](auto i, auto j) {
    const Tensor<S> x = s.basis(i);
    const Tensor<S> y = s.basis(j);
    return h(nabla(x, h(y))) + v(nabla(x, v(y)));
  }));
}

template <class S>
AffineConnection<S> svk_connection(const ACBStructure<S>& s, const AffineConnection<S>& nabla, const Metric<S>& m,
                                   Tolerance tol) {
  AffineConnection<S> D = svk_closed_form(s, nabla);
  if (!residual(D.coefficients(), svk_projector_form(s, nabla).coefficients()).ok(tol))
    throw CrossCheckMismatch("Schouten-van Kampen connection: closed form disagrees with projector form");
  if (!metric_compatibility_residual(D, m).ok(tol)) throw InvariantViolation("D does not preserve the metric");
  if (!zero_residual(covariant_derivative(D, s.xi())).ok(tol)) throw InvariantViolation("D xi != 0");
  if (!zero_residual(covariant_derivative(D, s.eta())).ok(tol)) throw InvariantViolation("D eta != 0");
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const Tensor<S> y = s.basis(j);
      const Tensor<S> yh = y - s.eta_of(y) * s.xi();
      if (!is_zero(s.eta_of(D(s.basis(i), yh)), tol))
        throw InvariantViolation("horizontal distribution is not D-parallel");
    }
  return D;
}

template <class S>
Tensor<S> potential_closed_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla) {
  const Tensor<S> nxi = covariant_derivative(nabla, s.xi());
  const Tensor<S> neta = covariant_derivative(nabla, s.eta());
  return build12<S>(s.dim(), [&](auto i, auto j) { return S(-1) * s.eta()(j) * column(nxi, i) + neta(i, j) * s.xi(); });
}

template <class S>
Tensor<S> torsion_closed_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla) {
  const Tensor<S> nxi = covariant_derivative(nabla, s.xi());
  const Tensor<S> deta = d_eta(s.lie(), s.eta());
  return build12<S>(s.dim(), [&](auto i, auto j) {
    return s.eta()(i) * column(nxi, j) - s.eta()(j) * column(nxi, i) + deta(i, j) * s.xi();
  });
}

template <class S>
PotentialTorsion<S> potential_and_torsion(const ACBStructure<S>& s, const AffineConnection<S>& D,
                                          const AffineConnection<S>& nabla, const Metric<S>& m, Tolerance tol) {
  PotentialTorsion<S> out;
  out.Q_vec = D.coefficients() - nabla.coefficients();
  if (!residual(out.Q_vec, potential_closed_form(s, nabla)).ok(tol))
    throw CrossCheckMismatch("potential D - nabla disagrees with its closed form");
  out.T_vec = torsion(s.lie(), D);
  if (!residual(out.T_vec, torsion_closed_form(s, nabla)).ok(tol))
    throw CrossCheckMismatch("torsion of D disagrees with its closed form");
  out.Q = lower_last(out.Q_vec, m);
  out.T = lower_last(out.T_vec, m);
  auto t_swapped = build3<S>(s.dim(), [&](auto x, auto y, auto z) { return out.T(y, x, z); });
  if (!residual(out.T, S(-1) * t_swapped).ok(tol)) throw InvariantViolation("torsion is not antisymmetric");
  return out;
}

template <class S>
Tensor<S> torsion_from_potential(const Tensor<S>& Q) {
  Q.require_valence(0, 3, "torsion_from_potential");
  return build3<S>(Q.dim(), [&](auto x, auto y, auto z) { return Q(x, y, z) - Q(y, x, z); });
}

template <class S>
Tensor<S> potential_from_torsion(const Tensor<S>& T, Tolerance tol) {
  T.require_valence(0, 3, "potential_from_torsion");
  auto sym = build3<S>(T.dim(), [&](auto x, auto y, auto z) { return T(x, y, z) + T(y, x, z); });
  if (!zero_residual(sym).ok(tol))
    throw std::invalid_argument("potential_from_torsion: T is not antisymmetric in its first two slots");
  const S half = S(1) / S(2);
  return build3<S>(T.dim(), [&](auto x, auto y, auto z) { return half * (T(x, y, z) - T(y, z, x) + T(z, x, y)); });
}

template <class S>
Tensor<S> covariant_phi(const ACBStructure<S>& s, const AffineConnection<S>& conn) {
  return covariant_derivative(conn, s.phi());
}

template <class S>
Tensor<S> covariant_phi_D_closed_form(const ACBStructure<S>& s, const AffineConnection<S>& nabla) {
  const Tensor<S> nphi = covariant_phi(s, nabla);
  const Tensor<S> nxi = covariant_derivative(nabla, s.xi());
  return build12<S>(s.dim(), [&](auto i, auto j) {
    const Tensor<S> x = s.basis(i);
    return column(nphi, i, j) + s.eta()(j) * apply(s.phi(), column(nxi, i)) -
           s.eta_of(nabla(x, apply(s.phi(), s.basis(j)))) * s.xi();
  });
}

template <class S>
Tensor<S> covariant_phi_D(const ACBStructure<S>& s, const AffineConnection<S>& D, const AffineConnection<S>& nabla,
                          const Metric<S>& m, Tolerance tol) {
  const Tensor<S> direct = covariant_phi(s, D);
  if (!residual(direct, covariant_phi_D_closed_form(s, nabla)).ok(tol))
    throw CrossCheckMismatch("D phi disagrees with its closed form in nabla");
  return lower_last(direct, m);
}

template <class S>
NaturalityResiduals naturality(const AffineConnection<S>& conn, const ACBStructure<S>& s, const Metric<S>& m) {
  NaturalityResiduals r;
  r.phi = zero_residual(covariant_derivative(conn, s.phi()));
  r.xi = zero_residual(covariant_derivative(conn, s.xi()));
  r.eta = zero_residual(covariant_derivative(conn, s.eta()));
  r.metric = metric_compatibility_residual(conn, m);
  return r;
}

template <class S>
bool is_natural(const AffineConnection<S>& conn, const ACBStructure<S>& s, const Metric<S>& m, Tolerance tol) {
  return naturality(conn, s, m).natural(tol);
}

template <class S>
AffineConnection<S> phiB_connection(const ACBStructure<S>& s, const AffineConnection<S>& nabla) {
  const Tensor<S> nphi = covariant_phi(s, nabla);
  const Tensor<S> nxi = covariant_derivative(nabla, s.xi());
  const Tensor<S> neta = covariant_derivative(nabla, s.eta());
  const S half = S(1) / S(2);
  return AffineConnection<S>(build12<S>(s.dim(), [&](auto i, auto j) {
    const Tensor<S> x = s.basis(i);
    const Tensor<S> y = s.basis(j);
    const Tensor<S> nphi_x = along(nphi, x);  // (1,1): y -> (nabla_x phi) y
    return nabla(x, y) + half * (apply(nphi_x, apply(s.phi(), y)) + neta(i, j) * s.xi()) - s.eta()(j) * column(nxi, i);
  }));
}

template <class S>
AffineConnection<S> dtilde_from_d(const ACBStructure<S>& s, const AffineConnection<S>& D, const Tensor<S>& phi_vec) {
  phi_vec.require_valence(1, 2, "dtilde_from_d");
  return AffineConnection<S>(build12<S>(s.dim(), [&](auto i, auto j) {
    const Tensor<S> x = s.basis(i);
    const Tensor<S> p = column(phi_vec, i, j);
    return D(x, s.basis(j)) + p - s.eta_of(p) * s.xi() - s.eta()(j) * apply(phi_vec, x, s.xi());
  }));
}

template <class S>
Tensor<S> dtilde_phi_relation(const ACBStructure<S>& s, const Tensor<S>& d_phi_vec, const Tensor<S>& phi_vec) {
  d_phi_vec.require_valence(1, 2, "dtilde_phi_relation");
  phi_vec.require_valence(1, 2, "dtilde_phi_relation");
  const auto& phi = s.phi();
  return build12<S>(s.dim(), [&](auto i, auto j) {
    const Tensor<S> x = s.basis(i);
    const Tensor<S> y = s.basis(j);
    const Tensor<S> p_x_phiy = apply(phi_vec, x, apply(phi, y));
    return column(d_phi_vec, i, j) + p_x_phiy - apply(phi, column(phi_vec, i, j)) +
           s.eta()(j) * apply(phi, apply(phi_vec, x, s.xi())) - s.eta_of(p_x_phiy) * s.xi();
  });
}

template <class S>
SvkPair<S> svk_pair(const ACBStructure<S>& s, const AffineConnection<S>& nabla, const AffineConnection<S>& nabla_tilde,
                    Tolerance tol) {
  SvkPair<S> out;
  out.D = svk_connection(s, nabla, s.g(), tol);
  out.D_tilde = svk_connection(s, nabla_tilde, s.g_tilde(), tol);
  out.pt = potential_and_torsion(s, out.D, nabla, s.g(), tol);
  out.pt_tilde = potential_and_torsion(s, out.D_tilde, nabla_tilde, s.g_tilde(), tol);

  const Tensor<S> phi_vec = nabla_tilde.coefficients() - nabla.coefficients();
  if (!residual(out.D_tilde.coefficients(), dtilde_from_d(s, out.D, phi_vec).coefficients()).ok(tol))
    throw CrossCheckMismatch("D~ from nabla~ disagrees with D~ built from D and Phi");

  covariant_phi_D(s, out.D, nabla, s.g(), tol);
  covariant_phi_D(s, out.D_tilde, nabla_tilde, s.g_tilde(), tol);
  out.D_phi = covariant_phi(s, out.D);
  out.D_tilde_phi = covariant_phi(s, out.D_tilde);
  if (!residual(out.D_tilde_phi, dtilde_phi_relation(s, out.D_phi, phi_vec)).ok(tol))
    throw CrossCheckMismatch("D~ phi disagrees with its relation to D phi");
  return out;
}

#define ACBM_INSTANTIATE(S)                                                                                          \
  template Tensor<S> project_h(const ACBStructure<S>&, const Tensor<S>&, Tolerance);                                 \
  template Tensor<S> project_v(const ACBStructure<S>&, const Tensor<S>&);                                            \
  template AffineConnection<S> svk_closed_form(const ACBStructure<S>&, const AffineConnection<S>&);                  \
  template AffineConnection<S> svk_projector_form(const ACBStructure<S>&, const AffineConnection<S>&);               \
  template AffineConnection<S> svk_connection(const ACBStructure<S>&, const AffineConnection<S>&, const Metric<S>&,  \
                                              Tolerance);                                                            \
  template Tensor<S> potential_closed_form(const ACBStructure<S>&, const AffineConnection<S>&);                      \
  template Tensor<S> torsion_closed_form(const ACBStructure<S>&, const AffineConnection<S>&);                        \
  template PotentialTorsion<S> potential_and_torsion(const ACBStructure<S>&, const AffineConnection<S>&,             \
                                                     const AffineConnection<S>&, const Metric<S>&, Tolerance);       \
  template Tensor<S> torsion_from_potential(const Tensor<S>&);                                                       \
  template Tensor<S> potential_from_torsion(const Tensor<S>&, Tolerance);                                            \
  template Tensor<S> covariant_phi(const ACBStructure<S>&, const AffineConnection<S>&);                              \
  template Tensor<S> covariant_phi_D_closed_form(const ACBStructure<S>&, const AffineConnection<S>&);                \
  template Tensor<S> covariant_phi_D(const ACBStructure<S>&, const AffineConnection<S>&, const AffineConnection<S>&, \
                                     const Metric<S>&, Tolerance);                                                   \
  template NaturalityResiduals naturality(const AffineConnection<S>&, const ACBStructure<S>&, const Metric<S>&);     \
  template bool is_natural(const AffineConnection<S>&, const ACBStructure<S>&, const Metric<S>&, Tolerance);         \
  template AffineConnection<S> phiB_connection(const ACBStructure<S>&, const AffineConnection<S>&);                  \
  template AffineConnection<S> dtilde_from_d(const ACBStructure<S>&, const AffineConnection<S>&, const Tensor<S>&);  \
  template Tensor<S> dtilde_phi_relation(const ACBStructure<S>&, const Tensor<S>&, const Tensor<S>&);                \
  template SvkPair<S> svk_pair(const ACBStructure<S>&, const AffineConnection<S>&, const AffineConnection<S>&,       \
                               Tolerance);

ACBM_INSTANTIATE(double)
ACBM_INSTANTIATE(Rational)

}  // namespace acbm
