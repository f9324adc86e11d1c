#include <acbm/structure.hpp>
#include <sstream>

#include "frame.hpp"

namespace acbm {

using detail::build3;
using detail::eval3;
using detail::Frame;

template <class S>
Tensor<S> associated_metric_matrix(const Tensor<S>& phi, const Tensor<S>& eta, const Tensor<S>& g) {
  phi.require_valence(1, 1, "phi");
  eta.require_valence(0, 1, "eta");
  g.require_valence(0, 2, "g");
  const std::size_t d = g.dim();
  Tensor<S> gt(d, 0, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      S sum = eta(i) * eta(j);
      for (std::size_t k = 0; k < d; ++k) sum += g(i, k) * phi(k, j);
      gt(i, j) = sum;
    }
  return gt;
}

template <class S>
ACBStructure<S> ACBStructure<S>::assemble(LieAlgebraModel<S> lie, Tensor<S> phi, Tensor<S> xi, Tensor<S> eta,
                                          Tensor<S> g, Tolerance tol) {
  const std::size_t d = lie.dim();
  phi.require_valence(1, 1, "phi");
  xi.require_valence(1, 0, "xi");
  eta.require_valence(0, 1, "eta");
  g.require_valence(0, 2, "g");
  if (phi.dim() != d || xi.dim() != d || eta.dim() != d || g.dim() != d)
    throw DimensionMismatch("structure tensors do not match the algebra dimension " + std::to_string(d));
  if (d < 3 || d % 2 == 0) throw DimensionMismatch("dimension must be 2n+1 with n >= 1, got " + std::to_string(d));
  ACBStructure s;
  s.g_ = Metric<S>::from_matrix(g, tol);
  s.g_tilde_ = Metric<S>::from_matrix(associated_metric_matrix(phi, eta, g), tol);
  s.lie_ = std::move(lie);
  s.phi_ = std::move(phi);
  s.xi_ = std::move(xi);
  s.eta_ = std::move(eta);
  return s;
}

template <class S>
ACBStructure<S> ACBStructure<S>::associated(Tolerance tol) const {
  return assemble(lie_, phi_, xi_, eta_, g_tilde_.matrix(), tol);
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& item : items)
    if (!item.passed) out.push_back(item.identity + (item.detail.empty() ? "" : " at " + item.detail));
  return out;
}

namespace {

template <class S>
ValidationItem compare(std::string identity, const Tensor<S>& lhs, const Tensor<S>& rhs, Tolerance tol) {
  ValidationItem item;
  item.identity = std::move(identity);
  Residual r = residual(lhs, rhs);
  item.passed = r.ok(tol);
  item.worst_residual = r.max_abs;
  if (!item.passed) item.detail = detail::first_offender(lhs, rhs, tol);
  return item;
}

ValidationItem signature_item(std::string identity, Signature got, Signature want) {
  ValidationItem item;
  item.identity = std::move(identity);
  item.passed = got == want;
  if (!item.passed) {
    std::ostringstream os;
    os << "got (" << got.positive << "," << got.negative << "), expected (" << want.positive << "," << want.negative
       << ")";
    item.detail = os.str();
  }
  return item;
}

}  // namespace

template <class S>
ValidationReport validate_structure(const ACBStructure<S>& s, Tolerance tol) {
  const std::size_t d = s.dim();
  const int n = static_cast<int>(s.n());
  const auto& phi = s.phi();
  const auto& xi = s.xi();
  const auto& eta = s.eta();
  const auto& g = s.g().matrix();
  ValidationReport rep;

  rep.items.push_back(compare("phi xi = 0", apply(phi, xi), Tensor<S>::vector(d), tol));
  rep.items.push_back(compare("phi^2 = -Id + eta (x) xi", compose(phi, phi),
                              S(-1) * Tensor<S>::identity(d) + tensor_product(xi, eta), tol));
  Tensor<S> eta_phi = Tensor<S>::covector(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) eta_phi(j) += eta(k) * phi(k, j);
  rep.items.push_back(compare("eta o phi = 0", eta_phi, Tensor<S>::covector(d), tol));
  rep.items.push_back(compare("eta(xi) = 1", Tensor<S>::scalar(d, dot(eta, xi)), Tensor<S>::scalar(d, S(1)), tol));

  // g(phi e_i, phi e_j) against -g + eta (x) eta
  Tensor<S> gpp(d, 0, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      S sum(0);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) sum += phi(a, i) * g(a, b) * phi(b, j);
      gpp(i, j) = sum;
    }
  rep.items.push_back(
      compare("g(phi x, phi y) = -g(x,y) + eta(x) eta(y)", gpp, S(-1) * g + tensor_product(eta, eta), tol));

  const Signature want{n + 1, n};
  rep.items.push_back(signature_item("signature of g is (n+1,n)", s.g().signature(), want));
  rep.items.push_back(signature_item("signature of g~ is (n+1,n)", s.g_tilde().signature(), want));
  rep.items.push_back(compare("g(xi,xi) = 1", Tensor<S>::scalar(d, s.g()(xi, xi)), Tensor<S>::scalar(d, S(1)), tol));
  rep.items.push_back(
      compare("g~(xi,xi) = 1", Tensor<S>::scalar(d, s.g_tilde()(xi, xi)), Tensor<S>::scalar(d, S(1)), tol));
  return rep;
}

template <class S>
void require_valid(const ACBStructure<S>& s, Tolerance tol) {
  auto rep = validate_structure(s, tol);
  if (rep.ok()) return;
  std::string msg = "invalid almost contact B-metric structure:";
  for (const auto& f : rep.failures()) msg += "\n  " + f;
  throw StructureInvalid(msg);
}

// ---------------------------------------------------------------------------
// Fundamental tensor

template <class S>
Tensor<S> fundamental_tensor(const ACBStructure<S>& s, const AffineConnection<S>& conn, const Metric<S>& m) {
  // covariant_derivative gives (nabla_i phi)^k_j at (k, i, j); lowering k yields F(i, j, z).
  return lower_last(covariant_derivative(conn, s.phi()), m);
}

template <class S>
FIdentityResiduals<S> f_identity_residuals(const ACBStructure<S>& s, const Tensor<S>& F,
                                           const AffineConnection<S>& nabla, const Metric<S>& m) {
  const std::size_t d = s.dim();
  const Frame<S> fr(s);
  FIdentityResiduals<S> out;
  auto swapped = build3<S>(d, [&](auto x, auto y, auto z) { return F(x, z, y); });
  out.symmetry = residual(F, swapped);
  auto decomposed = build3<S>(d, [&](auto x, auto y, auto z) {
    return eval3(F, fr.e[x], fr.pe[y], fr.pe[z]) + fr.eta[y] * eval3(F, fr.e[x], fr.xi, fr.e[z]) +
           fr.eta[z] * eval3(F, fr.e[x], fr.e[y], fr.xi);
  });
  out.phi_decomposition = residual(F, decomposed);

  Tensor<S> nabla_eta = covariant_derivative(nabla, s.eta());  // (i, j) = (nabla_i eta) e_j
  Tensor<S> f_phi_xi(d, 0, 2);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) f_phi_xi(x, y) = eval3(F, fr.e[x], fr.pe[y], fr.xi);
  out.nabla_eta = residual(f_phi_xi, nabla_eta);
  out.nabla_xi = residual(nabla_eta, lower_last(covariant_derivative(nabla, s.xi()), m));
  return out;
}

namespace {

template <class S>
MetricSide side_of(const ACBStructure<S>& s, const Metric<S>& m) {
  if (m.matrix() == s.g().matrix()) return MetricSide::g;
  if (m.matrix() == s.g_tilde().matrix()) return MetricSide::g_tilde;
  throw std::invalid_argument("fundamental_F: metric is neither g nor g~ of the structure");
}

}  // namespace

template <class S>
FTensor<S> fundamental_F(const ACBStructure<S>& s, const AffineConnection<S>& conn, const Metric<S>& m, Tolerance tol) {
  FTensor<S> out;
  out.side = side_of(s, m);
  if (!zero_residual(torsion(s.lie(), conn)).ok(tol) || !metric_compatibility_residual(conn, m).ok(tol))
    throw InvariantViolation("fundamental_F: connection is not the Levi-Civita connection of the metric");
  out.F = fundamental_tensor(s, conn, m);
  auto res = f_identity_residuals(s, out.F, conn, m);
  if (!res.symmetry.ok(tol)) throw InvariantViolation("F(x,y,z) != F(x,z,y)");
  if (!res.phi_decomposition.ok(tol))
    throw InvariantViolation("F(x,y,z) != F(x,phi y,phi z) + eta(y)F(x,xi,z) + eta(z)F(x,y,xi)");
  if (!res.nabla_eta.ok(tol)) throw InvariantViolation("F(x,phi y,xi) != (nabla_x eta)y");
  if (!res.nabla_xi.ok(tol)) throw InvariantViolation("(nabla_x eta)y != g(nabla_x xi, y)");
  return out;
}

template <class S>
LeeForms<S> lee_forms(const ACBStructure<S>& s, const FTensor<S>& F, const Metric<S>& m, Tolerance tol) {
  const std::size_t d = s.dim();
  const auto& f = F.F;
  const auto& inv = m.inverse();
  const auto& phi = s.phi();
  LeeForms<S> lee{Tensor<S>::covector(d), Tensor<S>::covector(d), Tensor<S>::covector(d), {}};
  for (std::size_t z = 0; z < d; ++z) {
    S th(0), ths(0), om(0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (inv(i, j) == S(0)) continue;
        th += inv(i, j) * f(i, j, z);
        for (std::size_t k = 0; k < d; ++k) ths += inv(i, j) * phi(k, j) * f(i, k, z);
      }
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) om += s.xi()(a) * s.xi()(b) * f(a, b, z);
    // The full trace adds the xi-xi term F(xi, xi, z) to theta and nothing to theta*.
    lee.theta(z) = th - om;
    lee.theta_star(z) = ths;
    lee.omega(z) = om;
  }
  lee.omega_sharp = m.sharp(lee.omega);

  if (!is_zero(dot(lee.omega, s.xi()), tol)) throw InvariantViolation("omega(xi) != 0");
  const Tensor<S> phi2 = compose(phi, phi);
  for (std::size_t z = 0; z < d; ++z) {
    Tensor<S> ez = s.basis(z);
    S lhs = dot(lee.theta_star, apply(phi, ez)) + dot(lee.theta, apply(phi2, ez));
    if (!scalar_residual(lhs, S(0)).ok(tol)) throw InvariantViolation("theta* o phi != -theta o phi^2");
  }
  return lee;
}

template <class S>
S divergence(const Tensor<S>& omega, const AffineConnection<S>& conn, const Metric<S>& m) {
  omega.require_valence(0, 1, "divergence");
  return trace_with_metric(covariant_derivative(conn, omega), m);
}

template <class S>
Divergences<S> divergences(const ACBStructure<S>& s, const AffineConnection<S>& nabla, const LeeForms<S>* lee,
                           Tolerance tol) {
  Divergences<S> out{divergence(s.eta(), nabla, s.g()), divergence(s.eta(), nabla, s.g_tilde())};
  if (lee) {
    if (!scalar_residual(dot(lee->theta, s.xi()), out.div_star).ok(tol))
      throw CrossCheckMismatch("theta(xi) != div*(eta)");
    if (!scalar_residual(dot(lee->theta_star, s.xi()), out.div).ok(tol))
      throw CrossCheckMismatch("theta*(xi) != div(eta)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phi and F~

template <class S>
Tensor<S> phi_potential_from_F(const ACBStructure<S>& s, const Tensor<S>& F) {
  const Frame<S> fr(s);
  const auto& e = fr.e;
  const auto& pe = fr.pe;
  const auto& xi = fr.xi;
  auto f = [&](const auto& a, const auto& b, const auto& c) { return eval3(F, a, b, c); };
  auto omega_phi = [&](std::size_t a) { return f(xi, xi, pe[a]); };
  const S half = S(1) / S(2);
  return build3<S>(s.dim(), [&](auto x, auto y, auto z) {
    S v = -f(e[x], e[y], pe[z]) - f(e[y], e[x], pe[z]) + f(pe[z], e[x], e[y]);
    v += fr.eta[x] * (f(e[y], e[z], xi) + f(pe[z], pe[y], xi));
    v += fr.eta[y] * (f(e[x], e[z], xi) + f(pe[z], pe[x], xi));
    v += fr.eta[z] * (-f(xi, e[x], e[y]) + f(e[x], e[y], xi) + f(e[x], pe[y], xi) - omega_phi(x) * fr.eta[y] +
                      f(e[y], e[x], xi) + f(e[y], pe[x], xi) - omega_phi(y) * fr.eta[x]);
    return half * v;
  });
}

template <class S>
Tensor<S> F_from_phi_potential(const ACBStructure<S>& s, const Tensor<S>& phi_low) {
  const Frame<S> fr(s);
  const auto& e = fr.e;
  const auto& pe = fr.pe;
  const auto& xi = fr.xi;
  auto p = [&](const auto& a, const auto& b, const auto& c) { return eval3(phi_low, a, b, c); };
  const S half = S(1) / S(2);
  return build3<S>(s.dim(), [&](auto x, auto y, auto z) {
    S v = p(e[x], e[y], pe[z]) + p(e[x], e[z], pe[y]);
    v += half * fr.eta[z] * (p(e[x], e[y], xi) - p(e[x], pe[y], xi) + p(xi, e[x], e[y]) - p(xi, e[x], pe[y]));
    v += half * fr.eta[y] * (p(e[x], e[z], xi) - p(e[x], pe[z], xi) + p(xi, e[x], e[z]) - p(xi, e[x], pe[z]));
    return v;
  });
}

template <class S>
Tensor<S> F_tilde_from_F(const ACBStructure<S>& s, const Tensor<S>& F) {
  const Frame<S> fr(s);
  const auto& e = fr.e;
  const auto& pe = fr.pe;
  const auto& xi = fr.xi;
  auto f = [&](const auto& a, const auto& b, const auto& c) { return eval3(F, a, b, c); };
  const S half = S(1) / S(2);
  return build3<S>(s.dim(), [&](auto x, auto y, auto z) {
    S v = f(pe[y], e[z], e[x]) - f(e[y], pe[z], e[x]) + f(pe[z], e[y], e[x]) - f(e[z], pe[y], e[x]);
    v += fr.eta[x] * (f(e[y], e[z], xi) + f(pe[z], pe[y], xi) + f(e[z], e[y], xi) + f(pe[y], pe[z], xi));
    v += fr.eta[y] * (f(e[x], e[z], xi) + f(pe[z], pe[x], xi) + f(e[x], pe[z], xi));
    v += fr.eta[z] * (f(e[x], e[y], xi) + f(pe[y], pe[x], xi) + f(e[x], pe[y], xi));
    return half * v;
  });
}

template <class S>
PotentialPhi<S> potential_Phi(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                              const AffineConnection<S>& nabla_tilde, const FTensor<S>& F, Tolerance tol) {
  if (F.side != MetricSide::g) throw std::invalid_argument("potential_Phi: F must be built from g");
  PotentialPhi<S> out;
  out.vec = nabla_tilde.coefficients() - nabla.coefficients();
  out.low = lower_last(out.vec, s.g());
  const std::size_t d = s.dim();
  auto swapped = build3<S>(d, [&](auto x, auto y, auto z) { return out.low(y, x, z); });
  if (!residual(out.low, swapped).ok(tol)) throw InvariantViolation("Phi(x,y) != Phi(y,x)");
  if (!residual(out.low, phi_potential_from_F(s, F.F)).ok(tol))
    throw CrossCheckMismatch("Phi disagrees with its closed form in terms of F");
  if (!residual(F.F, F_from_phi_potential(s, out.low)).ok(tol))
    throw CrossCheckMismatch("F reconstructed from Phi disagrees with F");
  return out;
}

template <class S>
FTensor<S> F_tilde(const ACBStructure<S>& s, const AffineConnection<S>& nabla_tilde, const FTensor<S>& F,
                   Tolerance tol) {
  if (F.side != MetricSide::g) throw std::invalid_argument("F_tilde: F must be built from g");
  FTensor<S> out = fundamental_F(s, nabla_tilde, s.g_tilde(), tol);
  if (!residual(out.F, F_tilde_from_F(s, F.F)).ok(tol))
    throw CrossCheckMismatch("F~ from its definition disagrees with F~ computed from F");
  return out;
}

#define ACBM_INSTANTIATE(S)                                                                                           \
  template class ACBStructure<S>;                                                                                     \
  template Tensor<S> associated_metric_matrix(const Tensor<S>&, const Tensor<S>&, const Tensor<S>&);                  \
  template ValidationReport validate_structure(const ACBStructure<S>&, Tolerance);                                    \
  template void require_valid(const ACBStructure<S>&, Tolerance);                                                     \
  template Tensor<S> fundamental_tensor(const ACBStructure<S>&, const AffineConnection<S>&, const Metric<S>&);        \
  template FIdentityResiduals<S> f_identity_residuals(const ACBStructure<S>&, const Tensor<S>&,                       \
                                                      const AffineConnection<S>&, const Metric<S>&);                  \
  template FTensor<S> fundamental_F(const ACBStructure<S>&, const AffineConnection<S>&, const Metric<S>&, Tolerance); \
  template LeeForms<S> lee_forms(const ACBStructure<S>&, const FTensor<S>&, const Metric<S>&, Tolerance);             \
  template S divergence(const Tensor<S>&, const AffineConnection<S>&, const Metric<S>&);                              \
  template Divergences<S> divergences(const ACBStructure<S>&, const AffineConnection<S>&, const LeeForms<S>*,         \
                                      Tolerance);                                                                     \
  template Tensor<S> phi_potential_from_F(const ACBStructure<S>&, const Tensor<S>&);                                  \
  template Tensor<S> F_from_phi_potential(const ACBStructure<S>&, const Tensor<S>&);                                  \
  template Tensor<S> F_tilde_from_F(const ACBStructure<S>&, const Tensor<S>&);                                        \
  template PotentialPhi<S> potential_Phi(const ACBStructure<S>&, const AffineConnection<S>&,                          \
                                         const AffineConnection<S>&, const FTensor<S>&, Tolerance);                   \
  template FTensor<S> F_tilde(const ACBStructure<S>&, const AffineConnection<S>&, const FTensor<S>&, Tolerance);

ACBM_INSTANTIATE(double)
ACBM_INSTANTIATE(Rational)

}  // namespace acbm
