#include <acbm/hv_geometry.hpp>

#include "frame.hpp"

namespace acbm {

using detail::build12;
using detail::build2;
using detail::build3;
using detail::column;

template <class S>
ShapeData<S> shape_operators(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                             const AffineConnection<S>& nabla_tilde, const PotentialPhi<S>& phi, Tolerance tol) {
  const std::size_t d = s.dim();
  ShapeData<S> out;
  out.S_op = S(-1) * covariant_derivative(nabla, s.xi());
  out.S_tilde = S(-1) * covariant_derivative(nabla_tilde, s.xi());
  out.S_diamond = lower_last(out.S_op, s.g());
  out.S_tilde_diamond = lower_last(out.S_tilde, s.g_tilde());
  out.trace_S = trace(out.S_op);
  out.trace_S_tilde = trace(out.S_tilde);

  for (std::size_t i = 0; i < d; ++i) {
    if (!is_zero(s.g()(column(out.S_op, i), s.xi()), tol)) throw InvariantViolation("g(S x, xi) != 0");
    if (!is_zero(s.g_tilde()(column(out.S_tilde, i), s.xi()), tol)) throw InvariantViolation("g~(S~ x, xi) != 0");
  }
  Tensor<S> phi_xi(d, 1, 1);  // x -> Phi(x, xi)
  for (std::size_t i = 0; i < d; ++i) {
    Tensor<S> v = apply(phi.vec, s.basis(i), s.xi());
    for (std::size_t k = 0; k < d; ++k) phi_xi(k, i) = v(k);
  }
  if (!residual(out.S_tilde, out.S_op - phi_xi).ok(tol)) throw CrossCheckMismatch("S~ != S - Phi(., xi)");

  const detail::Frame<S> fr(s);
  auto rhs = build2<S>(d, [&](auto x, auto y) {
    return detail::eval2(out.S_diamond, fr.e[x], fr.pe[y]) - detail::eval3(phi.low, fr.xi, fr.e[x], fr.pe[y]);
  });
  if (!residual(out.S_tilde_diamond, rhs).ok(tol))
    throw CrossCheckMismatch("S~<>(x,y) != S<>(x, phi y) - Phi(xi, x, phi y)");

  const S div = divergence(s.eta(), nabla, s.g());
  if (!scalar_residual(out.trace_S, S(-1) * div).ok(tol)) throw CrossCheckMismatch("tr S != -div(eta)");
  if (!scalar_residual(out.trace_S_tilde, out.trace_S).ok(tol)) throw CrossCheckMismatch("tr S~ != tr S");
  return out;
}

template <class S>
S pi1(const Metric<S>& m, const Tensor<S>& x, const Tensor<S>& y, const Tensor<S>& z, const Tensor<S>& w) {
  return m(y, z) * m(x, w) - m(x, z) * m(y, w);
}

template <class S>
Tensor<S> pi1_tensor(const Metric<S>& m) {
  const auto& g = m.matrix();
  return detail::build4<S>(m.dim(),
                           [&](auto x, auto y, auto z, auto w) { return g(y, z) * g(x, w) - g(x, z) * g(y, w); });
}

template <class S>
Tensor<S> wedge(const Tensor<S>& alpha, const Tensor<S>& B) {
  alpha.require_valence(0, 1, "wedge");
  B.require_valence(1, 1, "wedge");
  return build12<S>(alpha.dim(), [&](auto x, auto y) { return alpha(x) * column(B, y) - alpha(y) * column(B, x); });
}

template <class S>
Tensor<S> endo_times_form(const Tensor<S>& B, const Tensor<S>& alpha) {
  B.require_valence(1, 1, "endo_times_form");
  alpha.require_valence(0, 1, "endo_times_form");
  return build12<S>(alpha.dim(), [&](auto x, auto y) { return alpha(y) * column(B, x); });
}

template <class S>
Tensor<S> form_times_vector(const Tensor<S>& b, const Tensor<S>& v) {
  b.require_valence(0, 2, "form_times_vector");
  v.require_valence(1, 0, "form_times_vector");
  return build12<S>(v.dim(), [&](auto x, auto y) { return b(x, y) * v; });
}

namespace {

template <class S>
void require(const Residual& r, Tolerance tol, const char* what) {
  if (!r.ok(tol)) throw CrossCheckMismatch(what);
}

template <class S>
std::pair<Tensor<S>, Tensor<S>> split_hv(const ACBStructure<S>& s, const Tensor<S>& t) {
  Tensor<S> v = build12<S>(s.dim(), [&](auto x, auto y) { return s.eta_of(column(t, x, y)) * s.xi(); });
  return {t - v, v};
}

}  // namespace

template <class S>
HvComponents<S> hv_components(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                              const AffineConnection<S>& nabla_tilde, const SvkPair<S>& pair, const ShapeData<S>& shape,
                              const PotentialPhi<S>& phi, Tolerance tol) {
  const std::size_t d = s.dim();
  const auto& eta = s.eta();
  const auto& xi = s.xi();
  HvComponents<S> out;
  std::tie(out.Qh, out.Qv) = split_hv(s, pair.pt.Q_vec);
  std::tie(out.Th, out.Tv) = split_hv(s, pair.pt.T_vec);
  std::tie(out.Qh_tilde, out.Qv_tilde) = split_hv(s, pair.pt_tilde.Q_vec);
  std::tie(out.Th_tilde, out.Tv_tilde) = split_hv(s, pair.pt_tilde.T_vec);

  const Tensor<S> deta = d_eta(s.lie(), eta);
  auto check_side = [&](const AffineConnection<S>& conn, const Tensor<S>& S_op, const Tensor<S>& S_diamond,
                        const Tensor<S>& Qh, const Tensor<S>& Qv, const Tensor<S>& Th, const Tensor<S>& Tv) {
    const Tensor<S> nxi = covariant_derivative(conn, xi);
    const Tensor<S> neta = covariant_derivative(conn, eta);
    require<S>(residual(Qh, S(-1) * endo_times_form(nxi, eta)), tol, "Q^h != -(nabla xi) (x) eta");
    require<S>(residual(Qv, form_times_vector(neta, xi)), tol, "Q^v != (nabla eta) (x) xi");
    require<S>(residual(Th, wedge(eta, nxi)), tol, "T^h != eta ^ nabla xi");
    require<S>(residual(Tv, form_times_vector(deta, xi)), tol, "T^v != d eta (x) xi");
    require<S>(residual(Qh, endo_times_form(S_op, eta)), tol, "Q^h != S (x) eta");
    require<S>(residual(Qv, S(-1) * form_times_vector(S_diamond, xi)), tol, "Q^v != -S<> (x) xi");
    require<S>(residual(Th, S(-1) * wedge(eta, S_op)), tol, "T^h != -eta ^ S");
    require<S>(residual(Tv, S(-2) * form_times_vector(alternation(S_diamond), xi)), tol, "T^v != -2 Alt(S<>) (x) xi");
  };
  check_side(nabla, shape.S_op, shape.S_diamond, out.Qh, out.Qv, out.Th, out.Tv);
  check_side(nabla_tilde, shape.S_tilde, shape.S_tilde_diamond, out.Qh_tilde, out.Qv_tilde, out.Th_tilde, out.Tv_tilde);

  // Q(x,y,z) = -pi1(xi, S x, y, z), T(x,y,z) = -pi1(xi, S x, y, z) + pi1(xi, S y, x, z).
  auto check_pi1 = [&](const Metric<S>& m, const Tensor<S>& S_op, const PotentialTorsion<S>& pt) {
    auto q = build3<S>(d, [&](auto x, auto y, auto z) { return -pi1(m, xi, column(S_op, x), s.basis(y), s.basis(z)); });
    auto t = build3<S>(d, [&](auto x, auto y, auto z) {
      return -pi1(m, xi, column(S_op, x), s.basis(y), s.basis(z)) + pi1(m, xi, column(S_op, y), s.basis(x), s.basis(z));
    });
    require<S>(residual(pt.Q, q), tol, "Q(x,y,z) != -pi1(xi, S x, y, z)");
    require<S>(residual(pt.T, t), tol, "T(x,y,z) != -pi1(xi,Sx,y,z) + pi1(xi,Sy,x,z)");
  };
  check_pi1(s.g(), shape.S_op, pair.pt);
  check_pi1(s.g_tilde(), shape.S_tilde, pair.pt_tilde);

  // Relations between the two sides.
  const Tensor<S> dS = shape.S_tilde - shape.S_op;
  const Tensor<S> dS_diamond = shape.S_tilde_diamond - shape.S_diamond;
  Tensor<S> phi_xi = build12<S>(d, [&](auto x, auto y) {
    return s.eta()(y) * apply(phi.vec, s.basis(x), xi) + s.eta_of(column(phi.vec, x, y)) * xi;
  });
  require<S>(residual(pair.pt_tilde.Q_vec, pair.pt.Q_vec - phi_xi), tol,
             "Q~(x,y) != Q(x,y) - eta(y) Phi(x,xi) - eta(Phi(x,y)) xi");
  require<S>(
      residual(pair.pt_tilde.Q_vec, pair.pt.Q_vec + endo_times_form(dS, eta) - form_times_vector(dS_diamond, xi)), tol,
      "Q~ != Q + (S~ - S) (x) eta - (S~<> - S<>) (x) xi");
  // (S~ - S) ^ eta, i.e. (x,y) -> (S~-S)(x) eta(y) - (S~-S)(y) eta(x) = -(eta ^ (S~-S)).
  require<S>(residual(pair.pt_tilde.T_vec, pair.pt.T_vec - wedge(eta, dS)), tol, "T~ != T + (S~ - S) ^ eta");
  require<S>(residual(out.Qh_tilde, out.Qh + endo_times_form(dS, eta)), tol, "Q~^h != Q^h + (S~ - S) (x) eta");
  require<S>(residual(out.Qv_tilde, out.Qv - form_times_vector(dS_diamond, xi)), tol,
             "Q~^v != Q^v - (S~<> - S<>) (x) xi");
  require<S>(residual(out.Th_tilde, out.Th - wedge(eta, dS)), tol, "T~^h != T^h + (S~ - S) ^ eta");
  require<S>(residual(out.Tv_tilde, out.Tv), tol, "T~^v != T^v");
  return out;
}

template <class S>
std::vector<EquivalenceChain> equivalence_chains(const ACBStructure<S>& ms, const AffineConnection<S>& nabla,
                                                 const AffineConnection<S>& D, const PotentialTorsion<S>& pt,
                                                 const Tensor<S>& S_op, const Tensor<S>& S_diamond, Tolerance tol) {
  const std::size_t d = ms.dim();
  const Tensor<S> neta = covariant_derivative(nabla, ms.eta());
  const Tensor<S> deta = d_eta(ms.lie(), ms.eta());
  const Tensor<S> lie_g = lie_derivative_g(nabla, ms.xi(), ms.g());
  const Tensor<S> qv = split_hv(ms, pt.Q_vec).second;
  const Tensor<S> tv = split_hv(ms, pt.T_vec).second;
  const Tensor<S> qv_swapped = build12<S>(d, [&](auto x, auto y) { return column(qv, y, x); });
  // m(S x, y) and m(x, S y), evaluated separately from S<>.
  const Tensor<S> sxy = build2<S>(d, [&](auto x, auto y) { return ms.g()(column(S_op, x), ms.basis(y)); });
  const Tensor<S> xsy = build2<S>(d, [&](auto x, auto y) { return ms.g()(ms.basis(x), column(S_op, y)); });
  auto ok = [&](const Residual& r) { return r.ok(tol); };

  EquivalenceChain sym{"symmetric nabla eta", {}};
  sym.predicates = {
      {"nabla eta symmetric", ok(residual(neta, transpose(neta)))},
      {"d eta = 0", ok(zero_residual(deta))},
      {"Q^v symmetric", ok(residual(qv, qv_swapped))},
      {"T^v = 0", ok(zero_residual(tv))},
      {"S self-adjoint", ok(residual(sxy, xsy))},
      {"S<> symmetric", ok(residual(S_diamond, transpose(S_diamond)))},
  };
  EquivalenceChain skew{"skew nabla eta", {}};
  skew.predicates = {
      {"nabla eta skew", ok(residual(neta, S(-1) * transpose(neta)))},
      {"xi Killing", ok(zero_residual(lie_g))},
      {"Q^v skew", ok(residual(qv, S(-1) * qv_swapped))},
      {"S anti-self-adjoint", ok(residual(sxy, S(-1) * xsy))},
      {"S<> skew", ok(residual(S_diamond, S(-1) * transpose(S_diamond)))},
  };
  EquivalenceChain flat{"vanishing nabla eta", {}};
  flat.predicates = {
      {"nabla eta = 0", ok(zero_residual(neta))},
      {"d eta = 0 and L_xi g = 0", ok(zero_residual(deta)) && ok(zero_residual(lie_g))},
      {"nabla xi = 0", ok(zero_residual(covariant_derivative(nabla, ms.xi())))},
      {"S = 0", ok(zero_residual(S_op))},
      {"S<> = 0", ok(zero_residual(S_diamond))},
      {"D = nabla", ok(residual(D.coefficients(), nabla.coefficients()))},
  };
  return {sym, skew, flat};
}

#define ACBM_INSTANTIATE(S)                                                                                         \
  template ShapeData<S> shape_operators(const ACBStructure<S>&, const AffineConnection<S>&,                         \
                                        const AffineConnection<S>&, const PotentialPhi<S>&, Tolerance);             \
  template S pi1(const Metric<S>&, const Tensor<S>&, const Tensor<S>&, const Tensor<S>&, const Tensor<S>&);         \
  template Tensor<S> pi1_tensor(const Metric<S>&);                                                                  \
  template Tensor<S> wedge(const Tensor<S>&, const Tensor<S>&);                                                     \
  template Tensor<S> endo_times_form(const Tensor<S>&, const Tensor<S>&);                                           \
  template Tensor<S> form_times_vector(const Tensor<S>&, const Tensor<S>&);                                         \
  template HvComponents<S> hv_components(const ACBStructure<S>&, const AffineConnection<S>&,                        \
                                         const AffineConnection<S>&, const SvkPair<S>&, const ShapeData<S>&,        \
                                         const PotentialPhi<S>&, Tolerance);                                        \
  template std::vector<EquivalenceChain> equivalence_chains(const ACBStructure<S>&, const AffineConnection<S>&,     \
                                                            const AffineConnection<S>&, const PotentialTorsion<S>&, \
                                                            const Tensor<S>&, const Tensor<S>&, Tolerance);

ACBM_INSTANTIATE(double)
ACBM_INSTANTIATE(Rational)

}  // namespace acbm
