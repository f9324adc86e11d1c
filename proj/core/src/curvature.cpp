#include <acbm/curvature.hpp>
#include <random>

#include "frame.hpp"

namespace acbm {

using detail::build2;
using detail::build4;
using detail::column;

template <class S>
Tensor<S> curvature_04(const LieAlgebraModel<S>& lie, const AffineConnection<S>& conn, const Metric<S>& m) {
  return lower_last(curvature(lie, conn), m);
}

template <class S>
Tensor<S> curvature_D_formula(const ACBStructure<S>& s, const Tensor<S>& R, const Tensor<S>& S_op, const Metric<S>& m) {
  const std::size_t d = s.dim();
  const detail::Frame<S> fr(s);
  const Tensor<S> SmS = lower_last(S_op, m);  // m(S e_i, e_j)
  return build4<S>(d, [&](auto x, auto y, auto z, auto w) {
    S r = detail::eval4(R, fr.e[x], fr.e[y], fr.ppe[z], fr.ppe[w]);
    return r + SmS(y, z) * SmS(x, w) - SmS(x, z) * SmS(y, w);
  });
}

template <class S>
Tensor<S> ricci(const Tensor<S>& R, const Metric<S>& m) {
  R.require_valence(0, 4, "ricci");
  const std::size_t d = R.dim();
  const auto& inv = m.inverse();
  return build2<S>(d, [&](auto y, auto z) {
    S sum(0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (inv(i, j) != S(0)) sum += inv(i, j) * R(i, y, z, j);
    return sum;
  });
}

template <class S>
S scalar_curvature(const Tensor<S>& rho, const Metric<S>& m) {
  return trace_with_metric(rho, m);
}

template <class S>
Tensor<S> ricci_D_formula(const ACBStructure<S>& s, const Tensor<S>& R, const Tensor<S>& rho, const Tensor<S>& S_op,
                          const Metric<S>& m) {
  const std::size_t d = s.dim();
  const auto& xi = s.xi();
  const auto& eta = s.eta();
  const Tensor<S> SmS = lower_last(S_op, m);
  const Tensor<S> SSm = lower_last(compose(S_op, S_op), m);
  const S trS = trace(S_op);
  return build2<S>(d, [&](auto y, auto z) {
    const Tensor<S> ey = s.basis(y);
    const Tensor<S> ez = s.basis(z);
    return rho(y, z) - eta(z) * evaluate(rho, ey, xi) - evaluate(R, xi, ey, ez, xi) - SSm(y, z) + trS * SmS(y, z);
  });
}

template <class S>
S scalar_D_formula(const ACBStructure<S>& s, S tau, const Tensor<S>& rho, const Tensor<S>& S_op) {
  const S trS = trace(S_op);
  return tau - S(2) * evaluate(rho, s.xi(), s.xi()) - trace(compose(S_op, S_op)) + trS * trS;
}

template <class S>
S ricci_xi_xi_formula(const ACBStructure<S>& s, const AffineConnection<S>& nabla, const Tensor<S>& S_op) {
  const Tensor<S> nS = covariant_derivative(nabla, S_op);
  const Tensor<S> S_xi = apply(S_op, s.xi());
  return trace(along(nS, s.xi())) - trace(covariant_derivative(nabla, S_xi)) - trace(compose(S_op, S_op));
}

template <class S>
Tensor<S> curvature_xi_formula(const AffineConnection<S>& nabla, const Tensor<S>& S_op) {
  const Tensor<S> nS = covariant_derivative(nabla, S_op);  // (a, i, b) = ((nabla_i S) e_b)^a
  const std::size_t d = S_op.dim();
  Tensor<S> out(d, 1, 2);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out(a, i, j) = nS(a, j, i) - nS(a, i, j);
  return out;
}

namespace {

/// R(x,y) xi as a (1,2) tensor from the (1,3) curvature.
template <class S>
Tensor<S> curvature_on_xi(const Tensor<S>& R13, const Tensor<S>& xi) {
  const std::size_t d = xi.dim();
  Tensor<S> out(d, 1, 2);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          if (xi(k) != S(0)) out(l, i, j) += R13(l, i, j, k) * xi(k);
  return out;
}

}  // namespace

template <class S>
CurvatureBundle<S> curvature_bundle(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                                    const AffineConnection<S>& nabla_tilde, const SvkPair<S>& pair,
                                    const ShapeData<S>& shape, Tolerance tol, bool check) {
  const auto& g = s.g();
  const auto& gt = s.g_tilde();
  const auto& xi = s.xi();
  CurvatureBundle<S> b;
  const Tensor<S> R13 = curvature(s.lie(), nabla);
  const Tensor<S> Rt13 = curvature(s.lie(), nabla_tilde);
  b.R = lower_last(R13, g);
  b.R_tilde = lower_last(Rt13, gt);
  b.R_D = curvature_04(s.lie(), pair.D, g);
  b.R_Dt = curvature_04(s.lie(), pair.D_tilde, gt);

  b.rho = ricci(b.R, g);
  b.rho_tilde = ricci(b.R_tilde, gt);
  b.rho_D = ricci(b.R_D, g);
  b.rho_Dt = ricci(b.R_Dt, gt);
  b.tau = scalar_curvature(b.rho, g);
  b.tau_tilde = scalar_curvature(b.rho_tilde, gt);
  b.tau_D = scalar_curvature(b.rho_D, g);
  b.tau_Dt = scalar_curvature(b.rho_Dt, gt);
  b.rho_xi_xi = evaluate(b.rho, xi, xi);
  b.rho_tilde_xi_xi = evaluate(b.rho_tilde, xi, xi);

  auto& r = b.residuals;
  r.R_D = residual(b.R_D, curvature_D_formula(s, b.R, shape.S_op, g));
  r.R_Dt = residual(b.R_Dt, curvature_D_formula(s, b.R_tilde, shape.S_tilde, gt));
  r.rho_D = residual(b.rho_D, ricci_D_formula(s, b.R, b.rho, shape.S_op, g));
  r.rho_Dt = residual(b.rho_Dt, ricci_D_formula(s, b.R_tilde, b.rho_tilde, shape.S_tilde, gt));
  r.tau_D = scalar_residual(b.tau_D, scalar_D_formula(s, b.tau, b.rho, shape.S_op));
  r.tau_Dt = scalar_residual(b.tau_Dt, scalar_D_formula(s, b.tau_tilde, b.rho_tilde, shape.S_tilde));
  r.rho_xi_xi = scalar_residual(b.rho_xi_xi, ricci_xi_xi_formula(s, nabla, shape.S_op));
  r.rho_xi_xi_tilde = scalar_residual(b.rho_tilde_xi_xi, ricci_xi_xi_formula(s, nabla_tilde, shape.S_tilde));
  r.R_xi = residual(curvature_on_xi(R13, xi), curvature_xi_formula(nabla, shape.S_op));
  r.R_xi_tilde = residual(curvature_on_xi(Rt13, xi), curvature_xi_formula(nabla_tilde, shape.S_tilde));

  if (check) {
    const std::pair<const Residual*, const char*> items[] = {
        {&r.R_D, "R^D != R(x,y,phi^2 z,phi^2 w) + pi1(Sx,Sy,z,w)"},
        {&r.R_Dt, "R^D~ != R~(x,y,phi^2 z,phi^2 w) + pi1~(S~x,S~y,z,w)"},
        {&r.rho_D, "rho^D != Ricci relation"},
        {&r.rho_Dt, "rho^D~ != Ricci relation"},
        {&r.tau_D, "tau^D != scalar relation"},
        {&r.tau_Dt, "tau^D~ != scalar relation"},
        {&r.rho_xi_xi, "rho(xi,xi) != tr(nabla_xi S) - div(S xi) - tr(S^2)"},
        {&r.rho_xi_xi_tilde, "rho~(xi,xi) != tr(nabla~_xi S~) - div~(S~ xi) - tr(S~^2)"},
        {&r.R_xi, "R(x,y)xi != -(nabla_x S)y + (nabla_y S)x"},
        {&r.R_xi_tilde, "R~(x,y)xi != -(nabla~_x S~)y + (nabla~_y S~)x"},
    };
    for (const auto& [res, what] : items)
      if (!res->ok(tol)) throw CrossCheckMismatch(what);
  }
  return b;
}

template <class S>
CurvatureSymmetries curvature_symmetries(const Tensor<S>& R) {
  R.require_valence(0, 4, "curvature_symmetries");
  const std::size_t d = R.dim();
  auto swapped = [&](auto f) { return build4<S>(d, f); };
  CurvatureSymmetries out;
  out.first_pair = residual(R, swapped([&](auto x, auto y, auto z, auto w) { return -R(y, x, z, w); }));
  out.second_pair = residual(R, swapped([&](auto x, auto y, auto z, auto w) { return -R(x, y, w, z); }));
  out.pair_swap = residual(R, swapped([&](auto x, auto y, auto z, auto w) { return R(z, w, x, y); }));
  out.bianchi = residual(R, swapped([&](auto x, auto y, auto z, auto w) { return -R(y, z, x, w) - R(z, x, y, w); }));
  return out;
}

std::string section_kind_name(SectionKind kind) {
  switch (kind) {
    case SectionKind::xi_section:
      return "xi-section";
    case SectionKind::phi_holomorphic:
      return "phi-holomorphic";
    case SectionKind::totally_real:
      return "phi-totally-real";
    case SectionKind::generic:
      return "generic";
  }
  return "generic";
}

template <class S>
S plane_norm(const SectionPlane<S>& plane, const Metric<S>& m) {
  return pi1(m, plane.x, plane.y, plane.y, plane.x);
}

namespace {

template <class S>
void require_nondegenerate(const SectionPlane<S>& plane, const Metric<S>& m, Tolerance tol) {
  const S nrm = plane_norm(plane, m);
  const double scale =
      std::max({1.0, std::abs(to_double(m(plane.x, plane.x))), std::abs(to_double(m(plane.y, plane.y)))});
  const bool zero = ScalarTraits<S>::exact ? nrm == S(0) : std::abs(to_double(nrm)) <= tol.eps * scale * scale;
  if (zero) throw DegeneratePlane("pi1(x,y,y,x) = 0 on the plane");
}

/// Whether v lies in span{x, y}, with x and y independent.
template <class S>
bool in_span(const Tensor<S>& x, const Tensor<S>& y, const Tensor<S>& v, Tolerance tol) {
  const std::size_t d = x.dim();
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  S det(0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      S m = x(i) * y(j) - x(j) * y(i);
      double a = std::abs(to_double(m));
      if (a > best && m != S(0)) {
        best = a;
        bi = i;
        bj = j;
        det = m;
      }
    }
  if (det == S(0)) throw DegeneratePlane("plane vectors are linearly dependent");
  const S a = (v(bi) * y(bj) - v(bj) * y(bi)) / det;
  const S b = (x(bi) * v(bj) - x(bj) * v(bi)) / det;
  return is_zero(Tensor<S>(v - a * x - b * y), tol);
}

}  // namespace

template <class S>
SectionType section_type(const SectionPlane<S>& plane, const ACBStructure<S>& s, const Metric<S>& m, Tolerance tol) {
  require_nondegenerate(plane, m, tol);
  const auto& x = plane.x;
  const auto& y = plane.y;
  SectionType out;
  out.orthogonal_to_xi = is_zero(m(x, s.xi()), tol) && is_zero(m(y, s.xi()), tol);
  if (in_span(x, y, s.xi(), tol)) {
    out.kind = SectionKind::xi_section;
  } else if (in_span(x, y, s.phi_of(x), tol) && in_span(x, y, s.phi_of(y), tol)) {
    out.kind = SectionKind::phi_holomorphic;
  } else if (is_zero(m(x, s.phi_of(x)), tol) && is_zero(m(x, s.phi_of(y)), tol) && is_zero(m(y, s.phi_of(x)), tol) &&
             is_zero(m(y, s.phi_of(y)), tol)) {
    out.kind = SectionKind::totally_real;
    if (out.orthogonal_to_xi && s.dim() < 5)
      throw InvariantViolation("phi-totally-real section orthogonal to xi in dimension 3");
  }
  return out;
}

template <class S>
S sectional_curvature(const SectionPlane<S>& plane, const Tensor<S>& R, const Metric<S>& m, Tolerance tol) {
  R.require_valence(0, 4, "sectional_curvature");
  require_nondegenerate(plane, m, tol);
  const S k = evaluate(R, plane.x, plane.y, plane.y, plane.x) / plane_norm(plane, m);

  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<int> pick(-3, 3);
  int a = 0, b = 0, c = 0, e = 0;
  while (a * e - b * c == 0) {
    a = pick(rng);
    b = pick(rng);
    c = pick(rng);
    e = pick(rng);
  }
  const SectionPlane<S> other{S(a) * plane.x + S(b) * plane.y, S(c) * plane.x + S(e) * plane.y};
  const S k2 = evaluate(R, other.x, other.y, other.y, other.x) / plane_norm(other, m);
  if (!scalar_residual(k, k2).ok(tol)) throw CrossCheckMismatch("sectional curvature depends on the plane basis");
  return k;
}

template <class S>
SectionalReport<S> kD_relation(const SectionPlane<S>& plane, const ACBStructure<S>& ms, const Tensor<S>& R,
                               const Tensor<S>& R_D, const Tensor<S>& S_op, Tolerance tol) {
  const auto& m = ms.g();
  const auto& x = plane.x;
  const auto& y = plane.y;
  SectionalReport<S> out;
  out.type = section_type(plane, ms, m, tol);
  out.k = sectional_curvature(plane, R, m, tol);
  out.k_D = sectional_curvature(plane, R_D, m, tol);

  const S nrm = plane_norm(plane, m);
  const S correction = pi1(m, apply(S_op, x), apply(S_op, y), y, x);
  const S general =
      out.k +
      (correction - ms.eta_of(x) * evaluate(R, x, y, y, ms.xi()) - ms.eta_of(y) * evaluate(R, x, y, ms.xi(), x)) / nrm;
  out.general = scalar_residual(out.k_D, general);
  switch (out.type.kind) {
    case SectionKind::xi_section:
      out.special = scalar_residual(out.k_D, S(0));
      break;
    case SectionKind::phi_holomorphic:
      out.special = scalar_residual(out.k_D, out.k + correction / nrm);
      break;
    case SectionKind::totally_real:
      if (out.type.orthogonal_to_xi) out.special = scalar_residual(out.k_D, out.k + correction / nrm);
      break;
    case SectionKind::generic:
      break;
  }
  return out;
}

#define ACBM_INSTANTIATE(S)                                                                                        \
  template Tensor<S> curvature_04(const LieAlgebraModel<S>&, const AffineConnection<S>&, const Metric<S>&);        \
  template Tensor<S> curvature_D_formula(const ACBStructure<S>&, const Tensor<S>&, const Tensor<S>&,               \
                                         const Metric<S>&);                                                        \
  template Tensor<S> ricci(const Tensor<S>&, const Metric<S>&);                                                    \
  template S scalar_curvature(const Tensor<S>&, const Metric<S>&);                                                 \
  template Tensor<S> ricci_D_formula(const ACBStructure<S>&, const Tensor<S>&, const Tensor<S>&, const Tensor<S>&, \
                                     const Metric<S>&);                                                            \
  template S scalar_D_formula(const ACBStructure<S>&, S, const Tensor<S>&, const Tensor<S>&);                      \
  template S ricci_xi_xi_formula(const ACBStructure<S>&, const AffineConnection<S>&, const Tensor<S>&);            \
  template Tensor<S> curvature_xi_formula(const AffineConnection<S>&, const Tensor<S>&);                           \
  template CurvatureBundle<S> curvature_bundle(const ACBStructure<S>&, const AffineConnection<S>&,                 \
                                               const AffineConnection<S>&, const SvkPair<S>&, const ShapeData<S>&, \
                                               Tolerance, bool);                                                   \
  template CurvatureSymmetries curvature_symmetries(const Tensor<S>&);                                             \
  template SectionType section_type(const SectionPlane<S>&, const ACBStructure<S>&, const Metric<S>&, Tolerance);  \
  template S plane_norm(const SectionPlane<S>&, const Metric<S>&);                                                 \
  template S sectional_curvature(const SectionPlane<S>&, const Tensor<S>&, const Metric<S>&, Tolerance);           \
  template SectionalReport<S> kD_relation(const SectionPlane<S>&, const ACBStructure<S>&, const Tensor<S>&,        \
                                          const Tensor<S>&, const Tensor<S>&, Tolerance);

ACBM_INSTANTIATE(double)
ACBM_INSTANTIATE(Rational)

}  // namespace acbm
