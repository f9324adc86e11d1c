#include <acbm/analysis.hpp>

namespace acbm {

template <class S>
Analysis<S> analyse(const ACBStructure<S>& s, Tolerance tol) {
  require_valid(s, tol);
  Analysis<S> a;
  a.s = s;
  a.nabla = levi_civita(s.lie(), s.g(), tol);
  a.nabla_tilde = levi_civita(s.lie(), s.g_tilde(), tol);
  a.F = fundamental_F(s, a.nabla, s.g(), tol);
  a.F_tilde = F_tilde(s, a.nabla_tilde, a.F, tol);
  a.phi = potential_Phi(s, a.nabla, a.nabla_tilde, a.F, tol);
  a.svk = svk_pair(s, a.nabla, a.nabla_tilde, tol);
  a.shape = shape_operators(s, a.nabla, a.nabla_tilde, a.phi, tol);
  a.hv = hv_components(s, a.nabla, a.nabla_tilde, a.svk, a.shape, a.phi, tol);
  a.curvature = curvature_bundle(s, a.nabla, a.nabla_tilde, a.svk, a.shape, tol);
  a.report = classify(s, a.F, a.F_tilde, a.nabla, a.nabla_tilde, MetricSide::g, tol);
  a.report_tilde = classify(s, a.F, a.F_tilde, a.nabla, a.nabla_tilde, MetricSide::g_tilde, tol);
  return a;
}

template Analysis<double> analyse(const ACBStructure<double>&, Tolerance);
template Analysis<Rational> analyse(const ACBStructure<Rational>&, Tolerance);

}  // namespace acbm
