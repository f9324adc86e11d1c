#include <acbm/classify.hpp>
#include <stdexcept>

#include "frame.hpp"

namespace acbm {

using detail::build2;
using detail::build3;
using detail::eval2;
using detail::eval3;
using detail::Frame;

namespace {

constexpr std::array<std::string_view, kClassCount> kNames = {"F0", "F1", "F2", "F3",  "F4",    "F5",
                                                              "F6", "F7", "F8", "F9",  "F10",   "F11",
                                                              "U1", "U2", "U3", "U1~", "F3+U3", "F1+F2+U3"};

std::size_t idx(ClassId c) { return static_cast<std::size_t>(c); }

}  // namespace

std::string_view class_name(ClassId c) { return kNames[idx(c)]; }

ClassId class_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kClassCount; ++i)
    if (kNames[i] == name) return static_cast<ClassId>(i);
  throw std::invalid_argument("unknown class name '" + std::string(name) + "'");
}

template <class S>
std::vector<ClassId> ClassificationReport<S>::basic_classes() const {
  std::vector<ClassId> out;
  for (int c = 1; c <= 11; ++c)
    if (membership[static_cast<std::size_t>(c)]) out.push_back(static_cast<ClassId>(c));
  return out;
}

template <class S>
std::array<Residual, 12> basic_class_residuals(const ACBStructure<S>& ms, const Tensor<S>& F, const LeeForms<S>& lee) {
  const std::size_t d = ms.dim();
  const Frame<S> fr(ms);
  const auto& e = fr.e;
  const auto& pe = fr.pe;
  const auto& ppe = fr.ppe;
  const auto& xi = fr.xi;
  const auto& g = ms.g().matrix();
  const auto& eta = fr.eta;
  auto f = [&](const auto& a, const auto& b, const auto& c) { return eval3(F, a, b, c); };
  auto gm = [&](const auto& a, const auto& b) { return eval2(g, a, b); };
  auto form = [&](const Tensor<S>& w, const detail::Sparse<S>& v) {
    S sum(0);
    for (const auto& [i, c] : v.terms) sum += w(i) * c;
    return sum;
  };
  const S c = S(1) / S(static_cast<int>(2 * ms.n()));
  const S theta_xi = form(lee.theta, xi);
  const S theta_star_xi = form(lee.theta_star, xi);

  std::array<Residual, 12> r{};
  r[0] = zero_residual(F);

  r[1] = residual(F, build3<S>(d, [&](auto x, auto y, auto z) {
                    return c * (gm(e[x], pe[y]) * form(lee.theta, pe[z]) + gm(pe[x], pe[y]) * form(lee.theta, ppe[z]) +
                                gm(e[x], pe[z]) * form(lee.theta, pe[y]) + gm(pe[x], pe[z]) * form(lee.theta, ppe[y]));
                  }));

  const Tensor<S> f_xi_first = build2<S>(d, [&](auto y, auto z) { return f(xi, e[y], e[z]); });
  const Tensor<S> f_xi_second = build2<S>(d, [&](auto x, auto z) { return f(e[x], xi, e[z]); });
  const Residual vertical = Residual(zero_residual(f_xi_first)).merge(zero_residual(f_xi_second));

  r[2] = Residual(vertical)
             .merge(zero_residual(build3<S>(d,
                                            [&](auto x, auto y, auto z) {
                                              return f(e[x], e[y], pe[z]) + f(e[y], e[z], pe[x]) + f(e[z], e[x], pe[y]);
                                            })))
             .merge(zero_residual(lee.theta));

  r[3] = Residual(vertical).merge(
      zero_residual(build3<S>(d, [&](auto x, auto y, auto z) { return F(x, y, z) + F(y, z, x) + F(z, x, y); })));

  r[4] = residual(F, build3<S>(d, [&](auto x, auto y, auto z) {
                    return -c * theta_xi * (gm(pe[x], pe[y]) * eta[z] + gm(pe[x], pe[z]) * eta[y]);
                  }));

  r[5] = residual(F, build3<S>(d, [&](auto x, auto y, auto z) {
                    return -c * theta_star_xi * (gm(e[x], pe[y]) * eta[z] + gm(e[x], pe[z]) * eta[y]);
                  }));

  // F6..F9 share the vertical form and differ in the symmetries of A(x,y) = F(x,y,xi).
  const Residual u2 = u2_residual(ms, F);
  const Tensor<S> a = build2<S>(d, [&](auto x, auto y) { return f(e[x], e[y], xi); });
  const Tensor<S> a_phi = build2<S>(d, [&](auto x, auto y) { return f(pe[x], pe[y], xi); });
  const Tensor<S> a_t = transpose(a);
  r[6] = Residual(u2)
             .merge(residual(a, a_t))
             .merge(residual(a, S(-1) * a_phi))
             .merge(zero_residual(lee.theta))
             .merge(zero_residual(lee.theta_star));
  r[7] = Residual(u2).merge(residual(a, S(-1) * a_t)).merge(residual(a, S(-1) * a_phi));
  r[8] = Residual(u2).merge(residual(a, a_t)).merge(residual(a, a_phi));
  r[9] = Residual(u2).merge(residual(a, S(-1) * a_t)).merge(residual(a, a_phi));

  r[10] = residual(F, build3<S>(d, [&](auto x, auto y, auto z) { return f(xi, pe[y], pe[z]) * eta[x]; }));

  r[11] = residual(F, build3<S>(d, [&](auto x, auto y, auto z) {
                     return eta[x] * (eta[y] * form(lee.omega, e[z]) + eta[z] * form(lee.omega, e[y]));
                   }));
  return r;
}

template <class S>
Residual u2_residual(const ACBStructure<S>& ms, const Tensor<S>& F) {
  const Frame<S> fr(ms);
  return residual(F, build3<S>(ms.dim(), [&](auto x, auto y, auto z) {
                    return eval3(F, fr.e[x], fr.e[y], fr.xi) * fr.eta[z] +
                           eval3(F, fr.e[x], fr.e[z], fr.xi) * fr.eta[y];
                  }));
}

template <class S>
Residual phi_condition_residual(const ACBStructure<S>& ms, const Tensor<S>& phi_low) {
  const Frame<S> fr(ms);
  return zero_residual(build3<S>(ms.dim(), [&](auto x, auto y, auto z) {
    return eval3(phi_low, fr.e[x], fr.ppe[y], fr.ppe[z]) + eval3(phi_low, fr.e[x], fr.pe[y], fr.pe[z]);
  }));
}

template <class S>
Residual f_condition_residual(const ACBStructure<S>& ms, const Tensor<S>& F) {
  const Frame<S> fr(ms);
  const auto& e = fr.e;
  const auto& pe = fr.pe;
  const auto& ppe = fr.ppe;
  return zero_residual(build3<S>(ms.dim(), [&](auto x, auto y, auto z) {
    return eval3(F, pe[y], pe[z], e[x]) + eval3(F, ppe[y], ppe[z], e[x]) - eval3(F, pe[z], pe[y], e[x]) -
           eval3(F, ppe[z], ppe[y], e[x]);
  }));
}

namespace {

template <class S>
ClassificationReport<S> classify_side(const ACBStructure<S>& ms, const Tensor<S>& F,
                                      const AffineConnection<S>& nabla_side, const Tensor<S>& phi_low,
                                      const Residual& u1, const Residual& u1_tilde, MetricSide side, Tolerance tol) {
  ClassificationReport<S> rep;
  rep.side = side;
  rep.lee = lee_forms(ms, FTensor<S>{F, MetricSide::g}, ms.g(), tol);
  auto divs = divergences(ms, nabla_side, &rep.lee, tol);
  rep.theta_xi = dot(rep.lee.theta, ms.xi());
  rep.theta_star_xi = dot(rep.lee.theta_star, ms.xi());
  rep.div_eta = divs.div;
  rep.div_star_eta = divs.div_star;

  auto basic = basic_class_residuals(ms, F, rep.lee);
  for (std::size_t c = 0; c < basic.size(); ++c) rep.residuals[c] = basic[c];
  rep.residuals[idx(ClassId::U1)] = u1;
  rep.residuals[idx(ClassId::U1_tilde)] = u1_tilde;
  rep.residuals[idx(ClassId::U2)] = u2_residual(ms, F);
  rep.residuals[idx(ClassId::F3_U3)] = phi_condition_residual(ms, phi_low);
  rep.residuals[idx(ClassId::F1_F2_U3)] = f_condition_residual(ms, F);
  rep.residuals[idx(ClassId::U3)] = Residual(rep.residuals[idx(ClassId::U2)]).merge(rep.residuals[idx(ClassId::F3_U3)]);
  for (std::size_t c = 0; c < kClassCount; ++c) rep.membership[c] = rep.residuals[c].ok(tol);
  return rep;
}

}  // namespace

template <class S>
ClassificationReport<S> classify(const ACBStructure<S>& s, const FTensor<S>& F, const FTensor<S>& F_tilde,
                                 const AffineConnection<S>& nabla, const AffineConnection<S>& nabla_tilde,
                                 MetricSide side, Tolerance tol) {
  if (F.side != MetricSide::g || F_tilde.side != MetricSide::g_tilde)
    throw std::invalid_argument("classify: expected F from g and F~ from g~");
  const Residual u1 = zero_residual(covariant_derivative(nabla, s.xi()));
  const Residual u1_tilde = zero_residual(covariant_derivative(nabla_tilde, s.xi()));
  const Tensor<S> diff = nabla_tilde.coefficients() - nabla.coefficients();
  if (side == MetricSide::g) return classify_side(s, F.F, nabla, lower_last(diff, s.g()), u1, u1_tilde, side, tol);
  const ACBStructure<S> ms = s.associated(tol);
  return classify_side(ms, F_tilde.F, nabla_tilde, lower_last(S(-1) * diff, ms.g()), u1, u1_tilde, side, tol);
}

template <class S>
std::vector<NablaXiRow> nabla_xi_table_check(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                                             const AffineConnection<S>& nabla_tilde,
                                             const ClassificationReport<S>& report, Tolerance tol) {
  const bool tilde = report.side == MetricSide::g_tilde;
  const ACBStructure<S> ms = tilde ? s.associated(tol) : s;
  const AffineConnection<S>& conn = tilde ? nabla_tilde : nabla;
  const std::size_t d = ms.dim();
  const Tensor<S> nxi = covariant_derivative(conn, ms.xi());  // (k, i) = (nabla_{e_i} xi)^k
  const Tensor<S> b = lower_last(nxi, ms.g());                // b(i, j) = m(nabla_{e_i} xi, e_j)
  const Frame<S> fr(ms);
  const Tensor<S> b_phi = build2<S>(d, [&](auto x, auto y) { return eval2(b, fr.pe[x], fr.pe[y]); });
  const Tensor<S> b_t = transpose(b);
  const S c = S(1) / S(static_cast<int>(2 * ms.n()));
  const Tensor<S> phi2 = compose(ms.phi(), ms.phi());

  std::vector<NablaXiRow> rows;
  for (ClassId cls : report.basic_classes()) {
    Residual r;
    switch (cls) {
      case ClassId::F4:
        r = residual(nxi, c * report.div_star_eta * ms.phi());
        break;
      case ClassId::F5:
        r = residual(nxi, S(-1) * c * report.div_eta * phi2);
        break;
      case ClassId::F6:
        r = Residual(residual(b, b_t))
                .merge(residual(b, S(-1) * b_phi))
                .merge(scalar_residual(report.div_eta, S(0)))
                .merge(scalar_residual(report.div_star_eta, S(0)));
        break;
      case ClassId::F7:
        r = Residual(residual(b, S(-1) * b_t)).merge(residual(b, S(-1) * b_phi));
        break;
      case ClassId::F8:
        r = Residual(residual(b, S(-1) * b_t)).merge(residual(b, b_phi));
        break;
      case ClassId::F9:
        r = Residual(residual(b, b_t)).merge(residual(b, b_phi));
        break;
      case ClassId::F11:
        r = residual(nxi, tensor_product(apply(ms.phi(), report.lee.omega_sharp), ms.eta()));
        break;
      default:  // F1, F2, F3, F10
        r = zero_residual(nxi);
        break;
    }
    rows.push_back({cls, r.ok(tol), r});
  }
  return rows;
}

#define ACBM_INSTANTIATE(S)                                                                                         \
  template struct ClassificationReport<S>;                                                                          \
  template std::array<Residual, 12> basic_class_residuals(const ACBStructure<S>&, const Tensor<S>&,                 \
                                                          const LeeForms<S>&);                                      \
  template Residual u2_residual(const ACBStructure<S>&, const Tensor<S>&);                                          \
  template Residual phi_condition_residual(const ACBStructure<S>&, const Tensor<S>&);                               \
  template Residual f_condition_residual(const ACBStructure<S>&, const Tensor<S>&);                                 \
  template ClassificationReport<S> classify(const ACBStructure<S>&, const FTensor<S>&, const FTensor<S>&,           \
                                            const AffineConnection<S>&, const AffineConnection<S>&, MetricSide,     \
                                            Tolerance);                                                             \
  template std::vector<NablaXiRow> nabla_xi_table_check(const ACBStructure<S>&, const AffineConnection<S>&,         \
                                                        const AffineConnection<S>&, const ClassificationReport<S>&, \
                                                        Tolerance);

ACBM_INSTANTIATE(double)
ACBM_INSTANTIATE(Rational)

}  // namespace acbm
