#include <acbm/lie_model.hpp>
#include <string>

namespace acbm {

template <class S>
Residual LieAlgebraModel<S>::jacobi_residual(const Tensor<S>& c) {
  const std::size_t d = c.dim();
  // J^l_{ijk} = c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi} + c^m_{ki} c^l_{mj}
  Tensor<S> jac(d, 1, 3);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          S sum(0);
          for (std::size_t m = 0; m < d; ++m)
            sum += c(m, i, j) * c(l, m, k) + c(m, j, k) * c(l, m, i) + c(m, k, i) * c(l, m, j);
          jac(l, i, j, k) = sum;
        }
  return zero_residual(jac);
}

template <class S>
LieAlgebraModel<S>::LieAlgebraModel(Tensor<S> structure_constants, Tolerance tol) : c_(std::move(structure_constants)) {
  c_.require_valence(1, 2, "structure constants");
  const std::size_t d = c_.dim();
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j)
        if (!is_zero(S(c_(k, i, j) + c_(k, j, i)), tol))
          throw InvalidModel("structure constants not antisymmetric at c^" + std::to_string(k) + "_{" +
                             std::to_string(i) + std::to_string(j) + "}");
  if (!jacobi_residual(c_).ok(tol)) throw InvalidModel("structure constants violate the Jacobi identity");
}

template <class S>
AffineConnection<S> levi_civita(const LieAlgebraModel<S>& lie, const Metric<S>& m, Tolerance tol) {
  const std::size_t d = lie.dim();
  if (m.dim() != d) throw DimensionMismatch("levi_civita: metric and algebra dimensions differ");
  const auto& c = lie.structure_constants();
  const auto& g = m.matrix();
  // low(i,j,z) = m([e_i,e_j], e_z)
  Tensor<S> low(d, 0, 3);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t z = 0; z < d; ++z) {
        S sum(0);
        for (std::size_t k = 0; k < d; ++k) sum += c(k, i, j) * g(k, z);
        low(i, j, z) = sum;
      }
  const S half = S(1) / S(2);
  Tensor<S> gamma(d, 1, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        S sum(0);
        for (std::size_t z = 0; z < d; ++z) {
          S koszul = low(i, j, z) - low(j, z, i) + low(z, i, j);
          sum += m.inverse()(k, z) * koszul;
        }
        gamma(k, i, j) = half * sum;
      }
    }
  AffineConnection<S> conn(std::move(gamma));
  if (!zero_residual(torsion(lie, conn)).ok(tol)) throw InvariantViolation("levi_civita: result has nonzero torsion");
  if (!metric_compatibility_residual(conn, m).ok(tol))
    throw InvariantViolation("levi_civita: result is not metric-compatible");
  return conn;
}

template <class S>
Tensor<S> torsion(const LieAlgebraModel<S>& lie, const AffineConnection<S>& conn) {
  const std::size_t d = lie.dim();
  if (conn.dim() != d) throw DimensionMismatch("torsion: dimensions differ");
  const auto& gam = conn.coefficients();
  const auto& c = lie.structure_constants();
  Tensor<S> t(d, 1, 2);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) t(k, i, j) = gam(k, i, j) - gam(k, j, i) - c(k, i, j);
  return t;
}

template <class S>
Tensor<S> curvature(const LieAlgebraModel<S>& lie, const AffineConnection<S>& conn) {
  const std::size_t d = lie.dim();
  if (conn.dim() != d) throw DimensionMismatch("curvature: dimensions differ");
  const auto& gam = conn.coefficients();
  const auto& c = lie.structure_constants();
  Tensor<S> r(d, 1, 3);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          S sum(0);
          for (std::size_t m = 0; m < d; ++m)
            sum += gam(l, i, m) * gam(m, j, k) - gam(l, j, m) * gam(m, i, k) - c(m, i, j) * gam(l, m, k);
          r(l, i, j, k) = sum;
        }
  return r;
}

template <class S>
Tensor<S> covariant_derivative(const AffineConnection<S>& conn, const Tensor<S>& t) {
  const std::size_t d = t.dim();
  if (conn.dim() != d) throw DimensionMismatch("covariant_derivative: dimensions differ");
  const auto& gam = conn.coefficients();
  const auto r = static_cast<std::size_t>(t.contravariant());
  Tensor<S> out(d, t.contravariant(), t.covariant() + 1);
  std::vector<std::size_t> src(static_cast<std::size_t>(t.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    auto idx = out.unflatten(flat);
    const std::size_t i = idx[r];
    for (std::size_t p = 0; p < r; ++p) src[p] = idx[p];
    for (std::size_t q = r; q < src.size(); ++q) src[q] = idx[q + 1];
    S sum(0);
    for (std::size_t p = 0; p < r; ++p) {
      const std::size_t a = src[p];
      for (std::size_t cidx = 0; cidx < d; ++cidx) {
        src[p] = cidx;
        sum += gam(a, i, cidx) * t.at(src);
      }
      src[p] = a;
    }
    for (std::size_t q = r; q < src.size(); ++q) {
      const std::size_t b = src[q];
      for (std::size_t cidx = 0; cidx < d; ++cidx) {
        src[q] = cidx;
        sum -= gam(cidx, i, b) * t.at(src);
      }
      src[q] = b;
    }
    out.entries()[flat] = sum;
  }
  return out;
}

template <class S>
Tensor<S> along(const Tensor<S>& derivative, const Tensor<S>& x) {
  x.require_valence(1, 0, "along");
  if (derivative.covariant() < 1) throw DimensionMismatch("along: no derivative slot");
  if (derivative.dim() != x.dim()) throw DimensionMismatch("along: dimensions differ");
  const std::size_t d = x.dim();
  const auto r = static_cast<std::size_t>(derivative.contravariant());
  Tensor<S> out(d, derivative.contravariant(), derivative.covariant() - 1);
  std::vector<std::size_t> src(static_cast<std::size_t>(derivative.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    auto idx = out.unflatten(flat);
    for (std::size_t p = 0; p < r; ++p) src[p] = idx[p];
    for (std::size_t q = r; q < idx.size(); ++q) src[q + 1] = idx[q];
    S sum(0);
    for (std::size_t i = 0; i < d; ++i) {
      if (x(i) == S(0)) continue;
      src[r] = i;
      sum += x(i) * derivative.at(src);
    }
    out.entries()[flat] = sum;
  }
  return out;
}

template <class S>
Tensor<S> d_eta(const LieAlgebraModel<S>& lie, const Tensor<S>& eta, const AffineConnection<S>* torsion_free,
                Tolerance tol) {
  eta.require_valence(0, 1, "d_eta");
  const std::size_t d = lie.dim();
  if (eta.dim() != d) throw DimensionMismatch("d_eta: dimensions differ");
  const auto& c = lie.structure_constants();
  Tensor<S> out(d, 0, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      S sum(0);
      for (std::size_t k = 0; k < d; ++k) sum += eta(k) * c(k, i, j);
      out(i, j) = -sum;
    }
  if (torsion_free) {
    Tensor<S> nabla_eta = covariant_derivative(*torsion_free, eta);
    if (!residual(out, nabla_eta - transpose(nabla_eta)).ok(tol))
      throw CrossCheckMismatch("d_eta: bracket form disagrees with antisymmetrized nabla eta");
  }
  return out;
}

template <class S>
Tensor<S> lie_derivative_g(const AffineConnection<S>& nabla, const Tensor<S>& xi, const Metric<S>& m) {
  xi.require_valence(1, 0, "lie_derivative_g");
  Tensor<S> b = lower_last(covariant_derivative(nabla, xi), m);  // b(i, j) = m(nabla_i xi, e_j)
  return b + transpose(b);
}

template <class S>
Residual metric_compatibility_residual(const AffineConnection<S>& conn, const Metric<S>& m) {
  return zero_residual(covariant_derivative(conn, m.matrix()));
}

#define ACBM_INSTANTIATE(S)                                                                                     \
  template class LieAlgebraModel<S>;                                                                            \
  template AffineConnection<S> levi_civita(const LieAlgebraModel<S>&, const Metric<S>&, Tolerance);             \
  template Tensor<S> torsion(const LieAlgebraModel<S>&, const AffineConnection<S>&);                            \
  template Tensor<S> curvature(const LieAlgebraModel<S>&, const AffineConnection<S>&);                          \
  template Tensor<S> covariant_derivative(const AffineConnection<S>&, const Tensor<S>&);                        \
  template Tensor<S> along(const Tensor<S>&, const Tensor<S>&);                                                 \
  template Tensor<S> d_eta(const LieAlgebraModel<S>&, const Tensor<S>&, const AffineConnection<S>*, Tolerance); \
  template Tensor<S> lie_derivative_g(const AffineConnection<S>&, const Tensor<S>&, const Metric<S>&);          \
  template Residual metric_compatibility_residual(const AffineConnection<S>&, const Metric<S>&);

ACBM_INSTANTIATE(double)
ACBM_INSTANTIATE(Rational)

}  // namespace acbm
