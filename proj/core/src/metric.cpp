#include <acbm/metric.hpp>
#include <cmath>
#include <vector>

namespace acbm {

namespace {

template <class S>
using Rows = std::vector<std::vector<S>>;

template <class S>
Rows<S> to_rows(const Tensor<S>& m) {
  Rows<S> a(m.dim(), std::vector<S>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) a[i][j] = m(i, j);
  return a;
}

// Gauss-Jordan with partial pivoting on |entry|; exact for rationals.
template <class S>
std::pair<Tensor<S>, S> invert(const Tensor<S>& m, Tolerance tol) {
  const std::size_t d = m.dim();
  Rows<S> a = to_rows(m);
  Rows<S> inv(d, std::vector<S>(d, S(0)));
  for (std::size_t i = 0; i < d; ++i) inv[i][i] = S(1);
  S det(1);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    double best = -1.0;
    for (std::size_t r = col; r < d; ++r) {
      double mag = std::abs(to_double(a[r][col]));
      if (a[r][col] != S(0) && mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (best < 0.0 || is_zero(a[piv][col], Tolerance{tol.eps * 1e-3})) {
      return {Tensor<S>(d, 2, 0), S(0)};
    }
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(inv[piv], inv[col]);
      det = -det;
    }
    S p = a[col][col];
    det *= p;
    for (std::size_t j = 0; j < d; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col] == S(0)) continue;
      S f = a[r][col];
      for (std::size_t j = 0; j < d; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  Tensor<S> out(d, 2, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = inv[i][j];
  return {out, det};
}

template <class S>
void require_symmetric(const Tensor<S>& m, Tolerance tol) {
  m.require_valence(0, 2, "metric");
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i + 1; j < m.dim(); ++j)
      if (!is_zero(S(m(i, j) - m(j, i)), tol))
        throw AsymmetricMetric("metric is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

}  // namespace

template <class S>
S determinant(const Tensor<S>& m) {
  m.require_valence(0, 2, "determinant");
  return invert(m, Tolerance{0.0}).second;
}

template <class S>
Tensor<S> metric_inverse(const Tensor<S>& m, Tolerance tol) {
  require_symmetric(m, tol);
  auto [inv, det] = invert(m, tol);
  if (is_zero(det, tol)) throw DegenerateMetric("metric is degenerate (det = " + std::to_string(to_double(det)) + ")");
  return inv;
}

template <class S>
Signature signature_of(const Tensor<S>& m, Tolerance tol) {
  require_symmetric(m, tol);
  const std::size_t d = m.dim();
  Rows<S> a = to_rows(m);
  std::vector<bool> active(d, true);
  Signature sig;
  for (std::size_t step = 0; step < d; ++step) {
    // Largest remaining diagonal entry as pivot.
    std::size_t piv = d;
    double best = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      if (!active[i] || is_zero(a[i][i], tol)) continue;
      double mag = std::abs(to_double(a[i][i]));
      if (piv == d || mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (piv == d) {
      // Zero diagonal: a nonzero off-diagonal a_ij lets row/col i += row/col j
      // produce the diagonal entry 2 a_ij.
      for (std::size_t i = 0; i < d && piv == d; ++i) {
        if (!active[i]) continue;
        for (std::size_t j = 0; j < d; ++j) {
          if (!active[j] || j == i || is_zero(a[i][j], tol)) continue;
          for (std::size_t k = 0; k < d; ++k) a[i][k] += a[j][k];
          for (std::size_t k = 0; k < d; ++k) a[k][i] += a[k][j];
          piv = i;
          break;
        }
      }
      if (piv == d) break;  // remaining block is zero
    }
    S p = a[piv][piv];
    if (p > S(0))
      ++sig.positive;
    else
      ++sig.negative;
    for (std::size_t k = 0; k < d; ++k) {
      if (!active[k] || k == piv || a[k][piv] == S(0)) continue;
      S f = a[k][piv] / p;
      for (std::size_t j = 0; j < d; ++j) a[k][j] -= f * a[piv][j];
      for (std::size_t j = 0; j < d; ++j) a[j][k] -= f * a[j][piv];
    }
    active[piv] = false;
  }
  return sig;
}

template <class S>
Metric<S> Metric<S>::from_matrix(Tensor<S> matrix, Tolerance tol) {
  Metric<S> g;
  g.inverse_ = metric_inverse(matrix, tol);
  g.signature_ = signature_of(matrix, tol);
  g.matrix_ = std::move(matrix);
  return g;
}

template <class S>
S Metric<S>::operator()(const Tensor<S>& x, const Tensor<S>& y) const {
  return evaluate(matrix_, x, y);
}

template <class S>
Tensor<S> Metric<S>::flat(const Tensor<S>& v) const {
  v.require_valence(1, 0, "flat");
  if (v.dim() != dim()) throw DimensionMismatch("flat: dimensions differ");
  Tensor<S> out = Tensor<S>::covector(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) out(i) += matrix_(i, j) * v(j);
  return out;
}

template <class S>
Tensor<S> Metric<S>::sharp(const Tensor<S>& omega) const {
  omega.require_valence(0, 1, "sharp");
  if (omega.dim() != dim()) throw DimensionMismatch("sharp: dimensions differ");
  Tensor<S> out = Tensor<S>::vector(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) out(i) += inverse_(i, j) * omega(j);
  return out;
}

template <class S>
S trace_with_metric(const Tensor<S>& b, const Metric<S>& m) {
  b.require_valence(0, 2, "trace_with_metric");
  if (b.dim() != m.dim()) throw DimensionMismatch("trace_with_metric: dimensions differ");
  S sum(0);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) sum += m.inverse()(i, j) * b(i, j);
  return sum;
}

template <class S>
Tensor<S> lower_last(const Tensor<S>& t, const Metric<S>& m) {
  if (t.contravariant() != 1) throw DimensionMismatch("lower_last: expected one vector slot");
  if (t.dim() != m.dim()) throw DimensionMismatch("lower_last: dimensions differ");
  const std::size_t d = t.dim();
  Tensor<S> out(d, 0, t.covariant() + 1);
  std::vector<std::size_t> src(static_cast<std::size_t>(t.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    auto idx = out.unflatten(flat);
    const std::size_t z = idx.back();
    for (std::size_t r = 0; r + 1 < idx.size(); ++r) src[r + 1] = idx[r];
    S sum(0);
    for (std::size_t k = 0; k < d; ++k) {
      src[0] = k;
      sum += t.at(src) * m.matrix()(k, z);
    }
    out.entries()[flat] = sum;
  }
  return out;
}

template <class S>
Tensor<S> raise_last(const Tensor<S>& t, const Metric<S>& m) {
  if (t.contravariant() != 0 || t.covariant() < 1) throw DimensionMismatch("raise_last: expected a (0,k) tensor");
  if (t.dim() != m.dim()) throw DimensionMismatch("raise_last: dimensions differ");
  const std::size_t d = t.dim();
  Tensor<S> out(d, 1, t.covariant() - 1);
  std::vector<std::size_t> src(static_cast<std::size_t>(t.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    auto idx = out.unflatten(flat);
    const std::size_t k = idx[0];
    for (std::size_t r = 1; r < idx.size(); ++r) src[r - 1] = idx[r];
    S sum(0);
    for (std::size_t z = 0; z < d; ++z) {
      src.back() = z;
      sum += m.inverse()(k, z) * t.at(src);
    }
    out.entries()[flat] = sum;
  }
  return out;
}

#define ACBM_INSTANTIATE(S)                                          \
  template S determinant(const Tensor<S>&);                          \
  template Tensor<S> metric_inverse(const Tensor<S>&, Tolerance);    \
  template Signature signature_of(const Tensor<S>&, Tolerance);      \
  template class Metric<S>;                                          \
  template S trace_with_metric(const Tensor<S>&, const Metric<S>&);  \
  template Tensor<S> lower_last(const Tensor<S>&, const Metric<S>&); \
  template Tensor<S> raise_last(const Tensor<S>&, const Metric<S>&);

ACBM_INSTANTIATE(double)
ACBM_INSTANTIATE(Rational)

}  // namespace acbm
