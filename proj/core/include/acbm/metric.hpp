#pragma once

#include <acbm/tensor.hpp>
#include <utility>

namespace acbm {

/// Counts of positive and negative eigenvalues.
struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inverse of a symmetric non-degenerate (0,2) tensor, as a (2,0) tensor.
/// Throws DegenerateMetric when det = 0 (rational) or |det| < eps (float).
template <class S>
Tensor<S> metric_inverse(const Tensor<S>& m, Tolerance tol = {});

/// Sylvester inertia of a symmetric (0,2) tensor via congruence
/// diagonalization. Zero eigenvalues are not counted.
template <class S>
Signature signature_of(const Tensor<S>& m, Tolerance tol = {});

template <class S>
S determinant(const Tensor<S>& m);

/// Non-degenerate symmetric bilinear form together with its inverse.
template <class S>
class Metric {
 public:
  Metric() = default;

  static Metric from_matrix(Tensor<S> matrix, Tolerance tol = {});

  std::size_t dim() const { return matrix_.dim(); }
  const Tensor<S>& matrix() const { return matrix_; }
  const Tensor<S>& inverse() const { return inverse_; }
  Signature signature() const { return signature_; }

  S operator()(const Tensor<S>& x, const Tensor<S>& y) const;
  /// Index lowering, v -> m(v, .).
  Tensor<S> flat(const Tensor<S>& v) const;
  /// Index raising, omega -> the unique v with m(v, .) = omega.
  Tensor<S> sharp(const Tensor<S>& omega) const;

 private:
  Tensor<S> matrix_;
  Tensor<S> inverse_;
  Signature signature_;
};

template <class S>
Tensor<S> sharp(const Tensor<S>& omega, const Metric<S>& m) {
  return m.sharp(omega);
}

template <class S>
Tensor<S> flat(const Tensor<S>& v, const Metric<S>& m) {
  return m.flat(v);
}

/// m^{ij} B_{ij}.
template <class S>
S trace_with_metric(const Tensor<S>& b, const Metric<S>& m);

/// Lowers the vector slot of a (1,k) tensor with m, giving a (0,k+1)
/// tensor whose last slot is the former vector slot:
/// out(i..., z) = m(t(i...), e_z).
template <class S>
Tensor<S> lower_last(const Tensor<S>& t, const Metric<S>& m);

/// Inverse of lower_last.
template <class S>
Tensor<S> raise_last(const Tensor<S>& t, const Metric<S>& m);

}  // namespace acbm
