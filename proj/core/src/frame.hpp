#pragma once

// Sparse evaluation of multilinear forms on basis vectors and their images
// under phi. Adapted bases make these arguments 1-sparse, which keeps the
// identity checks cheap in rational mode.

#include <acbm/structure.hpp>

#include <utility>
#include <vector>

namespace acbm::detail {

template <class S>
struct Sparse {
  std::vector<std::pair<std::size_t, S>> terms;
};

template <class S>
Sparse<S> sparse(const Tensor<S>& v) {
  Sparse<S> out;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (v(i) != S(0)) out.terms.emplace_back(i, v(i));
  return out;
}

template <class S>
S eval2(const Tensor<S>& t, const Sparse<S>& a, const Sparse<S>& b) {
  S sum(0);
  for (const auto& [i, x] : a.terms)
    for (const auto& [j, y] : b.terms) sum += t(i, j) * x * y;
  return sum;
}

template <class S>
S eval3(const Tensor<S>& t, const Sparse<S>& a, const Sparse<S>& b, const Sparse<S>& c) {
  S sum(0);
  for (const auto& [i, x] : a.terms)
    for (const auto& [j, y] : b.terms) {
      S xy = x * y;
      for (const auto& [k, z] : c.terms) sum += t(i, j, k) * xy * z;
    }
  return sum;
}

template <class S>
S eval4(const Tensor<S>& t, const Sparse<S>& a, const Sparse<S>& b, const Sparse<S>& c,
        const Sparse<S>& d) {
  S sum(0);
  for (const auto& [i, x] : a.terms)
    for (const auto& [j, y] : b.terms)
      for (const auto& [k, z] : c.terms) {
        S xyz = x * y * z;
        for (const auto& [l, w] : d.terms) sum += t(i, j, k, l) * xyz * w;
      }
  return sum;
}

/// Basis e_i, phi e_i, phi^2 e_i and xi, pre-sparsified.
template <class S>
struct Frame {
  std::size_t dim = 0;
  std::vector<Sparse<S>> e, pe, ppe;
  Sparse<S> xi;
  std::vector<S> eta;  // eta(e_i)

  explicit Frame(const ACBStructure<S>& s) : dim(s.dim()) {
    const Tensor<S> phi2 = compose(s.phi(), s.phi());
    for (std::size_t i = 0; i < dim; ++i) {
      Tensor<S> b = s.basis(i);
      e.push_back(sparse(b));
      pe.push_back(sparse(apply(s.phi(), b)));
      ppe.push_back(sparse(apply(phi2, b)));
      eta.push_back(s.eta()(i));
    }
    xi = sparse(s.xi());
  }
};

/// Builds a (0,3) tensor entrywise from f(i, j, k).
template <class S, class Fn>
Tensor<S> build3(std::size_t d, Fn&& f) {
  Tensor<S> out(d, 0, 3);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) out(i, j, k) = f(i, j, k);
  return out;
}

template <class S, class Fn>
Tensor<S> build2(std::size_t d, Fn&& f) {
  Tensor<S> out(d, 0, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = f(i, j);
  return out;
}

template <class S, class Fn>
Tensor<S> build4(std::size_t d, Fn&& f) {
  Tensor<S> out(d, 0, 4);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) out(i, j, k, l) = f(i, j, k, l);
  return out;
}

/// Builds a (1,2) tensor from the vectors B(e_i, e_j) = f(i, j).
template <class S, class Fn>
Tensor<S> build12(std::size_t d, Fn&& f) {
  Tensor<S> out(d, 1, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Tensor<S> v = f(i, j);
      for (std::size_t k = 0; k < d; ++k) out(k, i, j) = v(k);
    }
  return out;
}

/// Column i of a (1,1) tensor, or the vector B(e_i, e_j) of a (1,2) tensor.
template <class S>
Tensor<S> column(const Tensor<S>& t, std::size_t i) {
  Tensor<S> v = Tensor<S>::vector(t.dim());
  for (std::size_t k = 0; k < t.dim(); ++k) v(k) = t(k, i);
  return v;
}

template <class S>
Tensor<S> column(const Tensor<S>& t, std::size_t i, std::size_t j) {
  Tensor<S> v = Tensor<S>::vector(t.dim());
  for (std::size_t k = 0; k < t.dim(); ++k) v(k) = t(k, i, j);
  return v;
}

/// First multi-index where two same-shape tensors differ by more than tol,
/// formatted as "(i,j,k)"; empty when none does.
template <class S>
std::string first_offender(const Tensor<S>& a, const Tensor<S>& b, Tolerance tol) {
  for (std::size_t flat = 0; flat < a.size(); ++flat) {
    S diff = a.entries()[flat] - b.entries()[flat];
    if (is_zero(diff, tol)) continue;
    if (a.size() == 1) return {};
    std::string out = "(";
    auto idx = a.unflatten(flat);
    for (std::size_t r = 0; r < idx.size(); ++r) out += (r ? "," : "") + std::to_string(idx[r]);
    return out + ")";
  }
  return {};
}

}  // namespace acbm::detail
