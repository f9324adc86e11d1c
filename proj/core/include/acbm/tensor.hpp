#pragma once

#include <acbm/errors.hpp>
#include <acbm/scalar.hpp>
#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace acbm {

/// Dense tensor of valence (r, s) over a space of dimension `dim`.
///
/// Slots are ordered contravariant first, then covariant, and entries are
/// stored row-major. A (1,2) tensor `c` therefore holds c^k_{ij} at
/// `c(k, i, j)`, and a (1,3) curvature tensor holds R^l_{ijk} at
/// `R(l, i, j, k)` with R(e_i, e_j)e_k = R^l_{ijk} e_l.
template <class S>
class Tensor {
 public:
  Tensor() = default;

  Tensor(std::size_t dim, int contravariant, int covariant) : dim_(dim), contra_(contravariant), co_(covariant) {
    if (dim == 0) throw DimensionMismatch("tensor dimension must be positive");
    if (contravariant < 0 || covariant < 0) throw DimensionMismatch("negative valence");
    std::size_t size = 1;
    for (int r = 0; r < rank(); ++r) size *= dim;
    data_.assign(size, S(0));
  }

  static Tensor scalar(std::size_t dim, S value) {
    Tensor t(dim, 0, 0);
    t.data_[0] = std::move(value);
    return t;
  }
  static Tensor vector(std::size_t dim) { return Tensor(dim, 1, 0); }
  static Tensor covector(std::size_t dim) { return Tensor(dim, 0, 1); }
  static Tensor basis_vector(std::size_t dim, std::size_t i) {
    Tensor t = vector(dim);
    t(i) = S(1);
    return t;
  }
  static Tensor identity(std::size_t dim) {
    Tensor t(dim, 1, 1);
    for (std::size_t i = 0; i < dim; ++i) t(i, i) = S(1);
    return t;
  }

  std::size_t dim() const { return dim_; }
  int contravariant() const { return contra_; }
  int covariant() const { return co_; }
  int rank() const { return contra_ + co_; }
  bool has_valence(int r, int s) const { return contra_ == r && co_ == s; }
  std::size_t size() const { return data_.size(); }

  std::span<const S> entries() const { return data_; }
  std::span<S> entries() { return data_; }

  template <class... I>
  S& operator()(I... idx) {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  const S& operator()(I... idx) const {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  S& at(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
  const S& at(std::span<const std::size_t> idx) const { return data_[offset(idx)]; }

  /// Flat position -> multi-index, for loops that visit every entry.
  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(static_cast<std::size_t>(rank()));
    for (int r = rank() - 1; r >= 0; --r) {
      idx[static_cast<std::size_t>(r)] = flat % dim_;
      flat /= dim_;
    }
    return idx;
  }

  Tensor& operator+=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Tensor& operator*=(const S& a) {
    for (auto& v : data_) v *= a;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const S& a, Tensor t) { return t *= a; }
  friend Tensor operator-(Tensor t) {
    for (auto& v : t.data_) v = -v;
    return t;
  }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.dim_ == b.dim_ && a.contra_ == b.contra_ && a.co_ == b.co_ && a.data_ == b.data_;
  }

  void require_same_shape(const Tensor& o) const {
    if (dim_ != o.dim_ || contra_ != o.contra_ || co_ != o.co_)
      throw DimensionMismatch("tensor shapes differ: " + shape() + " vs " + o.shape());
  }
  void require_valence(int r, int s, const char* what) const {
    if (!has_valence(r, s))
      throw DimensionMismatch(std::string(what) + ": expected valence (" + std::to_string(r) + "," + std::to_string(s) +
                              "), got " + shape());
  }
  std::string shape() const {
    return "(" + std::to_string(contra_) + "," + std::to_string(co_) + ")@" + std::to_string(dim_);
  }

 private:
  std::size_t offset(std::span<const std::size_t> idx) const {
    if (idx.size() != static_cast<std::size_t>(rank()))
      throw DimensionMismatch("wrong number of indices for " + shape());
    std::size_t flat = 0;
    for (std::size_t i : idx) {
      if (i >= dim_) throw std::out_of_range("tensor index out of range");
      flat = flat * dim_ + i;
    }
    return flat;
  }
  std::size_t offset(std::initializer_list<std::size_t> idx) const {
    return offset(std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  std::size_t dim_ = 0;
  int contra_ = 0;
  int co_ = 0;
  std::vector<S> data_;
};

template <class S>
double max_abs(const Tensor<S>& t) {
  double m = 0.0;
  for (const auto& v : t.entries()) m = std::max(m, std::abs(to_double(v)));
  return m;
}

template <class S>
bool is_zero(const Tensor<S>& t, Tolerance tol) {
  return std::all_of(t.entries().begin(), t.entries().end(), [&](const S& v) { return is_zero(v, tol); });
}

// ---------------------------------------------------------------------------
// Residuals

/// Outcome of comparing two computation routes for the same quantity.
/// Exact backends pass only on an exact zero; the float backend passes when
/// the largest deviation is within eps scaled by the largest magnitude
/// involved (never below eps itself).
struct Residual {
  double max_abs = 0.0;
  double scale = 0.0;
  bool exact = true;
  bool exact_zero = true;

  bool ok(Tolerance tol) const {
    if (exact) return exact_zero;
    return max_abs <= tol.eps * std::max(1.0, scale);
  }
  Residual& merge(const Residual& o) {
    max_abs = std::max(max_abs, o.max_abs);
    scale = std::max(scale, o.scale);
    exact = exact && o.exact;
    exact_zero = exact_zero && o.exact_zero;
    return *this;
  }
};

template <class S>
Residual scalar_residual(const S& a, const S& b) {
  Residual r;
  r.exact = ScalarTraits<S>::exact;
  S diff = a - b;
  r.max_abs = std::abs(to_double(diff));
  r.scale = std::max(std::abs(to_double(a)), std::abs(to_double(b)));
  r.exact_zero = diff == S(0);
  return r;
}

template <class S>
Residual residual(const Tensor<S>& a, const Tensor<S>& b) {
  a.require_same_shape(b);
  Residual r;
  r.exact = ScalarTraits<S>::exact;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    S diff = ea[k] - eb[k];
    r.max_abs = std::max(r.max_abs, std::abs(to_double(diff)));
    r.scale = std::max({r.scale, std::abs(to_double(ea[k])), std::abs(to_double(eb[k]))});
    if (diff != S(0)) r.exact_zero = false;
  }
  return r;
}

template <class S>
Residual zero_residual(const Tensor<S>& a) {
  return residual(a, Tensor<S>(a.dim(), a.contravariant(), a.covariant()));
}

template <class S>
bool approx_equal(const Tensor<S>& a, const Tensor<S>& b, Tolerance tol) {
  return residual(a, b).ok(tol);
}

// ---------------------------------------------------------------------------
// Vector-level helpers. A "vector" is a (1,0) tensor, a "covector" (0,1).

template <class S>
S dot(const Tensor<S>& covector, const Tensor<S>& vector) {
  covector.require_valence(0, 1, "dot");
  vector.require_valence(1, 0, "dot");
  if (covector.dim() != vector.dim()) throw DimensionMismatch("dot: dimensions differ");
  S sum(0);
  for (std::size_t i = 0; i < vector.dim(); ++i) sum += covector(i) * vector(i);
  return sum;
}

/// A(v) for a (1,1) tensor A.
template <class S>
Tensor<S> apply(const Tensor<S>& endo, const Tensor<S>& v) {
  endo.require_valence(1, 1, "apply");
  v.require_valence(1, 0, "apply");
  if (endo.dim() != v.dim()) throw DimensionMismatch("apply: dimensions differ");
  const std::size_t d = v.dim();
  Tensor<S> out = Tensor<S>::vector(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) out(k) += endo(k, i) * v(i);
  return out;
}

/// B(x, y) for a (1,2) tensor B, returning a vector.
template <class S>
Tensor<S> apply(const Tensor<S>& b, const Tensor<S>& x, const Tensor<S>& y) {
  b.require_valence(1, 2, "apply");
  x.require_valence(1, 0, "apply");
  y.require_valence(1, 0, "apply");
  if (b.dim() != x.dim() || b.dim() != y.dim()) throw DimensionMismatch("apply: dimensions differ");
  const std::size_t d = x.dim();
  Tensor<S> out = Tensor<S>::vector(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (x(i) == S(0)) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y(j) == S(0)) continue;
      S w = x(i) * y(j);
      for (std::size_t k = 0; k < d; ++k) out(k) += b(k, i, j) * w;
    }
  }
  return out;
}

/// Full evaluation of a (0,k) tensor on k vectors.
template <class S>
S evaluate(const Tensor<S>& t, std::span<const Tensor<S>> args) {
  if (t.contravariant() != 0 || static_cast<std::size_t>(t.covariant()) != args.size())
    throw DimensionMismatch("evaluate: valence " + t.shape() + " does not take " + std::to_string(args.size()) +
                            " vectors");
  for (const auto& a : args) {
    a.require_valence(1, 0, "evaluate");
    if (a.dim() != t.dim()) throw DimensionMismatch("evaluate: dimensions differ");
  }
  const std::size_t d = t.dim();
  const std::size_t k = args.size();
  S sum(0);
  std::vector<std::size_t> idx(k, 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t r = k; r-- > 0;) {
      idx[r] = rem % d;
      rem /= d;
    }
    const S& entry = t.entries()[flat];
    if (entry == S(0)) continue;
    S w = entry;
    bool zero = false;
    for (std::size_t r = 0; r < k && !zero; ++r) {
      const S& c = args[r](idx[r]);
      if (c == S(0))
        zero = true;
      else
        w *= c;
    }
    if (!zero) sum += w;
  }
  return sum;
}

template <class S, class... V>
S evaluate(const Tensor<S>& t, const V&... vs) {
  const std::array<Tensor<S>, sizeof...(V)> args{vs...};
  return evaluate(t, std::span<const Tensor<S>>(args));
}

// ---------------------------------------------------------------------------
// Multilinear plumbing

/// Outer product; slots ordered (contra a, contra b, co a, co b).
template <class S>
Tensor<S> tensor_product(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("tensor_product: dimensions differ");
  Tensor<S> out(a.dim(), a.contravariant() + b.contravariant(), a.covariant() + b.covariant());
  const auto ra = static_cast<std::size_t>(a.rank());
  std::vector<std::size_t> ia(ra), ib(static_cast<std::size_t>(b.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    auto idx = out.unflatten(flat);
    const auto ca = static_cast<std::size_t>(a.contravariant());
    const auto cb = static_cast<std::size_t>(b.contravariant());
    const auto sa = static_cast<std::size_t>(a.covariant());
    for (std::size_t r = 0; r < ca; ++r) ia[r] = idx[r];
    for (std::size_t r = 0; r < cb; ++r) ib[r] = idx[ca + r];
    for (std::size_t r = 0; r < sa; ++r) ia[ca + r] = idx[ca + cb + r];
    for (std::size_t r = 0; r < ib.size() - cb; ++r) ib[cb + r] = idx[ca + cb + sa + r];
    out.entries()[flat] = a.at(ia) * b.at(ib);
  }
  return out;
}

/// Contracts contravariant slot `upper` with covariant slot `lower`
/// (slot numbers counted within their own group).
template <class S>
Tensor<S> contract(const Tensor<S>& t, int upper, int lower) {
  if (upper < 0 || upper >= t.contravariant() || lower < 0 || lower >= t.covariant())
    throw DimensionMismatch("contract: slot out of range for " + t.shape());
  Tensor<S> out(t.dim(), t.contravariant() - 1, t.covariant() - 1);
  const auto up = static_cast<std::size_t>(upper);
  const auto lo = static_cast<std::size_t>(t.contravariant() + lower);
  std::vector<std::size_t> full(static_cast<std::size_t>(t.rank()));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    auto idx = out.unflatten(flat);
    S sum(0);
    for (std::size_t a = 0; a < t.dim(); ++a) {
      std::size_t src = 0;
      for (std::size_t r = 0; r < full.size(); ++r) {
        if (r == up || r == lo)
          full[r] = a;
        else
          full[r] = idx[src++];
      }
      sum += t.at(full);
    }
    out.entries()[flat] = sum;
  }
  return out;
}

/// Trace of a (1,1) tensor.
template <class S>
S trace(const Tensor<S>& endo) {
  endo.require_valence(1, 1, "trace");
  S sum(0);
  for (std::size_t i = 0; i < endo.dim(); ++i) sum += endo(i, i);
  return sum;
}

/// Composition A∘B of (1,1) tensors.
template <class S>
Tensor<S> compose(const Tensor<S>& a, const Tensor<S>& b) {
  a.require_valence(1, 1, "compose");
  b.require_valence(1, 1, "compose");
  a.require_same_shape(b);
  const std::size_t d = a.dim();
  Tensor<S> out(d, 1, 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

/// B(y, x) for a (0,2) tensor.
template <class S>
Tensor<S> transpose(const Tensor<S>& b) {
  b.require_valence(0, 2, "transpose");
  Tensor<S> out(b.dim(), 0, 2);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out(i, j) = b(j, i);
  return out;
}

/// Alt(B)(x, y) = (B(x,y) - B(y,x)) / 2.
template <class S>
Tensor<S> alternation(const Tensor<S>& b) {
  return S(1) / S(2) * (b - transpose(b));
}

/// Sym(B)(x, y) = (B(x,y) + B(y,x)) / 2.
template <class S>
Tensor<S> symmetrization(const Tensor<S>& b) {
  return S(1) / S(2) * (b + transpose(b));
}

template <class S>
Tensor<S> convert_from_rational(const Tensor<Rational>& t) {
  Tensor<S> out(t.dim(), t.contravariant(), t.covariant());
  for (std::size_t k = 0; k < t.size(); ++k) out.entries()[k] = from_rational<S>(t.entries()[k]);
  return out;
}

}  // namespace acbm
