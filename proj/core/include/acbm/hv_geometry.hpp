#pragma once

#include <acbm/svk.hpp>
#include <string>
#include <vector>

namespace acbm {

/// Shape operators S(x) = -nabla_x xi and S~(x) = -nabla~_x xi (extended to
/// xi by the same formula) with S<>(x,y) = g(S x, y), S~<>(x,y) = g~(S~ x, y).
template <class S>
struct ShapeData {
  Tensor<S> S_op;
  Tensor<S> S_diamond;
  Tensor<S> S_tilde;
  Tensor<S> S_tilde_diamond;
  S trace_S{0};
  S trace_S_tilde{0};
};

/// Asserts g(S x, xi) = 0, g~(S~ x, xi) = 0, S~ = S - Phi(., xi),
/// S~<>(x,y) = S<>(x, phi y) - Phi(xi, x, phi y) and tr S = tr S~ = -div(eta).
template <class S>
ShapeData<S> shape_operators(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                             const AffineConnection<S>& nabla_tilde, const PotentialPhi<S>& phi, Tolerance tol = {});

/// pi1(x,y,z,w) = m(y,z) m(x,w) - m(x,z) m(y,w).
template <class S>
S pi1(const Metric<S>& m, const Tensor<S>& x, const Tensor<S>& y, const Tensor<S>& z, const Tensor<S>& w);

template <class S>
Tensor<S> pi1_tensor(const Metric<S>& m);

/// Horizontal and vertical parts of the potentials and torsions, all as
/// (1,2) tensors.
template <class S>
struct HvComponents {
  Tensor<S> Qh, Qv, Th, Tv;
  Tensor<S> Qh_tilde, Qv_tilde, Th_tilde, Tv_tilde;
};

/// alpha ^ B as a (1,2) tensor: (alpha ^ B)(x,y) = alpha(x) B(y) - alpha(y) B(x).
template <class S>
Tensor<S> wedge(const Tensor<S>& alpha, const Tensor<S>& B);

/// B (x) alpha as a (1,2) tensor: (x,y) -> B(x) alpha(y).
template <class S>
Tensor<S> endo_times_form(const Tensor<S>& B, const Tensor<S>& alpha);

/// b (x) v as a (1,2) tensor: (x,y) -> b(x,y) v.
template <class S>
Tensor<S> form_times_vector(const Tensor<S>& b, const Tensor<S>& v);

/// Splits Q, T, Q~, T~ into horizontal and vertical parts and asserts every
/// closed form: the nabla xi / nabla eta form, the shape-operator form, the
/// pi1 forms of the (0,3) tensors, and the relations between the two sides.
template <class S>
HvComponents<S> hv_components(const ACBStructure<S>& s, const AffineConnection<S>& nabla,
                              const AffineConnection<S>& nabla_tilde, const SvkPair<S>& pair, const ShapeData<S>& shape,
                              const PotentialPhi<S>& phi, Tolerance tol = {});

struct Predicate {
  std::string name;
  bool value = false;
};

/// One chain of equivalent conditions; `consistent` when all values agree.
struct EquivalenceChain {
  std::string label;
  std::vector<Predicate> predicates;
  bool consistent() const {
    for (const auto& p : predicates)
      if (p.value != predicates.front().value) return false;
    return true;
  }
  bool value() const { return !predicates.empty() && predicates.front().value; }
};

/// The three chains (symmetric nabla eta, skew nabla eta, nabla eta = 0)
/// for the structure `ms` carrying the metric of one side, with that side's
/// Levi-Civita connection, Schouten-van Kampen connection, potential/torsion
/// and shape operator.
template <class S>
std::vector<EquivalenceChain> equivalence_chains(const ACBStructure<S>& ms, const AffineConnection<S>& nabla,
                                                 const AffineConnection<S>& D, const PotentialTorsion<S>& pt,
                                                 const Tensor<S>& S_op, const Tensor<S>& S_diamond, Tolerance tol = {});

}  // namespace acbm
