#pragma once

#include <acbm/classify.hpp>
#include <acbm/curvature.hpp>

namespace acbm {

/// Everything the library derives from one structure, with every
/// cross-check asserted along the way.
template <class S>
struct Analysis {
  ACBStructure<S> s;
  AffineConnection<S> nabla;
  AffineConnection<S> nabla_tilde;
  FTensor<S> F;
  FTensor<S> F_tilde;
  PotentialPhi<S> phi;
  SvkPair<S> svk;
  ShapeData<S> shape;
  HvComponents<S> hv;
  CurvatureBundle<S> curvature;
  ClassificationReport<S> report;        // (phi, xi, eta, g)
  ClassificationReport<S> report_tilde;  // (phi, xi, eta, g~)
};

/// Requires a valid structure (StructureInvalid otherwise).
template <class S>
Analysis<S> analyse(const ACBStructure<S>& s, Tolerance tol = {});

}  // namespace acbm
