#pragma once

#include "tobs/hardy.hpp"

#include <vector>

namespace tobs {

// Cauchy integral F(z) = (1/(2 pi i)) int_{sigma >= 0} h(sigma)/(sigma - z) d sigma
// by composite Simpson quadrature over the half-line nodes (trapezoid patch on
// the final interval when the interval count is odd).  z must keep a distance
// of at least two grid steps from every support node.
cd cauchy_transform(const HalfLineFunction& h, cd z);

// Plemelj decomposition of the embedded state: plus - minus = embed(h) with
// plus in the positive and minus in the negative Hardy component.
struct CauchySplit {
  GridFunction plus;
  GridFunction minus;
};
CauchySplit boundary_split(const HalfLineFunction& h);

// Rebuild the half-line state from its boundary decomposition; strict support
// check at support_tol.
HalfLineFunction reconstruct(const CauchySplit& split, double support_tol = 1e-8);

// Hardy-component masses of the evolved state along a time list:
//   n_plus  = ||P_+ embed(e^{-i sigma t} psi)||^2
//   n_minus = ||P_- embed(e^{-i sigma t} psi)||^2
//   n_plus_toeplitz = ||T_+(t) P_+ embed(psi)||^2   (semigroup route)
// The two plus-routes agree at bin-aligned times for states with negligible
// boundary value at sigma = 0.
struct NormFlowRow {
  double t = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
  double n_plus_toeplitz = 0.0;
};
std::vector<NormFlowRow> norm_flow_curves(const HalfLineFunction& psi,
                                          const std::vector<double>& times);

}  // namespace tobs
