#pragma once

#include "tobs/quasiaffine.hpp"

namespace tobs {

// Defect operator D = (1 - C*C)^{1/2} of a contraction, with an orthonormal
// basis of the defect subspace (eigenvalues above rank_tol * largest defect
// eigenvalue, with an absolute floor of 1e-7 since the square root amplifies
// Gram rounding noise to that scale).  Negative rounding noise under the
// square root is clamped.
struct DefectData {
  MatC defect_op;
  MatC basis;
  VecR eigs;  // defect eigenvalues, descending
  double threshold = 0.0;
};
DefectData defect(const MatC& c, double rank_tol = 1e-8);

// Characteristic function value compressed to the defect subspaces,
//   theta(lambda) = basis_{C*}^* [ -C + lambda D_{C*} (1 - lambda C*)^{-1} D_C ] basis_C,
// for |lambda| <= 0.95 (keeps the resolvent uniformly bounded for ||C|| <= 1).
// The C* resolvent is what makes theta(lambda) contractive for every
// contraction C; for self-adjoint C it coincides with (1 - lambda C)^{-1}.
MatC characteristic_function(const MatC& c, cd lambda, double rank_tol = 1e-8);

// Residual of the defect identity
//   1 - theta(lambda)* theta(lambda)
//     = (1-|lambda|^2) D_C (1 - conj(lambda) C)^{-1} (1 - lambda C*)^{-1} D_C
// compressed to the defect subspace of C; a path-independent correctness
// oracle for the characteristic function.
double characteristic_defect_residual(const MatC& c, cd lambda, double rank_tol = 1e-8);

// Residuals of the transport of the characteristic function through an
// intertwining map omega (with C = omega* omega and C_hat = omega omega*):
//   res_map     = ||(omega theta - theta_hat omega) B|| / ||theta||
//   res_adjoint = ||(omega* theta_hat - theta omega*) B_hat|| / ||theta_hat||
//   inclusion   = ||(1 - B_hat B_hat*) omega B||
// where theta, theta_hat are the uncompressed characteristic values and B,
// B_hat the defect bases.
struct CharIntertwineResult {
  double res_map = 0.0;
  double res_adjoint = 0.0;
  double inclusion = 0.0;
};
CharIntertwineResult char_intertwine_residual(const OperatorMatrix& omega, cd lambda,
                                              double rank_tol = 1e-8);

// Principal angles (ascending, radians) between the column spans of two
// matrices with orthonormal columns.
VecR principal_angles(const MatC& b1, const MatC& b2);

}  // namespace tobs
