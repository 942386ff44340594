#include "tobs/contraction.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace tobs {

namespace {

void check_contraction(const MatC& c) {
  if (op_norm(c) > 1.0 + 1e-8)
    throw std::invalid_argument("defect: matrix is not a contraction");
}

// Uncompressed characteristic value -C + lambda D_{C*} (1-lambda C*)^{-1} D_C.
// The adjoint in the resolvent is what makes the value a contraction and the
// defect identity hold for non-normal C; for Hermitian C it reduces to the
// plain resolvent.
MatC characteristic_full(const MatC& c, const DefectData& dc, const DefectData& dcs,
                         cd lambda) {
  const int n = static_cast<int>(c.rows());
  const MatC resolvent = (MatC::Identity(n, n) - lambda * c.adjoint())
                             .partialPivLu()
                             .solve(dc.defect_op);
  return -c + lambda * dcs.defect_op * resolvent;
}

void check_lambda(cd lambda) {
  if (std::abs(lambda) > 0.95)
    throw std::invalid_argument("characteristic_function: need |lambda| <= 0.95");
}

void check_square(const MatC& c) {
  if (c.rows() != c.cols())
    throw std::invalid_argument("characteristic_function: matrix not square");
}

}  // namespace

DefectData defect(const MatC& c, double rank_tol) {
  check_contraction(c);
  const int n = static_cast<int>(c.cols());
  MatC gram = MatC::Identity(n, n) - c.adjoint() * c;
  gram = 0.5 * (gram + gram.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<MatC> es(gram);
  if (es.info() != Eigen::Success) throw invariant_error("defect: eigensolver failed");

  DefectData d;
  d.eigs = VecR(n);
  MatC vecs(n, n);
  for (int j = 0; j < n; ++j) {
    const double lam = std::max(es.eigenvalues()(n - 1 - j), 0.0);
    d.eigs(j) = std::sqrt(lam);
    vecs.col(j) = es.eigenvectors().col(n - 1 - j);
  }
  d.defect_op = vecs * d.eigs.asDiagonal() * vecs.adjoint();
  d.defect_op = 0.5 * (d.defect_op + d.defect_op.adjoint().eval());
  // The square root turns Gram rounding noise (~1e-16) into ~1e-8 defect
  // eigenvalues; directions below the rounding floor are not resolvable and a
  // numerically unitary C must report an empty defect subspace.
  const double floor = 1e-7;
  d.threshold = std::max(rank_tol * (n > 0 ? d.eigs(0) : 0.0), floor);
  int rank = 0;
  while (rank < n && d.eigs(rank) > d.threshold) ++rank;
  d.basis = vecs.leftCols(rank);
  return d;
}

MatC characteristic_function(const MatC& c, cd lambda, double rank_tol) {
  check_lambda(lambda);
  check_square(c);
  const DefectData dc = defect(c, rank_tol);
  const DefectData dcs = defect(MatC(c.adjoint()), rank_tol);
  const MatC full = characteristic_full(c, dc, dcs, lambda);
  return dcs.basis.adjoint() * full * dc.basis;
}

double characteristic_defect_residual(const MatC& c, cd lambda, double rank_tol) {
  check_lambda(lambda);
  check_square(c);
  const int n = static_cast<int>(c.rows());
  const DefectData dc = defect(c, rank_tol);
  const DefectData dcs = defect(MatC(c.adjoint()), rank_tol);
  const MatC theta = characteristic_full(c, dc, dcs, lambda);
  const MatC lhs = MatC::Identity(n, n) - theta.adjoint() * theta;
  const MatC inner = (MatC::Identity(n, n) - lambda * c.adjoint())
                         .partialPivLu()
                         .solve(dc.defect_op);
  const MatC rhs = (1.0 - std::norm(lambda)) * inner.adjoint() * inner;
  return (dc.basis.adjoint() * (lhs - rhs) * dc.basis).norm();
}

CharIntertwineResult char_intertwine_residual(const OperatorMatrix& omega, cd lambda,
                                              double rank_tol) {
  check_lambda(lambda);
  MatC c = adjoint(omega).m * omega.m;
  MatC ch = omega.m * adjoint(omega).m;
  c = 0.5 * (c + c.adjoint().eval());
  ch = 0.5 * (ch + ch.adjoint().eval());

  const DefectData dc = defect(c, rank_tol);
  const DefectData dch = defect(ch, rank_tol);
  // both contractions are Hermitian, so the two defect operators coincide
  const MatC theta = characteristic_full(c, dc, dc, lambda);
  const MatC theta_hat = characteristic_full(ch, dch, dch, lambda);

  CharIntertwineResult r;
  r.res_map = op_norm((omega.m * theta - theta_hat * omega.m) * dc.basis) /
              std::max(op_norm(theta), 1e-300);
  r.res_adjoint = op_norm((omega.m.adjoint() * theta_hat - theta * omega.m.adjoint()) *
                          dch.basis) /
                  std::max(op_norm(theta_hat), 1e-300);
  const int nh = static_cast<int>(ch.rows());
  r.inclusion =
      op_norm((MatC::Identity(nh, nh) - dch.basis * dch.basis.adjoint()) * omega.m *
              dc.basis);
  return r;
}

VecR principal_angles(const MatC& b1, const MatC& b2) {
  if (b1.rows() != b2.rows())
    throw std::invalid_argument("principal_angles: ambient dimension mismatch");
  const MatC overlap = b1.adjoint() * b2;
  Eigen::BDCSVD<MatC> svd(overlap);
  const VecR s = svd.singularValues();
  const int k = static_cast<int>(s.size());
  VecR angles(k);
  for (int i = 0; i < k; ++i) angles(i) = std::acos(std::clamp(s(i), 0.0, 1.0));
  return angles;
}

}  // namespace tobs
