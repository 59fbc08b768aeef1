#pragma once

#include <Eigen/Core>

namespace ballmap {

// Symmetric factorization A = U diag(sigma) U^T of a complex symmetric
// matrix, with U unitary and sigma the singular values of A sorted
// ascending.  Ties in sigma leave a residual orthogonal mixing freedom in U;
// columns inside a tied block are ordered deterministically.
struct TakagiFactorization {
  Eigen::VectorXd sigma;   // ascending, nonnegative
  Eigen::MatrixXcd u;
  double residual = 0.0;   // ||A - U diag(sigma) U^T|| / max(||A||, 1)
};

TakagiFactorization takagi_factor(const Eigen::MatrixXcd& a);

}  // namespace ballmap
