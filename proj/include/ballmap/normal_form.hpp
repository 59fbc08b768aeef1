#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "ballmap/ball_map.hpp"
#include "ballmap/takagi.hpp"

namespace ballmap {

// Lambda(z) = r(z, zbar) / (1 - ||z||^2)^d for the underlying form r of a
// degree-d map.  Composing the map with a target automorphism leaves Lambda
// unchanged; composing with a source automorphism multiplies it by a
// constant.  For degree >= 2 it has a single interior critical point, which
// is the center used to normalize the map.
struct LambdaFunction {
  RealForm r;
  int d;

  static LambdaFunction of(const RationalBallMap& f);

  double evaluate(const Eigen::VectorXcd& z) const;

  // Gradient of log Lambda with respect to the 2n real coordinates
  // (Re z_1..Re z_n, Im z_1..Im z_n), computed from the Wirtinger derivative
  //   dbar_j log Lambda = (dbar_j r)/r + d z_j/(1 - ||z||^2)
  // as twice its real and imaginary parts.
  Eigen::VectorXd log_gradient(const Eigen::VectorXcd& z) const;
};

// Interior critical point of Lambda by damped Newton iteration on the log
// gradient, starting from the origin with a few seeded restarts.  Requires
// d >= 2; throws std::runtime_error if no iterate converges.
Eigen::VectorXcd lambda_critical_point(const LambdaFunction& lambda,
                                       std::uint64_t seed = 20240901,
                                       int max_iterations = 120);

// Quadratic part of g as a symmetric matrix and its symmetric factorization:
// w = conj(u) is the unitary with (g_2 compose w)(z) = sum sigma_l z_l^2,
// sigma ascending.
struct QuadraticDiagonalization {
  Eigen::VectorXd sigma;
  Eigen::MatrixXcd w;
  double residual = 0.0;
};

QuadraticDiagonalization diagonalize_quadratic(const Polynomial& g);

// Checks of the shape p(0) = 0, g = 1 + g_2 + ... + g_{d-1} with
// g_2 = sum sigma_l z_l^2 and 0 <= sigma_1 <= ... <= sigma_n.  Defect fields
// are absolute; is_normal compares them against rel_tol * coefficient scale.
struct NormalFormReport {
  bool is_normal = false;
  Eigen::VectorXd sigma;            // real parts of z_l^2 coefficients
  double numerator_at_zero = 0.0;   // ||p(0)||
  double linear_term = 0.0;         // max |coeff| of degree-1 part of g
  double quadratic_off_diagonal = 0.0;
  double quadratic_imaginary = 0.0;
  double sigma_order_defect = 0.0;  // max of sigma_l - sigma_{l+1} and -sigma_1
  bool denominator_degree_ok = false;
};

NormalFormReport normal_form_report(const RationalBallMap& f,
                                    double rel_tol = tol::linear_term_rel);

// The composition chain that brings f to normal form, together with the
// result: normalized(z) = phi_beta(f(phi_alpha(w z))).
struct NormalizationCertificate {
  RationalBallMap normalized;
  Eigen::VectorXcd alpha;           // Lambda critical point of f
  Eigen::VectorXcd beta;            // image of the new origin before recentering
  Eigen::MatrixXcd w;               // source unitary from the quadratic part
  Eigen::VectorXd sigma;            // ascending invariants of the denominator
  double gradient_at_zero = 0.0;    // |log gradient| of the normalized Lambda at 0
  double linear_term_residual = 0.0;
  double takagi_residual = 0.0;
};

// Centers f at the Lambda critical point, recenters the target at the image
// of the origin, checks the denominator lost its linear term, and rotates
// the source so the quadratic part of the denominator is diagonal with
// ascending coefficients.  Requires degree >= 2.
NormalizationCertificate normalize(const RationalBallMap& f,
                                   std::uint64_t seed = 20240901);

}  // namespace ballmap
