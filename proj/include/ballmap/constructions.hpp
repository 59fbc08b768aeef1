#pragma once

#include <vector>

#include <Eigen/Core>

#include "ballmap/ball_map.hpp"

namespace ballmap {

// Output of the synthesis routines: the map plus the evidence gathered while
// building it.  epsilon is the perturbation size the search settled on (1
// when the construction has no free parameter), epsilon_half_ok records that
// the positivity condition also holds with the perturbation halved.
struct ConstructionResult {
  RationalBallMap map;
  double epsilon = 1.0;
  PropernessReport properness;
  LowestTerms lowest_terms = LowestTerms::likely;
  Signature signature;
  double reconstruction_residual = 0.0;
  bool epsilon_half_ok = false;
};

// Builds a proper map with denominator 1 + eps G (or 1 + G(eps z) when
// dilate is set) and numerator of degree d vanishing at the origin.
// Requires G(0) = 0, deg G <= d - 1, d >= 2.  eps starts at 1 and is halved
// until the residual coefficient matrix is positive semidefinite and the
// denominator is zero-free on the closed ball, at most 60 times.
ConstructionResult construct_with_denominator(const Polynomial& g,
                                              int d, bool dilate = false);

// Builds a degree-4 proper map with denominator 1 + sum sigma_j z_j^2 whose
// numerator uses only monomials of degree 2 and 4, so f(-z) = f(z)
// componentwise holds exactly.  Requires 0 < sigma_1 < ... < sigma_n; large
// entries make the coefficient matrix indefinite, which is reported with the
// failing eigenvalue (values up to about 1/sqrt(n) work).
ConstructionResult construct_even_quartic(const Eigen::VectorXd& sigma);

// A list of real bihomogeneous forms rho_j of bidegree (d_j, d_j), d_j >= 1,
// in n variables.  A unitary is "admissible" when it preserves every rho_j.
struct InvariantPolynomialSpec {
  int n = 0;
  std::vector<RealForm> forms;
};

// Stacks the forms into a single form whose unitary invariance is equivalent
// to invariance of every rho_j: block j is ||z||^(2(1 + k_{j-1})) rho_j with
// k_j = d_1 + ... + d_j, so block j is bihomogeneous of bidegree 1 + k_j and
// no two blocks share a degree.  The leading ||z||^2 factor keeps the result
// free of pure holomorphic or antiholomorphic terms.
RealForm combine_invariants(const InvariantPolynomialSpec& spec);

// Builds a polynomial proper map f with f(0) = 0 (denominator 1) whose
// form-preserving source unitaries are exactly the admissible ones of the
// spec: ||f||^2 = R + eps rho (1 - ||z||^2) where rho = combine_invariants
// and R is the degree-(bidegree(rho) + 1) diagonal sum of ball powers.  An
// empty spec yields the degree-2 R alone, invariant under all of U(n).
ConstructionResult construct_invariant_map(const InvariantPolynomialSpec& spec);

// The explicit degree-4 family: H = (z1^2, sqrt(2) z1 z2, z2^2), psi the
// recentering of H at (-sigma1, 0, -sigma2), and the components
// (psi_1 H, psi_3 H, psi_2) stacked into a map from the 2-ball to the
// 7-ball with denominator exactly 1 + sigma1 z1^2 + sigma2 z2^2.
// Requires sigma1^2 + sigma2^2 < 1.
RationalBallMap example_map(double sigma1, double sigma2);

}  // namespace ballmap
