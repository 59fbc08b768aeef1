#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ballmap/monomial_basis.hpp"
#include "ballmap/polynomial.hpp"

namespace ballmap {

// Inertia of a Hermitian coefficient matrix: counts of eigenvalues above and
// below the zero threshold.
struct Signature {
  int positives = 0;
  int negatives = 0;
  int rank() const { return positives + negatives; }
  bool operator==(const Signature&) const = default;
};

// Real-valued polynomial r(z, zbar) stored as a Hermitian matrix of
// coefficients over a monomial basis: r = sum_{a,b} M(a,b) z^a conj(z)^b.
// Row index a runs over holomorphic monomials, column index b over the
// conjugated ones; reality of r is exactly Hermitian-ness of M.
//
// The constant monomial is index 0, so the matrix row/column 0 carries the
// purely holomorphic / purely antiholomorphic part.  Decompositions consult
// that row explicitly so they can pin P(0) = 0 exactly whenever the pure
// part vanishes.
class RealForm {
 public:
  explicit RealForm(MonomialBasis basis);
  RealForm(MonomialBasis basis, Eigen::MatrixXcd coefficients);

  // ||P||^2 - ||G||^2 for polynomial tuples P, G.  The basis degree is the
  // max component degree unless min_degree asks for more headroom.
  static RealForm from_squares(const PolyMap& p, const PolyMap& g,
                               int min_degree = -1);

  static RealForm constant(int n, double c);

  // ||z||^{2k} as a form (diagonal multinomial coefficients, degree k basis).
  static RealForm norm_power(int n, int k);

  // g(z) + conj(g(z)) for a holomorphic polynomial g.
  static RealForm hermitian_double(const Polynomial& g);

  const MonomialBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::MatrixXcd& matrix() { return mat_; }

  int dimension() const { return basis_.dimension(); }
  int basis_degree() const { return basis_.max_degree(); }

  double frobenius_norm() const { return mat_.norm(); }
  double max_abs_entry() const;
  double value_at_zero() const { return mat_(0, 0).real(); }

  // ||M - M^H|| (absolute).  symmetrize() replaces M by (M + M^H)/2 and
  // returns the defect it removed.
  double hermitian_defect() const;
  double symmetrize();

  // Same form over the degree-d2 basis (d2 >= current degree).
  RealForm embedded(int d2) const;

  // Copy with trailing all-zero degrees trimmed from the basis.
  RealForm compacted(double rel_tol = tol::coeff_prune_rel) const;

  RealForm operator+(const RealForm& rhs) const;
  RealForm operator-(const RealForm& rhs) const;
  RealForm operator*(const RealForm& rhs) const;  // basis degrees add
  RealForm scaled(double s) const;

  // Entries with row degree a and column degree b; -1 acts as a wildcard.
  RealForm bidegree_part(int a, int b) const;

  // Max row degree and max column degree over nonzero entries ((0,0) for the
  // zero form).  is_bihomogeneous also demands every nonzero entry sit at
  // exactly that bidegree.
  std::pair<int, int> bidegree(double rel_tol = tol::coeff_prune_rel) const;
  bool is_bihomogeneous(double rel_tol = tol::coeff_prune_rel) const;

  // Max |entry| in row 0 / column 0 excluding the (0,0) corner; measures the
  // purely holomorphic + antiholomorphic content.
  double pure_term_defect() const;

  // r(z, conj z).  Throws if the imaginary residue is beyond noise, which
  // signals a non-Hermitian matrix.
  double evaluate(const Eigen::VectorXcd& z) const;

  // Wirtinger derivatives (d/d conj(z_j)) r at z, j = 0..n-1.
  Eigen::VectorXcd dbar_gradient(const Eigen::VectorXcd& z) const;

  // r(Uz, conj(Uz)) for a unitary U (degree preserved).
  RealForm compose_unitary(const Eigen::MatrixXcd& u) const;

  // Quotient q with r = (1 - ||z||^2) q, if the division is exact to
  // rel_tol * ||r||.
  std::optional<RealForm> divide_by_sphere(double rel_tol = tol::divide_rel) const;

  Signature signature(double eig_rel_tol = tol::eig_rel) const;

  struct Decomposition {
    PolyMap positive;   // r = ||positive||^2 - ||negative||^2
    PolyMap negative;
    Signature sig;
    double reconstruction_residual = 0.0;  // relative to ||r||
    bool origin_pinned = false;            // constant row was dropped exactly
  };

  // Eigendecomposition of the coefficient matrix split into holomorphic
  // square tuples.  When the pure row/column vanishes (below the eigenvalue
  // threshold) the constant monomial is excluded from the eigenproblem so
  // every component vanishes at the origin exactly.
  Decomposition holomorphic_decomposition(double eig_rel_tol = tol::eig_rel) const;

  // Decomposition restricted to a subset of basis indices; entries outside
  // the subset are required to be below rel tolerance noise.
  Decomposition decomposition_on(const std::vector<int>& indices,
                                 double eig_rel_tol = tol::eig_rel) const;

 private:
  MonomialBasis basis_;
  Eigen::MatrixXcd mat_;
};

}  // namespace ballmap
