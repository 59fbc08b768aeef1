#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ballmap/config.hpp"
#include "ballmap/multiindex.hpp"

namespace ballmap {

using Complex = std::complex<double>;

// Sparse holomorphic polynomial in n complex variables with complex double
// coefficients.  Terms are kept in a map ordered graded-lexicographically,
// which makes iteration order (and hence serialization) canonical.
class Polynomial {
 public:
  using TermMap = std::map<Multiindex, Complex, GradedLexLess>;

  explicit Polynomial(int dimension);

  static Polynomial constant(int n, Complex c);
  static Polynomial variable(int n, int i);  // the monomial z_{i+1}
  static Polynomial monomial(const Multiindex& e, Complex c);

  int dimension() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const;

  Complex coeff(const Multiindex& e) const;
  double max_coeff_abs() const;

  // Accumulates c onto the coefficient of z^e (no pruning).
  Polynomial& add_term(const Multiindex& e, Complex c);

  // Drops coefficients below rel_tol * max_coeff_abs().
  void prune(double rel_tol = tol::coeff_prune_rel);

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator-() const;
  Polynomial operator*(Complex scalar) const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);

  Complex evaluate(const Eigen::VectorXcd& z) const;

  // Substitutes z -> M z (each variable becomes a linear combination).
  // M must be n x n; the result has the same dimension.
  Polynomial compose_linear(const Eigen::MatrixXcd& m) const;

  Polynomial partial_derivative(int axis) const;

  // The degree-k homogeneous part.  Summing over k = 0..degree() recovers
  // the polynomial exactly (selection only, no arithmetic).
  Polynomial homogeneous_part(int k) const;

  // Polynomial with every coefficient conjugated (so q(z) = conj(p(conj z))).
  Polynomial conjugated_coefficients() const;

  // Exact division attempt: returns f/divisor when the remainder of
  // multivariate division is below rel_tol * max_coeff_abs(), otherwise
  // nothing.  Requires matching dimensions and a nonzero divisor.
  std::optional<Polynomial> try_divide(const Polynomial& divisor,
                                       double rel_tol = tol::poly_divide_rel) const;

 private:
  int n_;
  TermMap terms_;
};

Polynomial operator*(Complex scalar, const Polynomial& p);

// Tuple of polynomials sharing one source dimension; the numerator of a
// rational map, or any polynomial map C^n -> C^m.
struct PolyMap {
  int n = 0;
  std::vector<Polynomial> components;

  PolyMap() = default;
  PolyMap(int dimension, std::vector<Polynomial> comps);

  int size() const { return static_cast<int>(components.size()); }
  int degree() const;  // max over components, -1 if all zero/empty
  double max_coeff_abs() const;
  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& z) const;
  PolyMap compose_linear(const Eigen::MatrixXcd& m) const;
};

}  // namespace ballmap
