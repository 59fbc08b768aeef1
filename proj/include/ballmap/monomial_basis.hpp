#pragma once

#include <map>
#include <vector>

#include <Eigen/Core>

#include "ballmap/polynomial.hpp"

namespace ballmap {

// All monomials in n variables of total degree <= d, graded-lex ordered.
// Index 0 is always the constant monomial.  For fixed n the basis of degree
// d is a prefix of the basis of degree d' > d, which makes re-embedding a
// coefficient matrix a plain corner copy.
class MonomialBasis {
 public:
  MonomialBasis(int n, int d);

  int dimension() const { return n_; }
  int max_degree() const { return d_; }
  int size() const { return static_cast<int>(monomials_.size()); }

  const Multiindex& at(int i) const { return monomials_[i]; }
  int degree_of(int i) const { return degrees_[i]; }

  // Index of a monomial, or -1 when it is not in the basis.
  int index_of(const Multiindex& e) const;

  // Coefficient vector of p over this basis; throws if deg p exceeds d.
  Eigen::VectorXcd coefficient_vector(const Polynomial& p) const;

  Polynomial polynomial_from(const Eigen::VectorXcd& v,
                             double prune_rel = tol::coeff_prune_rel) const;

  static long long count(int n, int d);  // binomial(n + d, d)

 private:
  int n_;
  int d_;
  std::vector<Multiindex> monomials_;
  std::vector<int> degrees_;
  std::map<Multiindex, int, GradedLexLess> index_;
};

}  // namespace ballmap
