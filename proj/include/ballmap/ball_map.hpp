#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "ballmap/real_form.hpp"

namespace ballmap {

// Rational map p/g from the unit ball of C^n toward C^N, kept with the
// normalization g(0) = 1 (construction rescales p and g together).
class RationalBallMap {
 public:
  RationalBallMap(PolyMap numerator, Polynomial denominator);

  int source_dimension() const { return p_.n; }
  int target_dimension() const { return p_.size(); }
  int degree() const;

  const PolyMap& numerator() const { return p_; }
  const Polynomial& denominator() const { return g_; }
  double max_coeff_abs() const;

  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& z) const;

 private:
  PolyMap p_;
  Polynomial g_;
};

// Automorphism z -> U phi_alpha(z) of the unit ball, where
//   phi_alpha(z) = (alpha - L_alpha z) / (1 - <z, alpha>),
//   L_alpha z = (<z, alpha>/(t + 1)) alpha + t z,  t = sqrt(1 - ||alpha||^2).
// phi_alpha swaps alpha and the origin and is an involution.
struct BallAutomorphism {
  Eigen::VectorXcd alpha;
  Eigen::MatrixXcd u;
  double t;

  BallAutomorphism(Eigen::VectorXcd alpha_in, Eigen::MatrixXcd u_in);
  static BallAutomorphism translation(Eigen::VectorXcd alpha_in);

  int dimension() const { return static_cast<int>(alpha.size()); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& z) const;

  // phi_alpha as a tuple of affine numerators over one affine denominator
  // (the U factor applied to the numerators).
  PolyMap numerator_polynomials() const;
  Polynomial denominator_polynomial() const;  // 1 - <z, alpha>
};

struct PropernessReport {
  bool proper = false;
  double sphere_residual = 0.0;     // max |r| over sphere samples
  double divisibility_residual = 0.0;
  double interior_min = 0.0;        // min r over interior samples
  int sphere_powers = 0;            // how many times (1 - ||z||^2) divides r
  int samples = 0;
};

enum class LowestTerms { certified, likely, failed };

// |g|^2 - ||p||^2 rescaled so the value at the origin is 1.
RealForm underlying_form(const RationalBallMap& f);

PropernessReport is_proper(const RationalBallMap& f, int samples = 500,
                           std::uint64_t seed = 12345,
                           double rel_tol = tol::sphere_rel);

// Certified: the top bidegree part of the underlying form is a negative
// multiple of ||z||^(2d) (structural, n >= 2 only).  Likely: no common zero
// of numerator and denominator detected on random complex lines.  Failed: a
// common zero was found.
LowestTerms lowest_terms_check(const RationalBallMap& f, int lines = 20,
                               std::uint64_t seed = 12345);

// f compose (U phi_alpha): substitutes the automorphism, clears the induced
// power of (1 - <z, alpha>) shared by numerator and denominator, and
// restores g(0) = 1.
RationalBallMap compose_source_automorphism(const RationalBallMap& f,
                                            const BallAutomorphism& phi);

RationalBallMap compose_source_unitary(const RationalBallMap& f,
                                       const Eigen::MatrixXcd& u);

// (V phi_beta) compose f: numerator V(beta g - L_beta p), denominator
// g - <p, beta>, renormalized so the denominator is 1 at the origin.
RationalBallMap compose_target_automorphism(const RationalBallMap& f,
                                            const BallAutomorphism& tau);

RationalBallMap compose_target_unitary(const RationalBallMap& f,
                                       const Eigen::MatrixXcd& v);

// Replaces each selected numerator component q by the tuple (q h_1, ..., q h_m)
// where h satisfies ||h(z)||^2 = ||z||^(2k) identically (checked); the other
// components and the denominator are kept.
RationalBallMap tensor_components(const RationalBallMap& f,
                                  const std::vector<int>& indices,
                                  const PolyMap& h);

}  // namespace ballmap
