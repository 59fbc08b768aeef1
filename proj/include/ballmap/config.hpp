#pragma once

// Default numerical tolerances.  Most library entry points take an explicit
// tolerance argument defaulting to one of these, so callers can tighten or
// relax individual checks without recompiling.

namespace ballmap::tol {

// Coefficients below coeff_prune_rel * (largest coefficient modulus) are
// dropped after polynomial arithmetic.
inline constexpr double coeff_prune_rel = 1e-12;

// Allowed Hermitian defect ||M - M^H|| relative to ||M|| before a coefficient
// matrix is considered corrupted rather than merely noisy.
inline constexpr double hermitian_rel = 1e-10;

// Eigenvalues below eig_rel * max|eigenvalue| are treated as zero when
// computing signatures and square decompositions.
inline constexpr double eig_rel = 1e-9;

// Properness: max |r| over sphere samples, relative to coefficient scale.
inline constexpr double sphere_rel = 1e-9;

// Residual accepted when dividing a form by (1 - ||z||^2), relative to ||r||.
inline constexpr double divide_rel = 1e-9;

// Group membership: normalized defect below this means "member".
inline constexpr double membership = 1e-9;

// ||U*U - I|| accepted when validating a unitary matrix.
inline constexpr double unitary_defect = 1e-10;

// Residual linear term allowed in a denominator after normalization.
inline constexpr double linear_term_rel = 1e-8;

// Reconstruction residual for the symmetric factorization of a quadratic form.
inline constexpr double takagi_rel = 1e-10;

// Relative remainder below which exact polynomial division is accepted.
inline constexpr double poly_divide_rel = 1e-10;

}  // namespace ballmap::tol
