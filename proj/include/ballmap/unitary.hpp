#pragma once

#include <vector>

#include <Eigen/Core>

#include "ballmap/config.hpp"

namespace ballmap {

bool is_unitary(const Eigen::MatrixXcd& u, double tol = tol::unitary_defect);

// A validated unitary matrix; construction throws if ||U*U - I|| exceeds tol.
struct UnitaryElement {
  Eigen::MatrixXcd m;
  explicit UnitaryElement(Eigen::MatrixXcd u, double tol = tol::unitary_defect);
  int dimension() const { return static_cast<int>(m.rows()); }
};

// The 2^n diagonal matrices with +-1 entries.  Throws beyond n = 8.
std::vector<Eigen::MatrixXcd> sign_diagonal_family(int n);

// The 2^n * n! signed permutation matrices.  Throws beyond n = 6.
std::vector<Eigen::MatrixXcd> signed_permutation_family(int n);

}  // namespace ballmap
