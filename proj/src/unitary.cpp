#include "ballmap/unitary.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ballmap {

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const Eigen::MatrixXcd defect =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return defect.norm() <= tol;
}

UnitaryElement::UnitaryElement(Eigen::MatrixXcd u, double tol) : m(std::move(u)) {
  if (!is_unitary(m, tol)) throw std::invalid_argument("matrix is not unitary");
}

std::vector<Eigen::MatrixXcd> sign_diagonal_family(int n) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("sign_diagonal_family supports 1 <= n <= 8");
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(std::size_t(1) << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) u(i, i) = -1.0;
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Eigen::MatrixXcd> signed_permutation_family(int n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("signed_permutation_family supports 1 <= n <= 6");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Eigen::MatrixXcd> out;
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i)
        u(perm[i], i) = (mask & (1u << i)) ? -1.0 : 1.0;
      out.push_back(std::move(u));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace ballmap
