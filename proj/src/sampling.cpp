#include "ballmap/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace ballmap {

Eigen::VectorXcd sphere_point(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sphere_point: n must be >= 1");
  Eigen::VectorXcd z(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) z[i] = rng.complex_normal();
    norm2 = z.squaredNorm();
  } while (norm2 < 1e-12);
  return z / std::sqrt(norm2);
}

Eigen::VectorXcd interior_point(int n, Rng& rng, double max_radius) {
  // Radius from the uniform-in-ball law in real dimension 2n.
  const double r = max_radius * std::pow(rng.uniform(), 1.0 / (2.0 * n));
  return r * sphere_point(n, rng);
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n must be >= 1");
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : 1.0;
  }
  return q;
}

std::vector<Eigen::MatrixXcd> diagonal_torus_samples(int n, int m, Rng& rng) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(m);
  for (int k = 0; k < m; ++k) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      u(i, i) = std::polar(1.0, theta);
    }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace ballmap
