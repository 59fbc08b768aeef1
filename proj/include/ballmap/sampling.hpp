#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace ballmap {

// Seeded random source; every sampling helper draws through one of these so
// fixed seeds give byte-identical runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return uniform_(gen_); }
  double normal() { return normal_(gen_); }
  std::complex<double> complex_normal() { return {normal(), normal()}; }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Uniform point on the unit sphere in C^n.
Eigen::VectorXcd sphere_point(int n, Rng& rng);

// Random interior point with norm at most max_radius.
Eigen::VectorXcd interior_point(int n, Rng& rng, double max_radius = 0.9);

// Haar-distributed unitary (QR of a complex Gaussian with phase fixing).
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

// m samples from the diagonal torus diag(exp(i t_1), ..., exp(i t_n)).
std::vector<Eigen::MatrixXcd> diagonal_torus_samples(int n, int m, Rng& rng);

}  // namespace ballmap
