#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <stdexcept>

#include "ballmap/sampling.hpp"
#include "ballmap/takagi.hpp"

using namespace ballmap;

namespace {

double reconstruction_error(const Eigen::MatrixXcd& a,
                            const TakagiFactorization& t) {
  const Eigen::MatrixXcd rebuilt =
      t.u * t.sigma.asDiagonal() * t.u.transpose();
  return (rebuilt - a).norm() / std::max(a.norm(), 1.0);
}

Eigen::MatrixXcd random_symmetric(int n, Rng& rng) {
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return (m + m.transpose()) / 2.0;
}

}  // namespace

TEST_CASE("off-diagonal coupling splits into equal singular values") {
  Eigen::MatrixXcd a(2, 2);
  a << 0.0, 0.5, 0.5, 0.0;
  const TakagiFactorization t = takagi_factor(a);
  CHECK(t.sigma[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.sigma[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(reconstruction_error(a, t) < 1e-12);
}

TEST_CASE("random symmetric matrices factor exactly") {
  Rng rng(42);
  for (int n = 1; n <= 5; ++n) {
    for (int round = 0; round < 6; ++round) {
      const Eigen::MatrixXcd a = random_symmetric(n, rng);
      const TakagiFactorization t = takagi_factor(a);

      CHECK(reconstruction_error(a, t) < 1e-10);
      CHECK(t.residual < 1e-10);

      // U unitary.
      const Eigen::MatrixXcd gram = t.u.adjoint() * t.u;
      CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-10);

      // sigma ascending and nonnegative, equal to the singular values.
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
      Eigen::VectorXd sv = svd.singularValues();
      std::sort(sv.data(), sv.data() + n);
      for (int i = 0; i < n; ++i) {
        CHECK(t.sigma[i] >= -1e-14);
        CHECK(t.sigma[i] == doctest::Approx(sv[i]).epsilon(1e-9));
        if (i > 0) CHECK(t.sigma[i] >= t.sigma[i - 1] - 1e-12);
      }
    }
  }
}

TEST_CASE("repeated singular values still reconstruct") {
  const Eigen::MatrixXcd a =
      Eigen::MatrixXcd::Identity(3, 3) * std::complex<double>(0, 1);
  const TakagiFactorization t = takagi_factor(a);
  for (int i = 0; i < 3; ++i)
    CHECK(t.sigma[i] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reconstruction_error(a, t) < 1e-12);
}

TEST_CASE("zero and rank-one matrices") {
  const TakagiFactorization z = takagi_factor(Eigen::MatrixXcd::Zero(3, 3));
  CHECK(z.sigma.norm() == 0.0);
  CHECK(reconstruction_error(Eigen::MatrixXcd::Zero(3, 3), z) == 0.0);

  Rng rng(7);
  Eigen::VectorXcd v(3);
  for (int i = 0; i < 3; ++i) v[i] = rng.complex_normal();
  const Eigen::MatrixXcd a = v * v.transpose();
  const TakagiFactorization t = takagi_factor(a);
  CHECK(t.sigma[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(t.sigma[1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(t.sigma[2] == doctest::Approx(v.squaredNorm()).epsilon(1e-9));
  CHECK(reconstruction_error(a, t) < 1e-10);
}

TEST_CASE("non-symmetric input is rejected") {
  Eigen::MatrixXcd a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  CHECK_THROWS_AS(takagi_factor(a), std::invalid_argument);
}
