#include "ballmap/takagi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ballmap {

// The factorization is found through the real symmetric doubling
//   M = [B  C; C  -B],  A = B + iC,
// whose eigenpairs come in (sigma, [x;y]) / (-sigma, [-y;x]) pairs and
// satisfy A conj(u) = sigma u for u = x + iy.  Eigenvectors for distinct
// positive eigenvalues give orthonormal u directly; the kernel needs a
// symplectic selection because both members of each pair sit at zero.
TakagiFactorization takagi_factor(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || n == 0) throw std::invalid_argument("takagi: matrix must be square");
  const double scale = std::max(a.norm(), 1.0);
  if ((a - a.transpose()).norm() > 1e-8 * scale)
    throw std::invalid_argument("takagi: matrix is not complex symmetric");

  const Eigen::MatrixXcd sym = (a + a.transpose()) / 2.0;
  const Eigen::MatrixXd b = sym.real();
  const Eigen::MatrixXd c = sym.imag();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = b;
  m.topRightCorner(n, n) = c;
  m.bottomLeftCorner(n, n) = c;
  m.bottomRightCorner(n, n) = -b;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("takagi: eigensolver failed");
  const Eigen::VectorXd ev = solver.eigenvalues();
  const double zero_cut = 1e-11 * std::max(ev.cwiseAbs().maxCoeff(), 1.0);

  std::vector<std::pair<double, Eigen::VectorXcd>> pairs;
  std::vector<Eigen::VectorXd> kernel_vectors;
  for (int i = 0; i < 2 * n; ++i) {
    if (ev[i] > zero_cut) {
      const Eigen::VectorXd v = solver.eigenvectors().col(i);
      Eigen::VectorXcd u(n);
      for (int k = 0; k < n; ++k) u[k] = std::complex<double>(v[k], v[n + k]);
      pairs.emplace_back(ev[i], std::move(u));
    } else if (std::abs(ev[i]) <= zero_cut) {
      kernel_vectors.push_back(solver.eigenvectors().col(i));
    }
  }

  // Symplectic Gram-Schmidt inside the kernel: once [x;y] is chosen, its
  // partner [-y;x] must be projected away before choosing the next vector.
  const auto apply_j = [n](const Eigen::VectorXd& v) {
    Eigen::VectorXd out(2 * n);
    out.head(n) = -v.tail(n);
    out.tail(n) = v.head(n);
    return out;
  };
  std::vector<Eigen::VectorXd> chosen;
  for (const auto& cand : kernel_vectors) {
    if (static_cast<int>(pairs.size()) + static_cast<int>(chosen.size()) >= n) break;
    Eigen::VectorXd v = cand;
    for (const auto& prev : chosen) {
      v -= prev.dot(v) * prev;
      const Eigen::VectorXd jprev = apply_j(prev);
      v -= jprev.dot(v) * jprev;
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    chosen.push_back(v / norm);
  }
  for (const auto& v : chosen) {
    Eigen::VectorXcd u(n);
    for (int k = 0; k < n; ++k) u[k] = std::complex<double>(v[k], v[n + k]);
    pairs.emplace_back(0.0, std::move(u));
  }
  if (static_cast<int>(pairs.size()) != n)
    throw std::runtime_error("takagi: failed to assemble a full factor");

  std::sort(pairs.begin(), pairs.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.first != rhs.first) return lhs.first < rhs.first;
    // Deterministic column order inside tied blocks.
    for (int k = 0; k < lhs.second.size(); ++k) {
      const auto &a0 = lhs.second[k], &b0 = rhs.second[k];
      if (a0.real() != b0.real()) return a0.real() < b0.real();
      if (a0.imag() != b0.imag()) return a0.imag() < b0.imag();
    }
    return false;
  });

  TakagiFactorization out;
  out.sigma.resize(n);
  out.u.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.sigma[i] = pairs[i].first;
    out.u.col(i) = pairs[i].second;
  }
  out.residual =
      (sym - out.u * out.sigma.asDiagonal() * out.u.transpose()).norm() / scale;
  return out;
}

}  // namespace ballmap
