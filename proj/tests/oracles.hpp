#pragma once

// Self-contained reference implementations used to cross-check the library.
// Everything in here is deliberately written from scratch on plain
// std::vector containers (no Eigen, no library headers) so that a bug in the
// implementation under test cannot hide inside a shared dependency.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

using Cplx = std::complex<double>;
using CMatrix = std::vector<std::vector<Cplx>>;

inline double frobenius(const CMatrix& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (const auto& v : row) s += std::norm(v);
  return std::sqrt(s);
}

inline double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += std::norm(a[i][j]);
  return std::sqrt(s);
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.  Each sweep
// zeroes every off-diagonal entry once; quadratic convergence kicks in after
// two or three sweeps for the matrix sizes we care about (< 200).
// Returns eigenvalues sorted ascending.
inline std::vector<double> jacobi_eigenvalues(CMatrix a, int max_sweeps = 100) {
  const std::size_t m = a.size();
  for (const auto& row : a)
    if (row.size() != m) throw std::invalid_argument("jacobi: matrix not square");

  const double scale = frobenius(a);
  const double stop = 1e-13 * (scale > 0 ? scale : 1.0);

  for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const Cplx apq = a[p][q];
        const double mag = std::abs(apq);
        if (mag <= stop / (double(m) * double(m))) continue;

        // Phase factor turning the 2x2 pivot block into a real symmetric one,
        // then a classical Jacobi angle for that block.
        const Cplx phase = apq / mag;
        const double app = a[p][p].real();
        const double aqq = a[q][q].real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Column rotation G: (p,q) block [[c, s*phase], [-s*conj(phase), c]]
        // applied as A <- G^H A G.
        for (std::size_t k = 0; k < m; ++k) {
          const Cplx akp = a[k][p];
          const Cplx akq = a[k][q];
          a[k][p] = c * akp - s * std::conj(phase) * akq;
          a[k][q] = s * phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const Cplx apk = a[p][k];
          const Cplx aqk = a[q][k];
          a[p][k] = c * apk - s * phase * aqk;
          a[q][k] = s * std::conj(phase) * apk + c * aqk;
        }
        // Clean up what should now be exact zeros / reals.
        a[p][q] = Cplx(0, 0);
        a[q][p] = Cplx(0, 0);
        a[p][p] = Cplx(a[p][p].real(), 0);
        a[q][q] = Cplx(a[q][q].real(), 0);
      }
    }
  }

  std::vector<double> ev(m);
  for (std::size_t i = 0; i < m; ++i) ev[i] = a[i][i].real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

struct Inertia {
  int positives = 0;
  int negatives = 0;
  int rank() const { return positives + negatives; }
};

inline Inertia jacobi_inertia(const CMatrix& a, double rel_tol = 1e-9) {
  const std::vector<double> ev = jacobi_eigenvalues(a);
  double top = 0.0;
  for (double v : ev) top = std::max(top, std::abs(v));
  const double cut = rel_tol * (top > 0 ? top : 1.0);
  Inertia sig;
  for (double v : ev) {
    if (v > cut) ++sig.positives;
    else if (v < -cut) ++sig.negatives;
  }
  return sig;
}

// Plain term-by-term evaluation of a sparse polynomial given as parallel
// arrays of exponent rows and coefficients.  Powers are computed by repeated
// multiplication; the sum is accumulated in long double.
inline Cplx evaluate_terms(const std::vector<std::vector<int>>& exponents,
                           const std::vector<Cplx>& coeffs,
                           const std::vector<Cplx>& z) {
  if (exponents.size() != coeffs.size())
    throw std::invalid_argument("evaluate_terms: size mismatch");
  std::complex<long double> acc(0, 0);
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    std::complex<long double> term(coeffs[t].real(), coeffs[t].imag());
    for (std::size_t i = 0; i < exponents[t].size(); ++i) {
      const std::complex<long double> zi(z[i].real(), z[i].imag());
      for (int k = 0; k < exponents[t][i]; ++k) term *= zi;
    }
    acc += term;
  }
  return Cplx(double(acc.real()), double(acc.imag()));
}

}  // namespace oracle
