#include "ballmap/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "ballmap/sampling.hpp"

namespace ballmap {

LambdaFunction LambdaFunction::of(const RationalBallMap& f) {
  return LambdaFunction{underlying_form(f), std::max(f.degree(), 0)};
}

double LambdaFunction::evaluate(const Eigen::VectorXcd& z) const {
  const double w = 1.0 - z.squaredNorm();
  if (w <= 0.0) throw std::invalid_argument("Lambda is defined inside the ball only");
  return r.evaluate(z) / std::pow(w, d);
}

Eigen::VectorXd LambdaFunction::log_gradient(const Eigen::VectorXcd& z) const {
  const int n = static_cast<int>(z.size());
  const double w = 1.0 - z.squaredNorm();
  if (w <= 0.0) throw std::invalid_argument("Lambda is defined inside the ball only");
  const double rv = r.evaluate(z);
  if (rv <= 0.0)
    throw std::runtime_error("underlying form not positive at interior point");
  const Eigen::VectorXcd h =
      r.dbar_gradient(z) / rv + (static_cast<double>(d) / w) * z;
  Eigen::VectorXd grad(2 * n);
  for (int j = 0; j < n; ++j) {
    grad[j] = 2.0 * h[j].real();
    grad[n + j] = 2.0 * h[j].imag();
  }
  return grad;
}

namespace {

Eigen::VectorXcd pack_complex(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size()) / 2;
  Eigen::VectorXcd z(n);
  for (int j = 0; j < n; ++j) z[j] = Complex(x[j], x[n + j]);
  return z;
}

Eigen::VectorXd unpack_complex(const Eigen::VectorXcd& z) {
  const int n = static_cast<int>(z.size());
  Eigen::VectorXd x(2 * n);
  for (int j = 0; j < n; ++j) {
    x[j] = z[j].real();
    x[n + j] = z[j].imag();
  }
  return x;
}

// Keep iterates strictly inside the ball; Newton steps near the boundary
// otherwise walk into the pole of the (1 - ||z||^2) factor.
void clamp_inside(Eigen::VectorXd& x, double radius) {
  const double norm = pack_complex(x).norm();
  if (norm > radius) x *= radius / norm;
}

bool newton_from(const LambdaFunction& lambda, Eigen::VectorXd x,
                 int max_iterations, Eigen::VectorXcd& out) {
  const int m = static_cast<int>(x.size());
  const double gtol = 1e-13 * std::max(1.0, lambda.r.max_abs_entry());
  Eigen::VectorXd g = lambda.log_gradient(pack_complex(x));
  for (int it = 0; it < max_iterations; ++it) {
    if (g.norm() <= gtol) {
      out = pack_complex(x);
      return true;
    }
    // Finite-difference Jacobian of the analytic gradient.
    Eigen::MatrixXd jac(m, m);
    const double step = 1e-7 * (1.0 + x.norm());
    for (int k = 0; k < m; ++k) {
      Eigen::VectorXd xp = x;
      xp[k] += step;
      clamp_inside(xp, 0.97);
      jac.col(k) = (lambda.log_gradient(pack_complex(xp)) - g) / (xp[k] - x[k]);
    }
    Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(-g);
    if (!delta.allFinite()) return false;
    double s = 1.0;
    bool moved = false;
    for (int half = 0; half < 12; ++half, s *= 0.5) {
      Eigen::VectorXd xn = x + s * delta;
      clamp_inside(xn, 0.95);
      Eigen::VectorXd gn;
      try {
        gn = lambda.log_gradient(pack_complex(xn));
      } catch (const std::exception&) {
        continue;
      }
      if (gn.norm() < g.norm()) {
        x = std::move(xn);
        g = std::move(gn);
        moved = true;
        break;
      }
    }
    if (!moved) return false;
  }
  if (g.norm() <= gtol) {
    out = pack_complex(x);
    return true;
  }
  return false;
}

}  // namespace

Eigen::VectorXcd lambda_critical_point(const LambdaFunction& lambda,
                                       std::uint64_t seed, int max_iterations) {
  if (lambda.d < 2)
    throw std::invalid_argument(
        "critical point search needs degree >= 2 (lower degrees have no "
        "isolated critical point)");
  const int n = lambda.r.basis().dimension();
  Eigen::VectorXcd found;
  if (newton_from(lambda, Eigen::VectorXd::Zero(2 * n), max_iterations, found))
    return found;
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Eigen::VectorXcd start = interior_point(n, rng, 0.3);
    if (newton_from(lambda, unpack_complex(start), max_iterations, found))
      return found;
  }
  throw std::runtime_error("Newton iteration for the Lambda critical point "
                           "did not converge from any start");
}

QuadraticDiagonalization diagonalize_quadratic(const Polynomial& g) {
  const int n = g.dimension();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Multiindex e(n, 0);
      e[i] += 1;
      e[j] += 1;
      const Complex c = g.coeff(e);
      if (i == j) {
        a(i, i) = c;
      } else {
        a(i, j) = c / 2.0;
        a(j, i) = c / 2.0;
      }
    }
  }
  TakagiFactorization tf = takagi_factor(a);
  QuadraticDiagonalization out;
  out.sigma = tf.sigma;
  out.w = tf.u.conjugate();
  out.residual = tf.residual;
  return out;
}

NormalFormReport normal_form_report(const RationalBallMap& f, double rel_tol) {
  const int n = f.source_dimension();
  const int d = f.degree();
  const double scale = 1.0 + f.max_coeff_abs();
  NormalFormReport rep;

  rep.numerator_at_zero = f.numerator().evaluate(Eigen::VectorXcd::Zero(n)).norm();

  const Polynomial& g = f.denominator();
  rep.linear_term = g.homogeneous_part(1).max_coeff_abs();

  rep.sigma = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    Multiindex e(n, 0);
    e[i] = 2;
    const Complex c = g.coeff(e);
    rep.sigma[i] = c.real();
    rep.quadratic_imaginary = std::max(rep.quadratic_imaginary, std::abs(c.imag()));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Multiindex e(n, 0);
      e[i] = 1;
      e[j] = 1;
      rep.quadratic_off_diagonal =
          std::max(rep.quadratic_off_diagonal, std::abs(g.coeff(e)));
    }
  }
  rep.sigma_order_defect = std::max(0.0, -rep.sigma[0]);
  for (int i = 0; i + 1 < n; ++i)
    rep.sigma_order_defect =
        std::max(rep.sigma_order_defect, rep.sigma[i] - rep.sigma[i + 1]);

  rep.denominator_degree_ok = d >= 1 && g.degree() <= d - 1;

  const double cut = rel_tol * scale;
  rep.is_normal = rep.numerator_at_zero <= cut && rep.linear_term <= cut &&
                  rep.quadratic_off_diagonal <= cut &&
                  rep.quadratic_imaginary <= cut &&
                  rep.sigma_order_defect <= cut && rep.denominator_degree_ok;
  return rep;
}

namespace {

// Sets a handful of coefficients known to vanish in exact arithmetic to
// exact zero, after checking they are within noise.  Keeps downstream
// predicates (membership tests, serialization) free of 1e-16 clutter.
Polynomial drop_small_parts(const Polynomial& q, int max_part_degree,
                            double cut) {
  Polynomial out = q;
  for (int k = 0; k <= max_part_degree; ++k) {
    const Polynomial part = q.homogeneous_part(k);
    if (part.is_zero()) continue;
    if (part.max_coeff_abs() <= cut) out -= part;
  }
  return out;
}

}  // namespace

NormalizationCertificate normalize(const RationalBallMap& f, std::uint64_t seed) {
  const int n = f.source_dimension();
  const int d = f.degree();
  if (d < 2)
    throw std::invalid_argument("normalization needs a map of degree >= 2");

  const LambdaFunction lambda = LambdaFunction::of(f);
  const Eigen::VectorXcd alpha = lambda_critical_point(lambda, seed);

  const RationalBallMap centered =
      compose_source_automorphism(f, BallAutomorphism::translation(alpha));

  const Eigen::VectorXcd beta =
      centered.numerator().evaluate(Eigen::VectorXcd::Zero(n));
  if (beta.squaredNorm() >= 1.0)
    throw std::runtime_error("map sends the Lambda critical point outside "
                             "the closed target ball");

  RationalBallMap recentered = compose_target_automorphism(
      centered, BallAutomorphism::translation(beta));

  // The numerator must vanish at the origin by construction, and recentering
  // at the critical point kills the linear part of the denominator; both can
  // carry roundoff, which we check and then remove exactly.
  const double scale = 1.0 + recentered.max_coeff_abs();
  const double cut = tol::linear_term_rel * scale;
  const double linear_residual =
      recentered.denominator().homogeneous_part(1).max_coeff_abs();
  const double p0_residual =
      recentered.numerator().evaluate(Eigen::VectorXcd::Zero(n)).norm();
  if (linear_residual > cut)
    throw std::runtime_error("denominator kept a linear term after centering "
                             "at the critical point");
  if (p0_residual > cut)
    throw std::runtime_error("numerator failed to vanish at the recentered "
                             "origin");
  {
    std::vector<Polynomial> cleaned;
    cleaned.reserve(recentered.target_dimension());
    for (const auto& comp : recentered.numerator().components)
      cleaned.push_back(drop_small_parts(comp, 0, cut));
    Polynomial den = drop_small_parts(recentered.denominator(), 1, cut);
    recentered = RationalBallMap(PolyMap(n, std::move(cleaned)), std::move(den));
  }

  const QuadraticDiagonalization quad =
      diagonalize_quadratic(recentered.denominator());
  if (quad.residual > tol::takagi_rel)
    throw std::runtime_error("symmetric factorization of the quadratic "
                             "denominator part did not converge");

  RationalBallMap normalized = compose_source_unitary(recentered, quad.w);
  {
    // The rotation leaves tiny off-diagonal quadratic residue; verify and
    // replace the quadratic part by its exact diagonal.
    Polynomial g = normalized.denominator();
    Polynomial g2 = g.homogeneous_part(2);
    Polynomial diagonal(n);
    for (int i = 0; i < n; ++i) {
      Multiindex e(n, 0);
      e[i] = 2;
      diagonal.add_term(e, quad.sigma[i]);
    }
    if ((g2 - diagonal).max_coeff_abs() > cut)
      throw std::runtime_error("quadratic part of the denominator is not "
                               "diagonal after the computed rotation");
    g -= g2;
    g += diagonal;
    g = drop_small_parts(g, 1, cut);
    std::vector<Polynomial> comps = normalized.numerator().components;
    for (auto& comp : comps) comp = drop_small_parts(comp, 0, cut);
    normalized = RationalBallMap(PolyMap(n, std::move(comps)), std::move(g));
  }

  NormalizationCertificate cert{std::move(normalized),
                                alpha,
                                beta,
                                quad.w,
                                quad.sigma,
                                0.0,
                                linear_residual,
                                quad.residual};
  cert.gradient_at_zero = LambdaFunction::of(cert.normalized)
                              .log_gradient(Eigen::VectorXcd::Zero(n))
                              .norm();
  return cert;
}

}  // namespace ballmap
