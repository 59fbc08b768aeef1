#include "ballmap/ball_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "ballmap/sampling.hpp"
#include "ballmap/unitary.hpp"

namespace ballmap {

RationalBallMap::RationalBallMap(PolyMap numerator, Polynomial denominator)
    : p_(std::move(numerator)), g_(std::move(denominator)) {
  if (p_.size() < 1) throw std::invalid_argument("map needs at least one component");
  if (g_.dimension() != p_.n)
    throw std::invalid_argument("numerator/denominator dimension mismatch");
  const Complex g0 = g_.coeff(Multiindex(p_.n, 0));
  if (std::abs(g0) < 1e-14)
    throw std::invalid_argument("denominator vanishes at the origin");
  if (g0 != Complex(1, 0)) {
    g_ = g_ * (Complex(1, 0) / g0);
    for (auto& comp : p_.components) comp = comp * (Complex(1, 0) / g0);
    // Complex division leaves g(0)/g(0) a rounding error away from 1; the
    // class invariant is exact, so pin the constant term.
    const Multiindex zero(p_.n, 0);
    g_.add_term(zero, Complex(1, 0) - g_.coeff(zero));
  }
}

int RationalBallMap::degree() const { return std::max(p_.degree(), g_.degree()); }

double RationalBallMap::max_coeff_abs() const {
  return std::max(p_.max_coeff_abs(), g_.max_coeff_abs());
}

Eigen::VectorXcd RationalBallMap::evaluate(const Eigen::VectorXcd& z) const {
  const Complex gz = g_.evaluate(z);
  if (std::abs(gz) < 1e-14) throw std::runtime_error("evaluation at a pole");
  return p_.evaluate(z) / gz;
}

BallAutomorphism::BallAutomorphism(Eigen::VectorXcd alpha_in, Eigen::MatrixXcd u_in)
    : alpha(std::move(alpha_in)), u(std::move(u_in)) {
  const double norm2 = alpha.squaredNorm();
  if (norm2 >= 1.0)
    throw std::invalid_argument("automorphism center must be inside the ball");
  if (u.rows() != alpha.size() || !is_unitary(u))
    throw std::invalid_argument("automorphism needs a unitary of matching size");
  t = std::sqrt(1.0 - norm2);
}

BallAutomorphism BallAutomorphism::translation(Eigen::VectorXcd alpha_in) {
  const int n = static_cast<int>(alpha_in.size());
  return BallAutomorphism(std::move(alpha_in), Eigen::MatrixXcd::Identity(n, n));
}

Eigen::VectorXcd BallAutomorphism::apply(const Eigen::VectorXcd& z) const {
  const Complex ip = alpha.dot(z);  // <z, alpha>
  const Eigen::VectorXcd lz = (ip / (t + 1.0)) * alpha + t * z;
  const Complex den = 1.0 - ip;
  if (std::abs(den) < 1e-14) throw std::runtime_error("automorphism evaluated at a pole");
  return u * ((alpha - lz) / den);
}

PolyMap BallAutomorphism::numerator_polynomials() const {
  const int n = dimension();
  std::vector<Polynomial> raw;
  raw.reserve(n);
  for (int i = 0; i < n; ++i) {
    // alpha_i - (<z, alpha>/(t+1)) alpha_i - t z_i
    Polynomial a = Polynomial::constant(n, alpha[i]);
    for (int j = 0; j < n; ++j) {
      Multiindex e(n, 0);
      e[j] = 1;
      Complex c = -std::conj(alpha[j]) * alpha[i] / (t + 1.0);
      if (j == i) c -= t;
      a.add_term(e, c);
    }
    a.prune();
    raw.push_back(std::move(a));
  }
  std::vector<Polynomial> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Polynomial row(n);
    for (int j = 0; j < n; ++j)
      if (u(i, j) != Complex(0, 0)) row += u(i, j) * raw[j];
    out.push_back(std::move(row));
  }
  return PolyMap(n, std::move(out));
}

Polynomial BallAutomorphism::denominator_polynomial() const {
  const int n = dimension();
  Polynomial d = Polynomial::constant(n, 1.0);
  for (int j = 0; j < n; ++j) {
    Multiindex e(n, 0);
    e[j] = 1;
    d.add_term(e, -std::conj(alpha[j]));
  }
  d.prune();
  return d;
}

RealForm underlying_form(const RationalBallMap& f) {
  PolyMap den_tuple(f.source_dimension(), {f.denominator()});
  RealForm r = RealForm::from_squares(den_tuple, f.numerator(),
                                      std::max(f.degree(), 0));
  const double r0 = r.value_at_zero();
  if (r0 < 1e-12)
    throw std::runtime_error("map does not send the origin inside the ball");
  if (r0 != 1.0) r = r.scaled(1.0 / r0);
  return r;
}

PropernessReport is_proper(const RationalBallMap& f, int samples,
                           std::uint64_t seed, double rel_tol) {
  const RealForm r = underlying_form(f);
  const int n = f.source_dimension();
  PropernessReport report;
  report.samples = samples;

  // How many times (1 - ||z||^2) divides the underlying form.
  {
    RealForm current = r;
    const RealForm sphere = RealForm::constant(n, 1.0) - RealForm::norm_power(n, 1);
    while (true) {
      auto q = current.divide_by_sphere();
      if (!q) {
        if (report.sphere_powers == 0) {
          const double scale = current.frobenius_norm();
          report.divisibility_residual =
              scale > 0 ? 1.0 : 0.0;  // no division possible at all
        }
        break;
      }
      const double scale = current.frobenius_norm();
      report.divisibility_residual =
          (current - sphere * (*q)).frobenius_norm() / (scale > 0 ? scale : 1.0);
      current = q->compacted();
      ++report.sphere_powers;
    }
  }

  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k)
    worst = std::max(worst, std::abs(r.evaluate(sphere_point(n, rng))));
  report.sphere_residual = worst;

  double interior = std::numeric_limits<double>::infinity();
  const int interior_samples = std::max(samples / 5, 100);
  for (int k = 0; k < interior_samples; ++k)
    interior = std::min(interior, r.evaluate(interior_point(n, rng)));
  report.interior_min = interior;

  const double cut = rel_tol * (1.0 + f.max_coeff_abs());
  report.proper = report.sphere_powers >= 1 && report.sphere_residual <= cut &&
                  report.interior_min > -cut;
  return report;
}

namespace {

// Coefficients of q restricted to the line z = t * dir, as a polynomial in t.
Eigen::VectorXcd line_restriction(const Polynomial& q, const Eigen::VectorXcd& dir) {
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(std::max(q.degree(), 0) + 1);
  for (const auto& [e, c] : q.terms()) {
    Complex v = c;
    for (int i = 0; i < q.dimension(); ++i)
      for (int k = 0; k < e[i]; ++k) v *= dir[i];
    coeffs[total_degree(e)] += v;
  }
  return coeffs;
}

std::vector<Complex> univariate_roots(Eigen::VectorXcd coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  const double top = coeffs.cwiseAbs().maxCoeff();
  while (deg > 0 && std::abs(coeffs[deg]) < 1e-13 * top) --deg;
  if (deg < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

}  // namespace

LowestTerms lowest_terms_check(const RationalBallMap& f, int lines,
                               std::uint64_t seed) {
  const int n = f.source_dimension();
  const int d = f.degree();
  const RealForm r = underlying_form(f);

  // Structural certificate: the top bidegree block equal to a negative
  // multiple of ||z||^(2d) forces the form to diverge to -infinity in every
  // direction, which rules out nonconstant common factors when n >= 2
  // (their zero sets would reach arbitrarily far out).
  if (n >= 2 && d >= 1) {
    const RealForm top = r.bidegree_part(d, d);
    const RealForm k = RealForm::norm_power(n, d).embedded(r.basis_degree());
    const double kk = k.frobenius_norm() * k.frobenius_norm();
    const Complex ip = (k.matrix().conjugate().cwiseProduct(top.matrix())).sum();
    const double c = -ip.real() / kk;
    const double mismatch = (top + k.scaled(c)).frobenius_norm();
    if (c > 0 && mismatch <= 1e-9 * std::max(top.frobenius_norm(), 1e-30))
      return LowestTerms::certified;
  }

  // A common factor of all components and the denominator would leave a
  // trace on random complex lines: some root of g on the line where every
  // numerator component vanishes too.
  Rng rng(seed);
  const double scale = 1.0 + f.max_coeff_abs();
  bool common_zero = false;
  for (int line = 0; line < lines && !common_zero; ++line) {
    const Eigen::VectorXcd dir = sphere_point(n, rng);
    const auto roots = univariate_roots(line_restriction(f.denominator(), dir));
    for (const Complex& root : roots) {
      if (std::abs(root) > 1e6) continue;
      const Eigen::VectorXcd z = root * dir;
      double biggest = 0.0;
      for (const auto& comp : f.numerator().components)
        biggest = std::max(biggest, std::abs(comp.evaluate(z)));
      const double point_scale =
          scale * std::pow(1.0 + std::abs(root), std::max(d, 1));
      if (biggest <= 1e-8 * point_scale) {
        common_zero = true;
        break;
      }
    }
  }
  return common_zero ? LowestTerms::failed : LowestTerms::likely;
}

namespace {

// q(phi(z)) * D(z)^d for the affine tuple A/D, via cached powers.
Polynomial substitute_homogenized(const Polynomial& q, const PolyMap& a,
                                  const Polynomial& d_poly, int d,
                                  std::vector<std::vector<Polynomial>>& a_pows,
                                  std::vector<Polynomial>& d_pows) {
  const int n = q.dimension();
  auto a_power = [&](int i, int k) -> const Polynomial& {
    while (static_cast<int>(a_pows[i].size()) <= k)
      a_pows[i].push_back(a_pows[i].back() * a.components[i]);
    return a_pows[i][k];
  };
  auto d_power = [&](int k) -> const Polynomial& {
    while (static_cast<int>(d_pows.size()) <= k)
      d_pows.push_back(d_pows.back() * d_poly);
    return d_pows[k];
  };
  Polynomial out(n);
  for (const auto& [e, c] : q.terms()) {
    Polynomial term = Polynomial::constant(n, c) * d_power(d - total_degree(e));
    for (int i = 0; i < n; ++i)
      if (e[i] > 0) term = term * a_power(i, e[i]);
    out += term;
  }
  out.prune();
  return out;
}

}  // namespace

RationalBallMap compose_source_automorphism(const RationalBallMap& f,
                                            const BallAutomorphism& phi) {
  const int n = f.source_dimension();
  if (phi.dimension() != n)
    throw std::invalid_argument("automorphism dimension mismatch");
  const int d = f.degree();
  const PolyMap a = phi.numerator_polynomials();
  const Polynomial den_line = phi.denominator_polynomial();

  std::vector<std::vector<Polynomial>> a_pows(n);
  for (int i = 0; i < n; ++i) a_pows[i].push_back(Polynomial::constant(n, 1.0));
  std::vector<Polynomial> d_pows{Polynomial::constant(n, 1.0)};

  std::vector<Polynomial> nums;
  nums.reserve(f.target_dimension());
  for (const auto& comp : f.numerator().components)
    nums.push_back(substitute_homogenized(comp, a, den_line, d, a_pows, d_pows));
  Polynomial den = substitute_homogenized(f.denominator(), a, den_line, d,
                                          a_pows, d_pows);

  // Strip the common power of (1 - <z, alpha>) shared by every component.
  // At alpha = 0 the line is the constant 1 and there is nothing to strip.
  for (int strip = 0; den_line.degree() >= 1 && strip < d; ++strip) {
    auto den_q = den.try_divide(den_line);
    if (!den_q) break;
    std::vector<Polynomial> nums_q;
    nums_q.reserve(nums.size());
    bool all = true;
    for (const auto& q : nums) {
      auto quot = q.try_divide(den_line);
      if (!quot) {
        all = false;
        break;
      }
      nums_q.push_back(std::move(*quot));
    }
    if (!all) break;
    den = std::move(*den_q);
    nums = std::move(nums_q);
  }
  return RationalBallMap(PolyMap(n, std::move(nums)), std::move(den));
}

RationalBallMap compose_source_unitary(const RationalBallMap& f,
                                       const Eigen::MatrixXcd& u) {
  if (!is_unitary(u) || u.rows() != f.source_dimension())
    throw std::invalid_argument("compose_source_unitary: matrix must be unitary n x n");
  return RationalBallMap(f.numerator().compose_linear(u),
                         f.denominator().compose_linear(u));
}

RationalBallMap compose_target_automorphism(const RationalBallMap& f,
                                            const BallAutomorphism& tau) {
  const int big_n = f.target_dimension();
  if (tau.dimension() != big_n)
    throw std::invalid_argument("target automorphism dimension mismatch");
  const int n = f.source_dimension();
  const auto& beta = tau.alpha;

  // <p, beta> as a polynomial.
  Polynomial ip(n);
  for (int j = 0; j < big_n; ++j)
    ip += f.numerator().components[j] * std::conj(beta[j]);

  std::vector<Polynomial> raw;
  raw.reserve(big_n);
  for (int i = 0; i < big_n; ++i) {
    // beta_i g - [(ip/(t+1)) beta_i + t p_i]
    Polynomial num = beta[i] * f.denominator() - (beta[i] / (tau.t + 1.0)) * ip -
                     Complex(tau.t, 0) * f.numerator().components[i];
    raw.push_back(std::move(num));
  }
  std::vector<Polynomial> nums;
  nums.reserve(big_n);
  for (int i = 0; i < big_n; ++i) {
    Polynomial row(n);
    for (int j = 0; j < big_n; ++j)
      if (tau.u(i, j) != Complex(0, 0)) row += tau.u(i, j) * raw[j];
    nums.push_back(std::move(row));
  }
  Polynomial den = f.denominator() - ip;
  return RationalBallMap(PolyMap(n, std::move(nums)), std::move(den));
}

RationalBallMap compose_target_unitary(const RationalBallMap& f,
                                       const Eigen::MatrixXcd& v) {
  const int big_n = f.target_dimension();
  if (!is_unitary(v) || v.rows() != big_n)
    throw std::invalid_argument("compose_target_unitary: matrix must be unitary N x N");
  const int n = f.source_dimension();
  std::vector<Polynomial> nums;
  nums.reserve(big_n);
  for (int i = 0; i < big_n; ++i) {
    Polynomial row(n);
    for (int j = 0; j < big_n; ++j)
      if (v(i, j) != Complex(0, 0)) row += v(i, j) * f.numerator().components[j];
    nums.push_back(std::move(row));
  }
  return RationalBallMap(PolyMap(n, std::move(nums)), f.denominator());
}

RationalBallMap tensor_components(const RationalBallMap& f,
                                  const std::vector<int>& indices,
                                  const PolyMap& h) {
  const int n = f.source_dimension();
  if (h.n != n) throw std::invalid_argument("tensor factor dimension mismatch");
  if (h.size() < 1) throw std::invalid_argument("tensor factor is empty");
  std::vector<bool> selected(f.target_dimension(), false);
  for (int idx : indices) {
    if (idx < 0 || idx >= f.target_dimension())
      throw std::invalid_argument("tensor component index out of range");
    if (selected[idx]) throw std::invalid_argument("duplicate tensor component index");
    selected[idx] = true;
  }

  // h must satisfy ||h(z)||^2 = ||z||^(2k); otherwise tensoring would break
  // the vanishing of the underlying form on the sphere.
  const RealForm hh = RealForm::from_squares(h, PolyMap(n, {}));
  const int k = hh.bidegree().first;
  const RealForm diff = hh - RealForm::norm_power(n, k);
  if (diff.frobenius_norm() > 1e-9 * std::max(hh.frobenius_norm(), 1e-30))
    throw std::invalid_argument("tensor factor does not square to a power of ||z||^2");

  std::vector<Polynomial> nums;
  for (int i = 0; i < f.target_dimension(); ++i) {
    if (!selected[i]) {
      nums.push_back(f.numerator().components[i]);
      continue;
    }
    for (const auto& factor : h.components)
      nums.push_back(f.numerator().components[i] * factor);
  }
  return RationalBallMap(PolyMap(n, std::move(nums)), f.denominator());
}

}  // namespace ballmap
