#include "ballmap/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "ballmap/sampling.hpp"

namespace ballmap {

namespace {

// Smallest and largest eigenvalue of the (symmetrized) coefficient matrix.
std::pair<double, double> eigenvalue_range(const RealForm& form) {
  RealForm work = form;
  work.symmetrize();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(work.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue computation failed");
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

bool positive_semidefinite(const RealForm& form) {
  const auto [lo, hi] = eigenvalue_range(form);
  return lo >= -tol::eig_rel * std::max(std::abs(hi), 1.0);
}

double sup_on_sphere(const Polynomial& q, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double sup = 0.0;
  for (int k = 0; k < samples; ++k)
    sup = std::max(sup, std::abs(q.evaluate(sphere_point(q.dimension(), rng))));
  return sup;
}

void attach_certificates(ConstructionResult& result) {
  result.properness = is_proper(result.map);
  result.lowest_terms = lowest_terms_check(result.map);
}

}  // namespace

ConstructionResult construct_with_denominator(const Polynomial& g, int d,
                                              bool dilate) {
  const int n = g.dimension();
  if (d < 2) throw std::invalid_argument("numerator degree must be at least 2");
  if (std::abs(g.coeff(Multiindex(n, 0))) > 1e-14)
    throw std::invalid_argument("denominator perturbation must vanish at 0");
  if (g.degree() > d - 1)
    throw std::invalid_argument("denominator perturbation degree must stay "
                                "below the numerator degree");

  RealForm r_diag = RealForm(MonomialBasis(n, d));
  for (int j = 1; j <= d; ++j)
    r_diag = r_diag + RealForm::norm_power(n, j).scaled(1.0 / d);

  const RealForm sphere_square = RealForm::norm_power(n, 1);

  // The coefficient matrix that must be positive semidefinite is
  //   (q + conj q) ||z||^2 + |q|^2 + R,   q = eps G or G(eps z),
  // and shrinking eps shrinks the perturbation of the positive diagonal R.
  const auto assemble = [&](double eps) {
    Polynomial q = dilate
        ? g.compose_linear(eps * Eigen::MatrixXcd::Identity(n, n))
        : g * Complex(eps, 0);
    RealForm neg = RealForm::hermitian_double(q) * sphere_square +
                   RealForm::from_squares(PolyMap(n, {q}), PolyMap(n, {})) +
                   r_diag;
    return std::make_pair(std::move(q), std::move(neg));
  };

  double eps = 1.0;
  int tries = 0;
  for (; tries < 60; ++tries, eps *= 0.5) {
    const auto [q, neg] = assemble(eps);
    if (sup_on_sphere(q, 200, 2024) >= 0.999) continue;
    if (!positive_semidefinite(neg)) continue;
    if (neg.pure_term_defect() >
        tol::hermitian_rel * (neg.max_abs_entry() + 1.0))
      throw std::runtime_error("pure-term rows of the coefficient matrix "
                               "failed to cancel");

    RealForm::Decomposition dec = neg.holomorphic_decomposition();
    if (dec.sig.negatives != 0)
      throw std::runtime_error("decomposition produced negative squares "
                               "despite the positivity check");

    ConstructionResult result{
        RationalBallMap(dec.positive,
                        Polynomial::constant(n, 1.0) + q),
        eps,
        {},
        LowestTerms::likely,
        dec.sig,
        dec.reconstruction_residual,
        false};
    const auto [q_half, neg_half] = assemble(eps / 2.0);
    result.epsilon_half_ok = positive_semidefinite(neg_half) &&
                             sup_on_sphere(q_half, 200, 2024) < 0.999;
    attach_certificates(result);
    return result;
  }
  throw std::runtime_error("no eps in 60 halvings made the coefficient "
                           "matrix positive semidefinite with a zero-free "
                           "denominator");
}

ConstructionResult construct_even_quartic(const Eigen::VectorXd& sigma) {
  const int n = static_cast<int>(sigma.size());
  if (n < 1) throw std::invalid_argument("need at least one coefficient");
  for (int i = 0; i < n; ++i) {
    if (sigma[i] <= 0.0)
      throw std::invalid_argument("coefficients must be strictly positive");
    if (i > 0 && sigma[i] <= sigma[i - 1])
      throw std::invalid_argument("coefficients must be strictly increasing");
  }

  const auto assemble = [&](double scale_factor) {
    Polynomial g_quad(n);
    for (int i = 0; i < n; ++i) {
      Multiindex e(n, 0);
      e[i] = 2;
      g_quad.add_term(e, sigma[i] * scale_factor);
    }
    // (G + conj G) ||z||^4 + |G|^2 + (1/2)||z||^4 + (1/2)||z||^8: the
    // ||z||^4 sphere factor keeps every monomial at even degree.
    RealForm neg =
        RealForm::hermitian_double(g_quad) * RealForm::norm_power(n, 2) +
        RealForm::from_squares(PolyMap(n, {g_quad}), PolyMap(n, {})) +
        RealForm::norm_power(n, 2).scaled(0.5) +
        RealForm::norm_power(n, 4).scaled(0.5);
    return std::make_pair(std::move(g_quad), std::move(neg));
  };

  auto [g_quad, neg] = assemble(1.0);
  {
    const auto [lo, hi] = eigenvalue_range(neg);
    if (lo < -tol::eig_rel * std::max(std::abs(hi), 1.0)) {
      std::ostringstream msg;
      msg << "coefficient matrix is indefinite (eigenvalue " << lo
          << "); coefficients up to about 1/sqrt(n) = " << 1.0 / std::sqrt(n)
          << " are expected to work";
      throw std::runtime_error(msg.str());
    }
  }

  // Even-degree monomials only; the constant is excluded so the numerator
  // vanishes at the origin exactly.
  std::vector<int> even_indices;
  for (int i = 0; i < neg.basis().size(); ++i) {
    const int deg = neg.basis().degree_of(i);
    if (deg > 0 && deg % 2 == 0) even_indices.push_back(i);
  }
  RealForm::Decomposition dec = neg.decomposition_on(even_indices);
  if (dec.sig.negatives != 0)
    throw std::runtime_error("decomposition produced negative squares "
                             "despite the positivity check");

  ConstructionResult result{
      RationalBallMap(dec.positive, Polynomial::constant(n, 1.0) + g_quad),
      1.0,
      {},
      LowestTerms::likely,
      dec.sig,
      dec.reconstruction_residual,
      false};
  result.epsilon_half_ok = positive_semidefinite(assemble(0.5).second);
  attach_certificates(result);
  return result;
}

RealForm combine_invariants(const InvariantPolynomialSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw std::invalid_argument("spec needs a positive dimension");
  RealForm rho(MonomialBasis(n, 1));
  int cumulative = 0;  // k_{j-1}
  std::set<int> block_degrees;
  for (std::size_t j = 0; j < spec.forms.size(); ++j) {
    const RealForm& form = spec.forms[j];
    if (form.basis().dimension() != n)
      throw std::invalid_argument("invariant form dimension mismatch");
    if (form.hermitian_defect() >
        tol::hermitian_rel * (form.frobenius_norm() + 1.0))
      throw std::invalid_argument("invariant form is not real-valued");
    const auto [a, b] = form.bidegree();
    if (!form.is_bihomogeneous() || a != b || a < 1)
      throw std::invalid_argument("invariant forms must be bihomogeneous of "
                                  "bidegree (d, d) with d >= 1");
    rho = rho + RealForm::norm_power(n, 1 + cumulative) * form;
    cumulative += a;
    // Block j sits at bidegree 1 + k_j; the cumulative sums are strictly
    // increasing, so blocks can never share a degree.
    if (!block_degrees.insert(1 + cumulative).second)
      throw std::logic_error("invariant blocks collided in degree");
  }
  return rho.compacted();
}

ConstructionResult construct_invariant_map(const InvariantPolynomialSpec& spec) {
  const int n = spec.n;
  const RealForm rho = combine_invariants(spec);
  const bool have_rho = rho.frobenius_norm() > 0.0;
  // rho (1 - ||z||^2) reaches one bidegree past rho itself, and the diagonal
  // R must dominate there too.
  const int d = have_rho ? rho.bidegree().first + 1 : 2;

  RealForm r_diag = RealForm(MonomialBasis(n, d));
  for (int j = 1; j <= d; ++j)
    r_diag = r_diag + RealForm::norm_power(n, j).scaled(1.0 / d);

  const auto assemble = [&](double eps) {
    return r_diag + rho.scaled(eps) -
           (rho * RealForm::norm_power(n, 1)).scaled(eps);
  };

  double eps = 1.0;
  for (int tries = 0; tries < 60; ++tries, eps *= 0.5) {
    RealForm total = assemble(eps);
    if (!positive_semidefinite(total)) continue;
    if (total.pure_term_defect() >
        tol::hermitian_rel * (total.max_abs_entry() + 1.0))
      throw std::runtime_error("combined form kept pure holomorphic terms");

    RealForm::Decomposition dec = total.holomorphic_decomposition();
    if (dec.sig.negatives != 0)
      throw std::runtime_error("decomposition produced negative squares "
                               "despite the positivity check");

    ConstructionResult result{
        RationalBallMap(dec.positive, Polynomial::constant(n, 1.0)),
        eps,
        {},
        LowestTerms::likely,
        dec.sig,
        dec.reconstruction_residual,
        false};
    result.epsilon_half_ok = positive_semidefinite(assemble(eps / 2.0));
    attach_certificates(result);
    return result;
  }
  throw std::runtime_error("no eps in 60 halvings made the combined "
                           "coefficient matrix positive semidefinite");
}

RationalBallMap example_map(double sigma1, double sigma2) {
  if (sigma1 * sigma1 + sigma2 * sigma2 >= 1.0)
    throw std::invalid_argument("need sigma1^2 + sigma2^2 < 1");
  const int n = 2;

  Multiindex e20{2, 0}, e11{1, 1}, e02{0, 2};
  std::vector<Polynomial> hf{Polynomial::monomial(e20, 1.0),
                             Polynomial::monomial(e11, std::sqrt(2.0)),
                             Polynomial::monomial(e02, 1.0)};
  RationalBallMap h_map(PolyMap(n, hf), Polynomial::constant(n, 1.0));

  Eigen::VectorXcd alpha(3);
  alpha << Complex(-sigma1, 0), Complex(0, 0), Complex(-sigma2, 0);
  RationalBallMap psi =
      compose_target_automorphism(h_map, BallAutomorphism::translation(alpha));

  const auto& pn = psi.numerator().components;
  std::vector<Polynomial> comps;
  comps.reserve(7);
  for (int block : {0, 2})
    for (int j = 0; j < 3; ++j) comps.push_back(pn[block] * hf[j]);
  comps.push_back(pn[1]);
  return RationalBallMap(PolyMap(n, std::move(comps)), psi.denominator());
}

}  // namespace ballmap
