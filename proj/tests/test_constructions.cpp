#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include "ballmap/constructions.hpp"
#include "ballmap/normal_form.hpp"
#include "ballmap/sampling.hpp"
#include "ballmap/symmetry.hpp"

using namespace ballmap;

namespace {

RealForm modulus_square(int n, const Polynomial& p) {
  return RealForm::from_squares(PolyMap(n, {p}), PolyMap(n, {}));
}

bool even_exponents_only(const RationalBallMap& f) {
  for (const auto& comp : f.numerator().components)
    for (const auto& [e, c] : comp.terms())
      if (total_degree(e) % 2 != 0) return false;
  for (const auto& [e, c] : f.denominator().terms())
    if (total_degree(e) % 2 != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("trivial denominator yields the diagonal ball embedding") {
  const ConstructionResult res =
      construct_with_denominator(Polynomial(1), 2);
  CHECK(res.map.target_dimension() == 2);
  CHECK(res.map.degree() == 2);
  CHECK(res.epsilon == 1.0);
  CHECK(res.properness.proper);
  CHECK(res.map.denominator().degree() == 0);
}

TEST_CASE("cubic denominator in one variable") {
  const Polynomial g = Polynomial::monomial(Multiindex{3}, 1.0);
  const ConstructionResult res = construct_with_denominator(g, 4);
  CHECK(res.map.degree() == 4);
  CHECK(res.properness.proper);
  CHECK(res.lowest_terms != LowestTerms::failed);
  CHECK(res.epsilon_half_ok);
  CHECK(res.map.denominator().coeff(Multiindex{0}) == Complex(1.0, 0.0));
  CHECK(std::abs(res.map.denominator().coeff(Multiindex{3})) ==
        doctest::Approx(res.epsilon));
  CHECK(res.reconstruction_residual < 1e-9);
}

TEST_CASE("dilation moves the perturbation into the variables") {
  const Polynomial g = Polynomial::monomial(Multiindex{3}, 1.0);
  const ConstructionResult res = construct_with_denominator(g, 4, true);
  CHECK(res.properness.proper);
  // 1 + G(eps z): the cubic coefficient is eps^3.
  CHECK(std::abs(res.map.denominator().coeff(Multiindex{3})) ==
        doctest::Approx(res.epsilon * res.epsilon * res.epsilon));
}

TEST_CASE("denominator synthesis rejects bad inputs") {
  CHECK_THROWS_AS(construct_with_denominator(Polynomial::constant(1, 0.5), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      construct_with_denominator(Polynomial::monomial(Multiindex{3}, 1.0), 3),
      std::invalid_argument);
  CHECK_THROWS_AS(construct_with_denominator(Polynomial(1), 1),
                  std::invalid_argument);
}

TEST_CASE("two-variable denominator with mixed degrees") {
  Polynomial g(2);
  g.add_term(Multiindex{2, 0}, 0.05);
  g.add_term(Multiindex{0, 2}, 0.07);
  g.add_term(Multiindex{3, 0}, 0.01);
  g.add_term(Multiindex{0, 3}, 0.02);
  const ConstructionResult res = construct_with_denominator(g, 4);
  CHECK(res.properness.proper);
  CHECK(res.lowest_terms == LowestTerms::certified);
  CHECK(res.map.degree() == 4);
  // Numerator dimension stays within the monomial count bound.
  CHECK(res.map.target_dimension() <= 14);
}

TEST_CASE("even quartic maps use only even monomials") {
  Eigen::VectorXd sigma(2);
  sigma << 0.01, 0.02;
  const ConstructionResult res = construct_even_quartic(sigma);
  CHECK(res.properness.proper);
  CHECK(even_exponents_only(res.map));
  CHECK(res.map.degree() == 4);
  CHECK(res.map.target_dimension() == 8);
  CHECK(res.epsilon_half_ok);
  CHECK(normal_form_report(res.map).is_normal);

  // f(-z) = f(z) makes -I a symmetry.
  const Eigen::MatrixXcd mi = -Eigen::MatrixXcd::Identity(2, 2);
  CHECK(membership(res.map, GroupId::simple(GroupId::Kind::G), mi).member);

  Eigen::VectorXd sigma3(3);
  sigma3 << 0.01, 0.02, 0.03;
  const ConstructionResult res3 = construct_even_quartic(sigma3);
  CHECK(res3.properness.proper);
  CHECK(res3.map.target_dimension() == 21);
}

TEST_CASE("even quartic guards its coefficient range") {
  Eigen::VectorXd descending(2);
  descending << 0.4, 0.3;
  CHECK_THROWS_AS(construct_even_quartic(descending), std::invalid_argument);

  Eigen::VectorXd with_zero(2);
  with_zero << 0.0, 0.3;
  CHECK_THROWS_AS(construct_even_quartic(with_zero), std::invalid_argument);

  Eigen::VectorXd huge(2);
  huge << 0.9, 0.95;
  try {
    construct_even_quartic(huge);
    FAIL("expected a runtime_error for indefinite coefficients");
  } catch (const std::runtime_error& err) {
    CHECK(std::string(err.what()).find("indefinite") != std::string::npos);
  }
}

TEST_CASE("combined invariants occupy disjoint bidegree blocks") {
  // Degrees (2, 1): with naive cumulative exponents both blocks would land
  // at bidegree 5, so this spec exercises the offset choice.
  InvariantPolynomialSpec spec;
  spec.n = 2;
  const Polynomial z1sq = Polynomial::monomial(Multiindex{2, 0}, 1.0);
  spec.forms.push_back(modulus_square(2, z1sq));                     // |z1|^4
  spec.forms.push_back(modulus_square(2, Polynomial::variable(2, 1)));  // |z2|^2

  const RealForm rho = combine_invariants(spec);
  CHECK(rho.pure_term_defect() == 0.0);

  const RealForm block1 = RealForm::norm_power(2, 1) * spec.forms[0];
  const RealForm block2 = RealForm::norm_power(2, 3) * spec.forms[1];
  CHECK((rho.bidegree_part(3, 3) - block1).frobenius_norm() < 1e-12);
  CHECK((rho.bidegree_part(4, 4) - block2).frobenius_norm() < 1e-12);
  CHECK((rho - block1 - block2).frobenius_norm() < 1e-12);
}

TEST_CASE("combine rejects inhomogeneous and mismatched forms") {
  InvariantPolynomialSpec spec;
  spec.n = 2;
  spec.forms.push_back(RealForm::norm_power(2, 1) + RealForm::norm_power(2, 2));
  CHECK_THROWS_AS(combine_invariants(spec), std::invalid_argument);

  InvariantPolynomialSpec constant_block;
  constant_block.n = 2;
  constant_block.forms.push_back(RealForm::constant(2, 1.0));
  CHECK_THROWS_AS(combine_invariants(constant_block), std::invalid_argument);

  InvariantPolynomialSpec wrong_dim;
  wrong_dim.n = 3;
  wrong_dim.forms.push_back(RealForm::norm_power(2, 1));
  CHECK_THROWS_AS(combine_invariants(wrong_dim), std::invalid_argument);
}

TEST_CASE("an empty spec synthesizes a fully unitary-invariant map") {
  InvariantPolynomialSpec spec;
  spec.n = 2;
  const ConstructionResult res = construct_invariant_map(spec);
  CHECK(res.properness.proper);
  CHECK(res.map.degree() == 2);

  Rng rng(443);
  const GroupId gamma = GroupId::simple(GroupId::Kind::Gamma);
  for (int round = 0; round < 5; ++round)
    CHECK(membership(res.map, gamma, haar_unitary(2, rng)).member);
}

TEST_CASE("coordinate modulus invariants cut the group to the diagonal") {
  InvariantPolynomialSpec spec;
  spec.n = 2;
  spec.forms.push_back(modulus_square(2, Polynomial::variable(2, 0)));
  spec.forms.push_back(modulus_square(2, Polynomial::variable(2, 1)));
  const ConstructionResult res = construct_invariant_map(spec);
  CHECK(res.properness.proper);
  CHECK(res.epsilon_half_ok);

  const GroupId gamma = GroupId::simple(GroupId::Kind::Gamma);
  Rng rng(449);
  for (int round = 0; round < 5; ++round) {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
    diag(0, 0) = std::exp(Complex(0, rng.uniform() * 6.28));
    diag(1, 1) = std::exp(Complex(0, rng.uniform() * 6.28));
    CHECK(membership(res.map, gamma, diag).member);
  }

  Eigen::MatrixXcd swap(2, 2);
  swap << 0, 1, 1, 0;
  const GroupVerdict off = membership(res.map, gamma, swap);
  CHECK_FALSE(off.member);
  CHECK(off.residual > 1e-3);
}

TEST_CASE("the explicit family hits its advertised shape") {
  const RationalBallMap f = example_map(0.3, 0.4);
  CHECK(f.source_dimension() == 2);
  CHECK(f.target_dimension() == 7);
  CHECK(f.degree() == 4);
  CHECK(even_exponents_only(f));

  // The denominator is exactly 1 + 0.3 z1^2 + 0.4 z2^2.
  const Polynomial& g = f.denominator();
  CHECK(g.coeff(Multiindex{0, 0}) == Complex(1.0, 0.0));
  CHECK(g.coeff(Multiindex{2, 0}) == Complex(0.3, 0.0));
  CHECK(g.coeff(Multiindex{0, 2}) == Complex(0.4, 0.0));
  CHECK(g.terms().size() == 3);

  CHECK(is_proper(f).proper);
  CHECK_THROWS_AS(example_map(0.8, 0.7), std::invalid_argument);
}

TEST_CASE("the degenerate member of the family is polynomial") {
  const RationalBallMap f = example_map(0.0, 0.0);
  CHECK(f.denominator().degree() == 0);
  CHECK(is_proper(f).proper);
}

TEST_CASE("construction results document the positivity margin") {
  const Polynomial g = Polynomial::monomial(Multiindex{3}, 1.0);
  for (const auto& res :
       {construct_with_denominator(g, 4),
        construct_with_denominator(g, 4, true)}) {
    CHECK(res.map.denominator().coeff(Multiindex{0}) == Complex(1.0, 0.0));
    CHECK(res.epsilon > 0.0);
    CHECK(res.epsilon <= 1.0);
    CHECK(res.epsilon_half_ok);
    CHECK(res.signature.negatives == 0);
  }
}
