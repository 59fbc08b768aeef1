#include "ballmap/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ballmap {

namespace {

Complex int_pow(Complex base, int e) {
  Complex out(1.0, 0.0);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(int dimension) : n_(dimension) {
  if (dimension < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
}

Polynomial Polynomial::constant(int n, Complex c) {
  Polynomial p(n);
  if (c != Complex(0, 0)) p.terms_[Multiindex(n, 0)] = c;
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("variable index out of range");
  Polynomial p(n);
  Multiindex e(n, 0);
  e[i] = 1;
  p.terms_[e] = Complex(1, 0);
  return p;
}

Polynomial Polynomial::monomial(const Multiindex& e, Complex c) {
  Polynomial p(static_cast<int>(e.size()));
  for (int k : e)
    if (k < 0) throw std::invalid_argument("negative exponent");
  if (c != Complex(0, 0)) p.terms_[e] = c;
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  // Graded order: the last term has maximal total degree.
  return total_degree(terms_.rbegin()->first);
}

Complex Polynomial::coeff(const Multiindex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0, 0) : it->second;
}

double Polynomial::max_coeff_abs() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial& Polynomial::add_term(const Multiindex& e, Complex c) {
  if (static_cast<int>(e.size()) != n_)
    throw std::invalid_argument("term dimension mismatch");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0, 0)) terms_.erase(it);
  return *this;
}

void Polynomial::prune(double rel_tol) {
  const double cut = rel_tol * max_coeff_abs();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= cut)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  Polynomial out = *this;
  out += rhs;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("dimension mismatch in +");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  prune();
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  Polynomial out = *this;
  out -= rhs;
  return out;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("dimension mismatch in -");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  prune();
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

Polynomial Polynomial::operator*(Complex scalar) const {
  Polynomial out(n_);
  if (scalar == Complex(0, 0)) return out;
  for (const auto& [e, c] : terms_) out.terms_[e] = scalar * c;
  return out;
}

Polynomial operator*(Complex scalar, const Polynomial& p) { return p * scalar; }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("dimension mismatch in *");
  Polynomial out(n_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : rhs.terms_) out.add_term(add(ea, eb), ca * cb);
  out.prune();
  return out;
}

Complex Polynomial::evaluate(const Eigen::VectorXcd& z) const {
  if (z.size() != n_) throw std::invalid_argument("point dimension mismatch");
  Complex acc(0, 0);
  for (const auto& [e, c] : terms_) {
    Complex term = c;
    for (int i = 0; i < n_; ++i)
      if (e[i] > 0) term *= int_pow(z[i], e[i]);
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::compose_linear(const Eigen::MatrixXcd& m) const {
  if (m.rows() != n_ || m.cols() != n_)
    throw std::invalid_argument("compose_linear: matrix must be n x n");

  // z_i -> sum_j m(i,j) z_j
  std::vector<Polynomial> linear;
  linear.reserve(n_);
  for (int i = 0; i < n_; ++i) {
    Polynomial li(n_);
    for (int j = 0; j < n_; ++j) {
      if (m(i, j) != Complex(0, 0)) {
        Multiindex e(n_, 0);
        e[j] = 1;
        li.add_term(e, m(i, j));
      }
    }
    linear.push_back(std::move(li));
  }

  // Cache powers of each substituted variable; exponents stay small.
  std::vector<std::vector<Polynomial>> powers(n_);
  for (int i = 0; i < n_; ++i) powers[i].push_back(Polynomial::constant(n_, 1.0));

  auto power_of = [&](int i, int k) -> const Polynomial& {
    while (static_cast<int>(powers[i].size()) <= k)
      powers[i].push_back(powers[i].back() * linear[i]);
    return powers[i][k];
  };

  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(n_, c);
    for (int i = 0; i < n_; ++i)
      if (e[i] > 0) term = term * power_of(i, e[i]);
    out += term;
  }
  out.prune();
  return out;
}

Polynomial Polynomial::partial_derivative(int axis) const {
  if (axis < 0 || axis >= n_) throw std::invalid_argument("axis out of range");
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    Multiindex d = e;
    d[axis] -= 1;
    out.add_term(d, c * double(e[axis]));
  }
  return out;
}

Polynomial Polynomial::homogeneous_part(int k) const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == k) out.terms_[e] = c;
  return out;
}

Polynomial Polynomial::conjugated_coefficients() const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) out.terms_[e] = std::conj(c);
  return out;
}

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& divisor,
                                                 double rel_tol) const {
  if (divisor.n_ != n_) throw std::invalid_argument("dimension mismatch in division");
  if (divisor.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (is_zero()) return Polynomial(n_);

  const double noise = rel_tol * max_coeff_abs();
  const auto& lead_div = *divisor.terms_.rbegin();

  Polynomial quotient(n_);
  Polynomial rem = *this;
  while (!rem.terms_.empty()) {
    auto lead = *rem.terms_.rbegin();
    if (std::abs(lead.second) <= noise) {
      rem.terms_.erase(std::prev(rem.terms_.end()));
      continue;
    }
    if (!divides(lead_div.first, lead.first)) return std::nullopt;
    const Multiindex shift = subtract(lead.first, lead_div.first);
    const Complex factor = lead.second / lead_div.second;
    quotient.add_term(shift, factor);
    for (const auto& [e, c] : divisor.terms_) rem.add_term(add(e, shift), -factor * c);
    // The leading term is cancelled by construction; force-erase any
    // floating-point residue so each step strictly reduces the order.
    rem.terms_.erase(lead.first);
  }
  quotient.prune();
  return quotient;
}

PolyMap::PolyMap(int dimension, std::vector<Polynomial> comps)
    : n(dimension), components(std::move(comps)) {
  for (const auto& p : components)
    if (p.dimension() != n)
      throw std::invalid_argument("poly map component dimension mismatch");
}

int PolyMap::degree() const {
  int d = -1;
  for (const auto& p : components) d = std::max(d, p.degree());
  return d;
}

double PolyMap::max_coeff_abs() const {
  double m = 0.0;
  for (const auto& p : components) m = std::max(m, p.max_coeff_abs());
  return m;
}

Eigen::VectorXcd PolyMap::evaluate(const Eigen::VectorXcd& z) const {
  Eigen::VectorXcd out(size());
  for (int j = 0; j < size(); ++j) out[j] = components[j].evaluate(z);
  return out;
}

PolyMap PolyMap::compose_linear(const Eigen::MatrixXcd& m) const {
  std::vector<Polynomial> comps;
  comps.reserve(components.size());
  for (const auto& p : components) comps.push_back(p.compose_linear(m));
  return PolyMap(n, std::move(comps));
}

}  // namespace ballmap
