#include "ballmap/monomial_basis.hpp"

#include <stdexcept>

namespace ballmap {

namespace {

void enumerate_degree(int n, int degree, int pos, Multiindex& current,
                      std::vector<Multiindex>& out) {
  if (pos == n - 1) {
    current[pos] = degree;
    out.push_back(current);
    return;
  }
  // Largest exponent on the leading variable first matches graded-lex order.
  for (int k = degree; k >= 0; --k) {
    current[pos] = k;
    enumerate_degree(n, degree - k, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
  if (n < 1) throw std::invalid_argument("basis dimension must be >= 1");
  if (d < 0) throw std::invalid_argument("basis degree must be >= 0");
  monomials_.reserve(static_cast<std::size_t>(count(n, d)));
  Multiindex current(n, 0);
  for (int degree = 0; degree <= d; ++degree)
    enumerate_degree(n, degree, 0, current, monomials_);
  degrees_.reserve(monomials_.size());
  for (int i = 0; i < size(); ++i) {
    degrees_.push_back(total_degree(monomials_[i]));
    index_[monomials_[i]] = i;
  }
}

int MonomialBasis::index_of(const Multiindex& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? -1 : it->second;
}

Eigen::VectorXcd MonomialBasis::coefficient_vector(const Polynomial& p) const {
  if (p.dimension() != n_) throw std::invalid_argument("polynomial dimension mismatch");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size());
  for (const auto& [e, c] : p.terms()) {
    const int i = index_of(e);
    if (i < 0) throw std::invalid_argument("polynomial degree exceeds basis degree");
    v[i] = c;
  }
  return v;
}

Polynomial MonomialBasis::polynomial_from(const Eigen::VectorXcd& v,
                                          double prune_rel) const {
  if (v.size() != size()) throw std::invalid_argument("coefficient vector size mismatch");
  Polynomial p(n_);
  for (int i = 0; i < size(); ++i)
    if (v[i] != Complex(0, 0)) p.add_term(monomials_[i], v[i]);
  p.prune(prune_rel);
  return p;
}

long long MonomialBasis::count(int n, int d) {
  long long c = 1;
  for (int i = 1; i <= d; ++i) c = c * (n + i) / i;
  return c;
}

}  // namespace ballmap
