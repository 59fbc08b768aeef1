#include "ballmap/real_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

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

Complex monomial_value(const Multiindex& e, const Eigen::VectorXcd& z) {
  Complex v(1.0, 0.0);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) v *= int_pow(z[static_cast<int>(i)], e[i]);
  return v;
}

struct Entry {
  int row;
  int col;
  Complex value;
};

std::vector<Entry> nonzero_entries(const Eigen::MatrixXcd& m) {
  std::vector<Entry> out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != Complex(0, 0)) out.push_back({i, j, m(i, j)});
  return out;
}

}  // namespace

RealForm::RealForm(MonomialBasis basis)
    : basis_(std::move(basis)),
      mat_(Eigen::MatrixXcd::Zero(basis_.size(), basis_.size())) {}

RealForm::RealForm(MonomialBasis basis, Eigen::MatrixXcd coefficients)
    : basis_(std::move(basis)), mat_(std::move(coefficients)) {
  if (mat_.rows() != basis_.size() || mat_.cols() != basis_.size())
    throw std::invalid_argument("coefficient matrix does not match basis size");
}

RealForm RealForm::from_squares(const PolyMap& p, const PolyMap& g, int min_degree) {
  const int n = p.n > 0 ? p.n : g.n;
  if (n < 1) throw std::invalid_argument("from_squares: dimension not set");
  if (p.n > 0 && g.n > 0 && p.n != g.n)
    throw std::invalid_argument("from_squares: dimension mismatch");
  const int d = std::max({p.degree(), g.degree(), min_degree, 0});
  RealForm r{MonomialBasis(n, d)};
  for (const auto& comp : p.components) {
    const Eigen::VectorXcd v = r.basis_.coefficient_vector(comp);
    r.mat_ += v * v.adjoint();
  }
  for (const auto& comp : g.components) {
    const Eigen::VectorXcd v = r.basis_.coefficient_vector(comp);
    r.mat_ -= v * v.adjoint();
  }
  return r;
}

RealForm RealForm::constant(int n, double c) {
  RealForm r{MonomialBasis(n, 0)};
  r.mat_(0, 0) = c;
  return r;
}

RealForm RealForm::norm_power(int n, int k) {
  if (k < 0) throw std::invalid_argument("norm_power: k must be >= 0");
  RealForm r{MonomialBasis(n, k)};
  for (int i = 0; i < r.basis_.size(); ++i) {
    if (r.basis_.degree_of(i) != k) continue;
    // Multinomial coefficient k! / prod(e_j!).
    const Multiindex& e = r.basis_.at(i);
    double coeff = 1.0;
    int used = 0;
    for (int ej : e)
      for (int t = 1; t <= ej; ++t) coeff *= double(++used) / double(t);
    r.mat_(i, i) = coeff;
  }
  return r;
}

RealForm RealForm::hermitian_double(const Polynomial& g) {
  const int d = std::max(g.degree(), 0);
  RealForm r{MonomialBasis(g.dimension(), d)};
  const Eigen::VectorXcd v = r.basis_.coefficient_vector(g);
  r.mat_.col(0) += v;
  r.mat_.row(0) += v.adjoint();
  return r;
}

double RealForm::max_abs_entry() const {
  return mat_.size() == 0 ? 0.0 : mat_.cwiseAbs().maxCoeff();
}

double RealForm::hermitian_defect() const {
  return (mat_ - mat_.adjoint()).norm();
}

double RealForm::symmetrize() {
  const double defect = hermitian_defect();
  mat_ = ((mat_ + mat_.adjoint()) / 2.0).eval();
  return defect;
}

RealForm RealForm::embedded(int d2) const {
  if (d2 < basis_degree()) throw std::invalid_argument("embedded: degree too small");
  if (d2 == basis_degree()) return *this;
  RealForm out{MonomialBasis(dimension(), d2)};
  out.mat_.topLeftCorner(basis_.size(), basis_.size()) = mat_;
  return out;
}

RealForm RealForm::compacted(double rel_tol) const {
  const double cut = rel_tol * max_abs_entry();
  int needed = 0;
  for (int i = 0; i < basis_.size(); ++i)
    for (int j = 0; j < basis_.size(); ++j)
      if (std::abs(mat_(i, j)) > cut)
        needed = std::max({needed, basis_.degree_of(i), basis_.degree_of(j)});
  if (needed == basis_degree()) return *this;
  MonomialBasis smaller(dimension(), needed);
  RealForm out{smaller};
  out.mat_ = mat_.topLeftCorner(smaller.size(), smaller.size());
  return out;
}

RealForm RealForm::operator+(const RealForm& rhs) const {
  if (rhs.dimension() != dimension()) throw std::invalid_argument("form dimension mismatch");
  const int d = std::max(basis_degree(), rhs.basis_degree());
  RealForm out = embedded(d);
  out.mat_ += rhs.embedded(d).mat_;
  return out;
}

RealForm RealForm::operator-(const RealForm& rhs) const {
  if (rhs.dimension() != dimension()) throw std::invalid_argument("form dimension mismatch");
  const int d = std::max(basis_degree(), rhs.basis_degree());
  RealForm out = embedded(d);
  out.mat_ -= rhs.embedded(d).mat_;
  return out;
}

RealForm RealForm::operator*(const RealForm& rhs) const {
  if (rhs.dimension() != dimension()) throw std::invalid_argument("form dimension mismatch");
  RealForm out{MonomialBasis(dimension(), basis_degree() + rhs.basis_degree())};
  const auto lhs_entries = nonzero_entries(mat_);
  const auto rhs_entries = nonzero_entries(rhs.mat_);
  for (const auto& a : lhs_entries) {
    for (const auto& b : rhs_entries) {
      const int row = out.basis_.index_of(add(basis_.at(a.row), rhs.basis_.at(b.row)));
      const int col = out.basis_.index_of(add(basis_.at(a.col), rhs.basis_.at(b.col)));
      out.mat_(row, col) += a.value * b.value;
    }
  }
  return out;
}

RealForm RealForm::scaled(double s) const {
  RealForm out = *this;
  out.mat_ *= s;
  return out;
}

RealForm RealForm::bidegree_part(int a, int b) const {
  RealForm out = *this;
  for (int i = 0; i < basis_.size(); ++i)
    for (int j = 0; j < basis_.size(); ++j) {
      const bool keep = (a < 0 || basis_.degree_of(i) == a) &&
                        (b < 0 || basis_.degree_of(j) == b);
      if (!keep) out.mat_(i, j) = Complex(0, 0);
    }
  return out;
}

std::pair<int, int> RealForm::bidegree(double rel_tol) const {
  const double cut = rel_tol * max_abs_entry();
  int a = 0, b = 0;
  for (int i = 0; i < basis_.size(); ++i)
    for (int j = 0; j < basis_.size(); ++j)
      if (std::abs(mat_(i, j)) > cut) {
        a = std::max(a, basis_.degree_of(i));
        b = std::max(b, basis_.degree_of(j));
      }
  return {a, b};
}

bool RealForm::is_bihomogeneous(double rel_tol) const {
  const double cut = rel_tol * max_abs_entry();
  const auto [a, b] = bidegree(rel_tol);
  for (int i = 0; i < basis_.size(); ++i)
    for (int j = 0; j < basis_.size(); ++j)
      if (std::abs(mat_(i, j)) > cut &&
          (basis_.degree_of(i) != a || basis_.degree_of(j) != b))
        return false;
  return true;
}

double RealForm::pure_term_defect() const {
  double m = 0.0;
  for (int i = 1; i < basis_.size(); ++i) {
    m = std::max(m, std::abs(mat_(i, 0)));
    m = std::max(m, std::abs(mat_(0, i)));
  }
  return m;
}

double RealForm::evaluate(const Eigen::VectorXcd& z) const {
  if (z.size() != dimension()) throw std::invalid_argument("point dimension mismatch");
  Eigen::VectorXcd u(basis_.size());
  for (int i = 0; i < basis_.size(); ++i) u[i] = monomial_value(basis_.at(i), z);
  const Complex value = u.transpose() * mat_ * u.conjugate();
  const double scale = mat_.norm() * u.squaredNorm() + 1.0;
  if (std::abs(value.imag()) > 1e-8 * scale)
    throw std::runtime_error("form evaluation has nonreal residue; matrix not Hermitian?");
  return value.real();
}

Eigen::VectorXcd RealForm::dbar_gradient(const Eigen::VectorXcd& z) const {
  if (z.size() != dimension()) throw std::invalid_argument("point dimension mismatch");
  const int n = dimension();
  Eigen::VectorXcd u(basis_.size());
  for (int i = 0; i < basis_.size(); ++i) u[i] = monomial_value(basis_.at(i), z);
  const Eigen::RowVectorXcd row = u.transpose() * mat_;
  Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(n);
  for (int b = 0; b < basis_.size(); ++b) {
    if (row[b] == Complex(0, 0)) continue;
    const Multiindex& e = basis_.at(b);
    for (int j = 0; j < n; ++j) {
      if (e[j] == 0) continue;
      Multiindex shifted = e;
      shifted[j] -= 1;
      grad[j] += row[b] * double(e[j]) * std::conj(monomial_value(shifted, z));
    }
  }
  return grad;
}

RealForm RealForm::compose_unitary(const Eigen::MatrixXcd& u) const {
  if (u.rows() != dimension() || u.cols() != dimension())
    throw std::invalid_argument("compose_unitary: matrix must be n x n");
  const int m = basis_.size();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, m);
  for (int a = 0; a < m; ++a) {
    const Polynomial image =
        Polynomial::monomial(basis_.at(a), Complex(1, 0)).compose_linear(u);
    s.col(a) = basis_.coefficient_vector(image);
  }
  return RealForm{basis_, s * mat_ * s.adjoint()};
}

std::optional<RealForm> RealForm::divide_by_sphere(double rel_tol) const {
  const int d = basis_degree();
  if (d < 1) return std::nullopt;
  const int n = dimension();
  RealForm q{MonomialBasis(n, d - 1)};
  // (1 - ||z||^2) q has coefficient q_{a,b} - sum_i q_{a-e_i, b-e_i} at (a,b),
  // so the quotient entries follow by recursion in increasing degree.
  for (int i = 0; i < q.basis_.size(); ++i) {
    for (int j = 0; j < q.basis_.size(); ++j) {
      Complex v = mat_(i, j);  // same index in the larger basis (prefix property)
      const Multiindex& a = q.basis_.at(i);
      const Multiindex& b = q.basis_.at(j);
      for (int k = 0; k < n; ++k) {
        if (a[k] == 0 || b[k] == 0) continue;
        Multiindex a2 = a, b2 = b;
        a2[k] -= 1;
        b2[k] -= 1;
        v += q.mat_(q.basis_.index_of(a2), q.basis_.index_of(b2));
      }
      q.mat_(i, j) = v;
    }
  }
  const RealForm sphere = constant(n, 1.0) - norm_power(n, 1);
  const RealForm residual = *this - sphere * q;
  const double scale = frobenius_norm();
  if (residual.frobenius_norm() > rel_tol * (scale > 0 ? scale : 1.0)) return std::nullopt;
  return q;
}

Signature RealForm::signature(double eig_rel_tol) const {
  RealForm work = *this;
  work.symmetrize();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(work.mat_,
                                                         Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  const double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  const double cut = eig_rel_tol * (top > 0 ? top : 1.0);
  Signature sig;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > cut) ++sig.positives;
    else if (ev[i] < -cut) ++sig.negatives;
  }
  return sig;
}

RealForm::Decomposition RealForm::decomposition_on(const std::vector<int>& indices,
                                                   double eig_rel_tol) const {
  RealForm work = *this;
  const double defect = work.symmetrize();
  if (defect > 1e-6 * (work.frobenius_norm() + 1.0))
    throw std::invalid_argument("decomposition: coefficient matrix is not Hermitian");

  const int m = static_cast<int>(indices.size());
  Eigen::MatrixXcd sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = work.mat_(indices[i], indices[j]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("decomposition: eigensolver failed");
  const Eigen::VectorXd ev = solver.eigenvalues();
  const double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  const double cut = eig_rel_tol * (top > 0 ? top : 1.0);

  Decomposition out;
  out.positive.n = dimension();
  out.negative.n = dimension();
  // Largest eigenvalues first on each side keeps component order stable.
  for (int i = ev.size() - 1; i >= 0; --i) {
    if (ev[i] <= cut) continue;
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(basis_.size());
    for (int k = 0; k < m; ++k) full[indices[k]] = solver.eigenvectors()(k, i);
    out.positive.components.push_back(
        basis_.polynomial_from(std::sqrt(ev[i]) * full));
    ++out.sig.positives;
  }
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] >= -cut) continue;
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(basis_.size());
    for (int k = 0; k < m; ++k) full[indices[k]] = solver.eigenvectors()(k, i);
    out.negative.components.push_back(
        basis_.polynomial_from(std::sqrt(-ev[i]) * full));
    ++out.sig.negatives;
  }

  const RealForm rebuilt =
      from_squares(out.positive, out.negative, basis_degree()).embedded(basis_degree());
  const double scale = work.frobenius_norm();
  out.reconstruction_residual =
      (work - rebuilt).frobenius_norm() / (scale > 0 ? scale : 1.0);
  return out;
}

RealForm::Decomposition RealForm::holomorphic_decomposition(double eig_rel_tol) const {
  const double pure_cut = eig_rel_tol * (frobenius_norm() + 1.0);
  if (pure_term_defect() <= pure_cut) {
    // No pure holomorphic/antiholomorphic content: excluding the constant
    // monomial pins every component to vanish at the origin.
    std::vector<int> rest;
    for (int i = 1; i < basis_.size(); ++i) rest.push_back(i);
    Decomposition out = decomposition_on(rest, eig_rel_tol);
    const double c0 = mat_(0, 0).real();
    if (std::abs(c0) > pure_cut) {
      // Isolated constant block contributes one constant component.
      auto& side = c0 > 0 ? out.positive : out.negative;
      side.components.push_back(
          Polynomial::constant(dimension(), std::sqrt(std::abs(c0))));
      (c0 > 0 ? out.sig.positives : out.sig.negatives) += 1;
      const RealForm rebuilt =
          from_squares(out.positive, out.negative, basis_degree()).embedded(basis_degree());
      const double scale = frobenius_norm();
      out.reconstruction_residual =
          (*this - rebuilt).frobenius_norm() / (scale > 0 ? scale : 1.0);
    }
    out.origin_pinned = true;
    return out;
  }
  std::vector<int> all(basis_.size());
  for (int i = 0; i < basis_.size(); ++i) all[i] = i;
  return decomposition_on(all, eig_rel_tol);
}

}  // namespace ballmap
