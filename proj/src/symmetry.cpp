#include "ballmap/symmetry.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "ballmap/unitary.hpp"

namespace ballmap {

namespace {

std::string slice_label(int a, int b) {
  auto part = [](int v) { return v < 0 ? std::string("*") : std::to_string(v); };
  return "(" + part(a) + "," + part(b) + ")";
}

void require_normal_form(const RationalBallMap& f, const char* who) {
  if (f.degree() < 2)
    throw std::invalid_argument(std::string(who) +
                                " is only decided for maps of degree >= 2");
  if (!normal_form_report(f).is_normal)
    throw std::invalid_argument(std::string(who) +
                                " needs the map in normal form; normalize first");
}

void require_source_unitary(const RationalBallMap& f, const Eigen::MatrixXcd& u) {
  if (u.rows() != f.source_dimension() || !is_unitary(u))
    throw std::invalid_argument("source matrix must be unitary n x n");
}

const Eigen::MatrixXcd& require_target_unitary(
    const RationalBallMap& f, const std::optional<Eigen::MatrixXcd>& v,
    const char* who) {
  if (!v)
    throw std::invalid_argument(std::string(who) +
                                " needs a target-side unitary");
  if (v->rows() != f.target_dimension() || !is_unitary(*v))
    throw std::invalid_argument("target matrix must be unitary N x N");
  return *v;
}

// Max coefficient modulus over the tuple V p(Uz) g(z) - p(z) g(Uz); with
// V = I this is the defect of f(Uz) = f(z).
double intertwining_defect(const RationalBallMap& f, const Eigen::MatrixXcd& u,
                           const Eigen::MatrixXcd& v) {
  const Polynomial gu = f.denominator().compose_linear(u);
  std::vector<Polynomial> pu;
  pu.reserve(f.target_dimension());
  for (const auto& comp : f.numerator().components)
    pu.push_back(comp.compose_linear(u));
  double worst = 0.0;
  for (int i = 0; i < f.target_dimension(); ++i) {
    Polynomial lhs(f.source_dimension());
    for (int j = 0; j < f.target_dimension(); ++j)
      if (v(i, j) != Complex(0, 0)) lhs += v(i, j) * pu[j];
    const Polynomial defect =
        lhs * f.denominator() - f.numerator().components[i] * gu;
    worst = std::max(worst, defect.max_coeff_abs());
  }
  return worst;
}

}  // namespace

std::string GroupId::name() const {
  switch (kind) {
    case Kind::A: return "A";
    case Kind::Gamma: return "Gamma";
    case Kind::G: return "G";
    case Kind::T: return "T";
    case Kind::H: return "H";
    case Kind::D: return "D";
    case Kind::Sigma: return "Sigma";
    case Kind::Delta: return "Delta" + slice_label(a, b);
  }
  return "?";
}

GroupVerdict membership(const RationalBallMap& f, const GroupId& id,
                        const Eigen::MatrixXcd& u,
                        const std::optional<Eigen::MatrixXcd>& v,
                        double threshold) {
  GroupVerdict out;
  const double scale = 1.0 + f.max_coeff_abs();

  switch (id.kind) {
    case GroupId::Kind::G: {
      require_source_unitary(f, u);
      const Eigen::MatrixXcd id_v =
          Eigen::MatrixXcd::Identity(f.target_dimension(), f.target_dimension());
      out.residual = intertwining_defect(f, u, id_v) / scale;
      out.criterion = "p(Uz) g(z) - p(z) g(Uz) = 0";
      break;
    }
    case GroupId::Kind::A: {
      require_normal_form(f, "A");
      require_source_unitary(f, u);
      const Eigen::MatrixXcd& vv = require_target_unitary(f, v, "A");
      out.residual = intertwining_defect(f, u, vv) / scale;
      out.criterion = "V p(Uz) g(z) - p(z) g(Uz) = 0";
      break;
    }
    case GroupId::Kind::H: {
      const Eigen::MatrixXcd& vv = require_target_unitary(f, v, "H");
      double worst = 0.0;
      for (int i = 0; i < f.target_dimension(); ++i) {
        Polynomial lhs(f.source_dimension());
        for (int j = 0; j < f.target_dimension(); ++j)
          if (vv(i, j) != Complex(0, 0))
            lhs += vv(i, j) * f.numerator().components[j];
        worst = std::max(
            worst, (lhs - f.numerator().components[i]).max_coeff_abs());
      }
      out.residual = worst / scale;
      out.criterion = "V p - p = 0";
      break;
    }
    case GroupId::Kind::Gamma: {
      require_normal_form(f, "Gamma");
      require_source_unitary(f, u);
      const RealForm r = underlying_form(f);
      const RealForm defect = r.compose_unitary(u) - r;
      out.residual = defect.max_abs_entry() / (1.0 + r.max_abs_entry());
      out.criterion = "r(Uz) - r(z) = 0";
      break;
    }
    case GroupId::Kind::D: {
      require_source_unitary(f, u);
      const Polynomial defect =
          f.denominator().compose_linear(u) - f.denominator();
      out.residual = defect.max_coeff_abs() / scale;
      out.criterion = "g(Uz) - g(z) = 0";
      break;
    }
    case GroupId::Kind::Sigma: {
      require_source_unitary(f, u);
      const Polynomial g2 = f.denominator().homogeneous_part(2);
      const Polynomial defect = g2.compose_linear(u) - g2;
      out.residual = defect.max_coeff_abs() / scale;
      out.criterion = "g_2(Uz) - g_2(z) = 0";
      break;
    }
    case GroupId::Kind::Delta: {
      require_source_unitary(f, u);
      const RealForm r = underlying_form(f);
      const RealForm defect =
          (r.compose_unitary(u) - r).bidegree_part(id.a, id.b);
      out.residual = defect.max_abs_entry() / (1.0 + r.max_abs_entry());
      out.criterion = "r(Uz) - r(z) = 0 on bidegree " + slice_label(id.a, id.b);
      break;
    }
    case GroupId::Kind::T:
      require_normal_form(f, "T");
      throw std::invalid_argument(
          "T membership is existential over source automorphisms; use "
          "t_group_search with a candidate family");
  }

  out.member = out.residual <= threshold;
  return out;
}

std::optional<Eigen::MatrixXcd> t_group_search(
    const RationalBallMap& f, const Eigen::MatrixXcd& v,
    const std::vector<Eigen::MatrixXcd>& candidates, double threshold) {
  const GroupId id = GroupId::simple(GroupId::Kind::A);
  for (const auto& u : candidates) {
    if (membership(f, id, u, v, threshold).member) return u;
  }
  return std::nullopt;
}

SigmaGroupStructure sigma_group_structure(const Eigen::VectorXd& sigma,
                                          double tol) {
  SigmaGroupStructure out;
  const int n = static_cast<int>(sigma.size());
  int i = 0;
  int zeros = 0;
  while (i < n && sigma[i] <= tol) {
    ++zeros;
    ++i;
  }
  if (zeros > 0)
    out.blocks.push_back({SigmaGroupStructure::BlockKind::unitary, zeros});
  while (i < n) {
    int j = i + 1;
    while (j < n && std::abs(sigma[j] - sigma[i]) <= tol) ++j;
    out.blocks.push_back({SigmaGroupStructure::BlockKind::orthogonal, j - i});
    i = j;
  }
  return out;
}

std::vector<Eigen::MatrixXcd> enumerate_members(
    const RationalBallMap& f, const GroupId& id,
    const std::vector<Eigen::MatrixXcd>& candidates, double threshold,
    std::size_t budget) {
  if (candidates.size() > budget)
    throw std::invalid_argument("candidate family exceeds the search budget");
  const Eigen::MatrixXcd id_n = Eigen::MatrixXcd::Identity(
      f.source_dimension(), f.source_dimension());
  std::vector<Eigen::MatrixXcd> members;
  for (const auto& cand : candidates) {
    const GroupVerdict verdict =
        id.kind == GroupId::Kind::H
            ? membership(f, id, id_n, cand, threshold)
            : membership(f, id, cand, std::nullopt, threshold);
    if (verdict.member) members.push_back(cand);
  }
  return members;
}

bool verify_group_closure(const std::vector<Eigen::MatrixXcd>& members,
                          double tol) {
  if (members.empty()) return false;
  const auto distance_to_set = [&](const Eigen::MatrixXcd& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : members) best = std::min(best, (m - x).norm());
    return best;
  };
  const int n = static_cast<int>(members.front().rows());
  if (distance_to_set(Eigen::MatrixXcd::Identity(n, n)) > tol) return false;
  for (const auto& a : members) {
    if (distance_to_set(a.adjoint()) > tol) return false;
    for (const auto& b : members)
      if (distance_to_set(a * b) > tol) return false;
  }
  return true;
}

ContainmentAudit containment_audit(
    const RationalBallMap& f, const std::vector<Eigen::MatrixXcd>& candidates,
    const std::vector<std::pair<int, int>>& delta_slices, double threshold) {
  require_normal_form(f, "the containment audit");
  ContainmentAudit audit;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Eigen::MatrixXcd& u = candidates[i];
    const int idx = static_cast<int>(i);
    const auto check = [&](GroupId::Kind k) {
      return membership(f, GroupId::simple(k), u, std::nullopt, threshold)
          .member;
    };
    const bool in_g = check(GroupId::Kind::G);
    const bool in_gamma = check(GroupId::Kind::Gamma);
    const bool in_d = check(GroupId::Kind::D);
    const bool in_sigma = check(GroupId::Kind::Sigma);

    std::map<std::pair<int, int>, bool> delta;
    for (const auto& slice : delta_slices)
      delta[slice] = membership(f, GroupId::delta(slice.first, slice.second),
                                u, std::nullopt, threshold)
                         .member;
    for (const auto& slice : std::vector<std::pair<int, int>>{{2, 0}, {-1, 0}})
      if (!delta.count(slice))
        delta[slice] = membership(f, GroupId::delta(slice.first, slice.second),
                                  u, std::nullopt, threshold)
                           .member;

    const auto flag = [&](const std::string& relation) {
      audit.violations.push_back({idx, relation});
    };
    if (in_g && !in_gamma) flag("G => Gamma");
    if (in_gamma && !in_d) flag("Gamma => D");
    if (in_d && !in_sigma) flag("D => Sigma");
    for (const auto& slice : delta_slices)
      if (in_gamma && !delta[slice])
        flag("Gamma => Delta" + slice_label(slice.first, slice.second));
    if (delta[{2, 0}] != in_sigma) flag("Delta(2,0) <=> Sigma");
    if (delta[{-1, 0}] != in_d) flag("Delta(*,0) <=> D");
    ++audit.candidates_checked;
  }
  return audit;
}

}  // namespace ballmap
