#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ballmap/ball_map.hpp"
#include "ballmap/normal_form.hpp"

namespace ballmap {

// The eight unitary symmetry groups attached to a rational proper ball map
// f = p/g, identified by letter:
//   G      source unitaries with f(Uz) = f(z)
//   Gamma  source unitaries preserving the underlying form, r(Uz) = r(z)
//   A      pairs (U, V): V f(Uz) = f(z)
//   T      target unitaries V admitting some U with (U, V) in A
//   H      target unitaries V with V f = f
//   D      source unitaries with g(Uz) = g(z)
//   Sigma  source unitaries preserving the quadratic part of g
//   Delta  source unitaries preserving one bidegree slice of r
struct GroupId {
  enum class Kind { A, Gamma, G, T, H, D, Sigma, Delta };

  Kind kind = Kind::G;
  // Bidegree slice for Delta; -1 acts as a wildcard (all row or column
  // degrees), so Delta(-1, 0) compares the full pure-holomorphic part.
  int a = -1;
  int b = -1;

  static GroupId simple(Kind k) { return GroupId{k, -1, -1}; }
  static GroupId delta(int a, int b) { return GroupId{Kind::Delta, a, b}; }

  std::string name() const;
};

struct GroupVerdict {
  bool member = false;
  double residual = 0.0;     // normalized max coefficient of the defect
  std::string criterion;     // which identity was tested
};

// Tests the defining identity of the group at coefficient level.  u acts on
// the source (ignored for H); v acts on the target and is required exactly
// for A and H.  Gamma, A and T demand a normal-form map of degree >= 2; use
// t_group_search for T since its defining condition is existential.
GroupVerdict membership(const RationalBallMap& f, const GroupId& id,
                        const Eigen::MatrixXcd& u,
                        const std::optional<Eigen::MatrixXcd>& v = std::nullopt,
                        double threshold = tol::membership);

// First source candidate U making (U, V) a member of A, if any.
std::optional<Eigen::MatrixXcd> t_group_search(
    const RationalBallMap& f, const Eigen::MatrixXcd& v,
    const std::vector<Eigen::MatrixXcd>& candidates,
    double threshold = tol::membership);

// Structure of the group preserving sum sigma_l z_l^2: one unitary factor
// U(k) for the k vanishing sigmas, one orthogonal factor O(k) per k-fold
// repeated nonzero value.
struct SigmaGroupStructure {
  enum class BlockKind { unitary, orthogonal };
  struct Block {
    BlockKind kind;
    int size;
  };
  std::vector<Block> blocks;
};

SigmaGroupStructure sigma_group_structure(const Eigen::VectorXd& sigma,
                                          double tol = 1e-9);

// Filters a candidate family through membership.  For H the candidates are
// target-side; for every other group they act on the source.
std::vector<Eigen::MatrixXcd> enumerate_members(
    const RationalBallMap& f, const GroupId& id,
    const std::vector<Eigen::MatrixXcd>& candidates,
    double threshold = tol::membership, std::size_t budget = 200000);

// True when the set is closed under products and inverses (distance of each
// product/inverse to the set below tol); the identity must be present.
bool verify_group_closure(const std::vector<Eigen::MatrixXcd>& members,
                          double tol = 1e-8);

// Checks the containment chain G <= Gamma <= D <= Sigma, Gamma <= Delta(a,b)
// for each tested slice, and the slice identities Delta(2,0) = Sigma and
// Delta(*,0) = D, for every candidate.  Violations indicate implementation
// bugs, not properties of the map.
struct ContainmentViolation {
  int candidate;        // index into the candidate list
  std::string relation; // which implication or equivalence failed
};

struct ContainmentAudit {
  int candidates_checked = 0;
  std::vector<ContainmentViolation> violations;
};

ContainmentAudit containment_audit(
    const RationalBallMap& f, const std::vector<Eigen::MatrixXcd>& candidates,
    const std::vector<std::pair<int, int>>& delta_slices = {
        {2, 0}, {0, 2}, {1, 1}, {2, 2}, {-1, 0}, {-1, -1}},
    double threshold = tol::membership);

}  // namespace ballmap
