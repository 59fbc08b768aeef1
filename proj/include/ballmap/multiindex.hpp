#pragma once

#include <vector>

namespace ballmap {

// Exponent vector of a monomial z^e = z_1^{e_1} ... z_n^{e_n}.
using Multiindex = std::vector<int>;

int total_degree(const Multiindex& e);

// True if a divides b componentwise (a_i <= b_i for all i).
bool divides(const Multiindex& a, const Multiindex& b);

Multiindex add(const Multiindex& a, const Multiindex& b);
Multiindex subtract(const Multiindex& a, const Multiindex& b);

// Graded lexicographic monomial order: lower total degree first; within a
// degree the exponent vector that is lexicographically larger comes first,
// so for n = 2, degree 2 the order is (2,0), (1,1), (0,2).
struct GradedLexLess {
  bool operator()(const Multiindex& a, const Multiindex& b) const;
};

}  // namespace ballmap
