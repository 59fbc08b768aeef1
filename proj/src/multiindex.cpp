#include "ballmap/multiindex.hpp"

#include <numeric>
#include <stdexcept>

namespace ballmap {

int total_degree(const Multiindex& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

bool divides(const Multiindex& a, const Multiindex& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Multiindex add(const Multiindex& a, const Multiindex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multiindex dimension mismatch");
  Multiindex c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Multiindex subtract(const Multiindex& a, const Multiindex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multiindex dimension mismatch");
  Multiindex c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    c[i] = a[i] - b[i];
    if (c[i] < 0) throw std::invalid_argument("multiindex subtraction went negative");
  }
  return c;
}

bool GradedLexLess::operator()(const Multiindex& a, const Multiindex& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  // Same degree: z1-dominant monomials first.
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

}  // namespace ballmap
