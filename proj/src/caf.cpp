#include "tspcaf/caf.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "tspcaf/error.hpp"

namespace tspcaf {

int k_of(int n) {
  if (n < 3) throw Error(ErrorCode::NTooSmall, "k is defined for n >= 3");
  return (n + 1) / 2;
}

CafResult caf_filter(const Instance& instance, std::optional<int> k_override) {
  const int n = instance.size();
  const int k = k_override.value_or(k_of(n));
  if (k < 1 || k > n - 1) {
    throw Error(ErrorCode::InvalidArgument,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "]");
  }

  CafResult result{ArcSet(n), k, std::vector<std::vector<int>>(static_cast<std::size_t>(n))};
  std::vector<int> neighbours;
  neighbours.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    neighbours.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) neighbours.push_back(j);
    }
    // Strict weak order on (c_ij, j): ties on cost go to the lower index.
    std::partial_sort(neighbours.begin(), neighbours.begin() + k, neighbours.end(),
                      [&](int a, int b) {
                        const double ca = instance.cost(i, a);
                        const double cb = instance.cost(i, b);
                        return ca != cb ? ca < cb : a < b;
                      });
    auto& chosen = result.selected[i];
    chosen.assign(neighbours.begin(), neighbours.begin() + k);
    for (int j : chosen) {
      result.arcs.insert(i, j);
      result.arcs.insert(j, i);
    }
  }
  return result;
}

DiracCertificate dirac_certificate(const ArcSet& arcs) {
  const int n = arcs.vertex_count();
  if (n == 0) return {};
  int min_degree = std::numeric_limits<int>::max();
  for (int i = 0; i < n; ++i) {
    int degree = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i && (arcs.contains(i, j) || arcs.contains(j, i))) ++degree;
    }
    min_degree = std::min(min_degree, degree);
  }
  return {min_degree, n >= 3 && 2 * min_degree >= n};
}

}  // namespace tspcaf
