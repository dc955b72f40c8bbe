#pragma once

#include <optional>
#include <vector>

#include "tspcaf/instance.hpp"

namespace tspcaf {

struct CafResult {
  ArcSet arcs;
  int k = 0;
  /// selected[i] holds the k neighbours chosen for vertex i, cheapest first.
  std::vector<std::vector<int>> selected;
};

/// ceil(n / 2).
int k_of(int n);

/// Cost-based arc filtering. Each vertex keeps its k cheapest neighbours
/// (ties broken by ascending vertex index) and both directions of every kept
/// pair enter the arc set.
///
/// `k_override` is experimental: any k other than ceil(n/2) voids the
/// Hamiltonicity guarantee.
CafResult caf_filter(const Instance& instance, std::optional<int> k_override = std::nullopt);

struct DiracCertificate {
  int min_degree = 0;
  bool hamiltonicity_guaranteed = false;
};

/// Minimum degree of the undirected graph where {i, j} is an edge when (i, j)
/// or (j, i) is in `arcs`. The guarantee holds when n >= 3 and
/// 2 * min_degree >= n. It is sufficient, not necessary.
DiracCertificate dirac_certificate(const ArcSet& arcs);

}  // namespace tspcaf
