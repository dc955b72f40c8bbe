#pragma once

// Test-only helpers: data access and brute-force oracles that share no code
// path with the solvers they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tspcaf/instance.hpp"
#include "tspcaf/tsplib.hpp"

namespace tspcaf::testing {

inline std::string data_path(const std::string& name) {
  return std::string(TSPCAF_DATA_DIR) + "/" + name;
}

inline const RawTsplibFile& berlin52() {
  static const RawTsplibFile file = load_tsplib(data_path("berlin52.tsp"));
  return file;
}

inline Instance berlin(int n) { return take_prefix(berlin52(), n); }

inline Instance random_instance(std::mt19937_64& rng, int n, double side = 1000.0) {
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<Point> points;
  for (int i = 0; i < n; ++i) points.push_back({coord(rng), coord(rng)});
  return Instance::from_points(std::move(points));
}

/// Minimum tour cost by enumerating every permutation with vertex 0 fixed.
/// Directed: arc (order[i], order[i+1]) must be in `arcs`. nullopt if none.
inline std::optional<double> brute_force_optimum(const Instance& instance, const ArcSet& arcs) {
  const int n = instance.size();
  std::vector<int> rest(static_cast<std::size_t>(n - 1));
  std::iota(rest.begin(), rest.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    int prev = 0;
    bool ok = true;
    for (int v : rest) {
      if (!arcs.contains(prev, v)) {
        ok = false;
        break;
      }
      total += instance.cost(prev, v);
      prev = v;
    }
    if (!ok || !arcs.contains(prev, 0)) continue;
    total += instance.cost(prev, 0);
    best = std::min(best, total);
  } while (std::next_permutation(rest.begin(), rest.end()));
  if (best == std::numeric_limits<double>::infinity()) return std::nullopt;
  return best;
}

/// Minimum-cost perfect assignment (successor function, no fixed points) by
/// enumeration over all permutations.
template <typename Allowed>
std::optional<double> brute_force_assignment(const Instance& instance, Allowed allowed) {
  const int n = instance.size();
  std::vector<int> succ(static_cast<std::size_t>(n));
  std::iota(succ.begin(), succ.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (succ[i] == i || !allowed(i, succ[i])) {
        ok = false;
      } else {
        total += instance.cost(i, succ[i]);
      }
    }
    if (ok) best = std::min(best, total);
  } while (std::next_permutation(succ.begin(), succ.end()));
  if (best == std::numeric_limits<double>::infinity()) return std::nullopt;
  return best;
}

inline ArcSet random_arc_set(std::mt19937_64& rng, int n, double density) {
  std::bernoulli_distribution keep(density);
  ArcSet arcs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && keep(rng)) arcs.insert(i, j);
    }
  }
  return arcs;
}

/// Random permutation-derived successor function with at least one fixed
/// point removed: a degree-feasible selection (possibly a single tour).
inline std::vector<Arc> random_degree_feasible(std::mt19937_64& rng, int n) {
  while (true) {
    std::vector<int> succ(static_cast<std::size_t>(n));
    std::iota(succ.begin(), succ.end(), 0);
    std::shuffle(succ.begin(), succ.end(), rng);
    bool fixed_point = false;
    for (int i = 0; i < n; ++i) fixed_point |= succ[i] == i;
    if (fixed_point) continue;
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i) arcs.push_back({i, succ[i]});
    return arcs;
  }
}

/// Reference variable counts after CAF for berlin52 prefixes, n = 5..50.
inline const std::vector<std::pair<int, int>>& table2_with_caf() {
  static const std::vector<std::pair<int, int>> rows = {
      {5, 18},    {6, 24},    {7, 34},    {8, 42},    {9, 58},    {10, 64},   {11, 88},
      {12, 96},   {13, 118},  {14, 126},  {15, 154},  {16, 166},  {17, 194},  {18, 208},
      {19, 244},  {20, 262},  {21, 294},  {22, 312},  {23, 352},  {24, 376},  {25, 420},
      {26, 432},  {27, 474},  {28, 486},  {29, 540},  {30, 562},  {31, 622},  {32, 648},
      {33, 708},  {34, 738},  {35, 806},  {36, 838},  {37, 910},  {38, 946},  {39, 1022},
      {40, 1056}, {41, 1136}, {42, 1166}, {43, 1238}, {44, 1274}, {45, 1358}, {46, 1390},
      {47, 1472}, {48, 1514}, {49, 1608}, {50, 1652}};
  return rows;
}

/// Reference reduction gaps (integer percent), n = 5..50.
inline const std::vector<int>& table2_gap() {
  static const std::vector<int> gaps = {10, 20, 19, 25, 19, 29, 20, 27, 24, 31, 27, 31,
                                        29, 32, 29, 31, 30, 32, 30, 32, 30, 34, 32, 36,
                                        33, 35, 33, 35, 33, 34, 32, 33, 32, 33, 31, 32,
                                        31, 32, 31, 33, 31, 33, 32, 33, 32, 33};
  return gaps;
}

struct Table3Golden {
  int n;
  double without;
  double with;
};

/// Reference optimal tour lengths without and with CAF, n = 5..20.
inline const std::vector<Table3Golden>& table3_golden() {
  static const std::vector<Table3Golden> rows = {
      {5, 2314.55, 2314.55},  {6, 2315.15, 2323.20},  {7, 2321.39, 2321.39},
      {8, 2550.94, 2550.94},  {9, 2820.38, 2874.44},  {10, 2826.50, 2826.50},
      {11, 4038.44, 4038.44}, {12, 4056.68, 4056.68}, {13, 4564.46, 4564.46},
      {14, 4946.85, 4965.33}, {15, 4967.30, 4967.30}, {16, 4990.46, 4990.46},
      {17, 5048.45, 5048.45}, {18, 5139.38, 5139.38}, {19, 5164.22, 5164.22},
      {20, 5270.86, 5270.86}};
  return rows;
}

}  // namespace tspcaf::testing
