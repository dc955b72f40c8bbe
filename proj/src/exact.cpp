#include "tspcaf/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>

#include "tspcaf/error.hpp"

namespace tspcaf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_arcs(const Instance& instance, const ArcSet& arcs) {
  if (arcs.vertex_count() != instance.size()) {
    throw Error(ErrorCode::InvalidArgument, "arc set and instance disagree on vertex count");
  }
}

std::vector<int> order_from_successors(const std::vector<int>& succ) {
  std::vector<int> order;
  order.reserve(succ.size());
  int v = 0;
  do {
    order.push_back(v);
    v = succ[v];
  } while (v != 0 && order.size() <= succ.size());
  return order;
}

// Cycles of a successor function whose in/out degrees are already known to be 1.
std::vector<std::vector<int>> cycles_of(const std::vector<int>& succ) {
  const int n = static_cast<int>(succ.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int v = start; !seen[v]; v = succ[v]) {
      seen[v] = 1;
      cycle.push_back(v);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace

const char* to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::TimeLimit: return "TimeLimit";
  }
  return "Unknown";
}

const char* to_string(Engine engine) noexcept {
  switch (engine) {
    case Engine::HeldKarp: return "HeldKarp";
    case Engine::BranchBound: return "BranchBound";
  }
  return "Unknown";
}

SolveResult held_karp(const Instance& instance, const ArcSet& arcs, const SolveOptions& options) {
  const auto start = Clock::now();
  const int n = instance.size();
  if (n > kHeldKarpMaxVertices) {
    throw Error(ErrorCode::TooLarge, "Held-Karp supports at most " +
                                         std::to_string(kHeldKarpMaxVertices) + " vertices, got " +
                                         std::to_string(n));
  }
  check_arcs(instance, arcs);

  SolveResult result;
  result.engine = Engine::HeldKarp;
  result.best_bound = -kInf;

  // Vertex v >= 1 is bit v-1; vertex 0 anchors every tour.
  const int m = n - 1;
  const std::size_t masks = std::size_t{1} << m;
  const auto at = [m](std::size_t mask, int last) {
    return mask * static_cast<std::size_t>(m) + static_cast<std::size_t>(last);
  };
  std::vector<double> dp(masks * static_cast<std::size_t>(m), kInf);
  for (int j = 0; j < m; ++j) {
    if (arcs.contains(0, j + 1)) dp[at(std::size_t{1} << j, j)] = instance.cost(0, j + 1);
  }

  for (std::size_t mask = 1; mask < masks; ++mask) {
    if ((mask & 0xFFF) == 0 && seconds_since(start) > options.time_limit) {
      result.status = SolveStatus::TimeLimit;
      result.elapsed = seconds_since(start);
      return result;
    }
    for (int j = 0; j < m; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const double base = dp[at(mask, j)];
      if (base == kInf) continue;
      for (int k = 0; k < m; ++k) {
        if (mask & (std::size_t{1} << k)) continue;
        if (!arcs.contains(j + 1, k + 1)) continue;
        double& slot = dp[at(mask | (std::size_t{1} << k), k)];
        const double candidate = base + instance.cost(j + 1, k + 1);
        if (candidate < slot) slot = candidate;
      }
    }
  }

  const std::size_t full = masks - 1;
  double best = kInf;
  int best_last = -1;
  for (int j = 0; j < m; ++j) {
    if (!arcs.contains(j + 1, 0)) continue;
    const double value = dp[at(full, j)] + instance.cost(j + 1, 0);
    if (value < best) {
      best = value;
      best_last = j;
    }
  }

  if (best_last < 0) {
    result.status = SolveStatus::Infeasible;
    result.best_bound = kInf;
    result.elapsed = seconds_since(start);
    return result;
  }

  // Walk predecessors back to the anchor; the forward pass stored exact sums,
  // so equality identifies a predecessor.
  std::vector<int> reversed;
  std::size_t mask = full;
  int last = best_last;
  while (true) {
    reversed.push_back(last + 1);
    const std::size_t prev_mask = mask & ~(std::size_t{1} << last);
    if (prev_mask == 0) break;
    const double target = dp[at(mask, last)];
    int prev = -1;
    for (int i = 0; i < m; ++i) {
      if (!(prev_mask & (std::size_t{1} << i)) || !arcs.contains(i + 1, last + 1)) continue;
      if (dp[at(prev_mask, i)] + instance.cost(i + 1, last + 1) == target) {
        prev = i;
        break;
      }
    }
    if (prev < 0) throw Error(ErrorCode::InvalidArgument, "Held-Karp backtrack failed");
    mask = prev_mask;
    last = prev;
  }
  std::vector<int> order{0};
  order.insert(order.end(), reversed.rbegin(), reversed.rend());

  result.tour = make_tour(instance, std::move(order));
  result.status = SolveStatus::Optimal;
  result.objective = result.tour->cost;
  result.best_bound = result.tour->cost;
  result.elapsed = seconds_since(start);
  return result;
}

std::optional<std::pair<double, std::vector<int>>> solve_assignment(
    const Instance& instance, const std::function<bool(int, int)>& allowed) {
  // Shortest augmenting path Hungarian method, 1-based with a dummy column 0.
  // Forbidden entries never enter the reduced-cost scan, so they behave as
  // missing edges rather than large costs.
  const int n = instance.size();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  std::vector<char> ok(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) ok[static_cast<std::size_t>(i) * n + j] = i != j && allowed(i, j);
  }

  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const int row0 = match[col0];
      double delta = kInf;
      int col1 = -1;
      for (int col = 1; col <= n; ++col) {
        if (used[col]) continue;
        if (ok[static_cast<std::size_t>(row0 - 1) * n + (col - 1)]) {
          const double reduced = instance.cost(row0 - 1, col - 1) - u[row0] - v[col];
          if (reduced < minv[col]) {
            minv[col] = reduced;
            way[col] = col0;
          }
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      if (col1 < 0 || delta == kInf) return std::nullopt;
      for (int col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<int> succ(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int col = 1; col <= n; ++col) {
    succ[match[col] - 1] = col - 1;
  }
  for (int i = 0; i < n; ++i) total += instance.cost(i, succ[i]);
  return std::make_pair(total, std::move(succ));
}

namespace {

struct BbNode {
  double bound = 0.0;
  int depth = 0;
  long long id = 0;
  std::vector<Arc> included;
  std::vector<Arc> excluded;
  std::vector<int> succ;
};

struct NodeOrder {
  bool operator()(const BbNode& a, const BbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

// Forced successor/predecessor tables for a node's included arcs. Returns
// false when the included arcs conflict or close a cycle shorter than n.
bool forced_tables(int n, const std::vector<Arc>& included, std::vector<int>& fsucc,
                   std::vector<int>& fpred) {
  fsucc.assign(static_cast<std::size_t>(n), -1);
  fpred.assign(static_cast<std::size_t>(n), -1);
  for (const Arc& a : included) {
    if ((fsucc[a.from] >= 0 && fsucc[a.from] != a.to) ||
        (fpred[a.to] >= 0 && fpred[a.to] != a.from)) {
      return false;
    }
    fsucc[a.from] = a.to;
    fpred[a.to] = a.from;
  }
  // Walk forced chains from every vertex to catch short forced cycles.
  for (int s = 0; s < n; ++s) {
    int v = s;
    int len = 0;
    while (fsucc[v] >= 0 && len <= n) {
      v = fsucc[v];
      ++len;
      if (v == s) {
        if (len < n) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace

SolveResult branch_and_bound(const Instance& instance, const ArcSet& arcs,
                             const SolveOptions& options) {
  const auto start = Clock::now();
  const int n = instance.size();
  check_arcs(instance, arcs);

  SolveResult result;
  result.engine = Engine::BranchBound;

  double incumbent = kInf;
  std::vector<int> incumbent_succ;
  long long next_id = 0;
  double reported_bound = -kInf;
  std::priority_queue<BbNode, std::vector<BbNode>, NodeOrder> open;

  const auto prune_level = [&]() {
    return incumbent == kInf ? kInf : incumbent - 1e-9 * std::max(1.0, std::abs(incumbent));
  };
  const auto report = [&](double bound) {
    reported_bound = std::max(reported_bound, bound);
    if (options.on_progress) options.on_progress(reported_bound, incumbent);
  };

  std::vector<int> fsucc, fpred;
  std::vector<char> banned(static_cast<std::size_t>(n) * n);

  // Solves the node's relaxation; queues it, records it as incumbent, or drops it.
  const auto evaluate = [&](BbNode node) {
    ++result.nodes;
    if (!forced_tables(n, node.included, fsucc, fpred)) return;
    std::fill(banned.begin(), banned.end(), 0);
    for (const Arc& a : node.excluded) banned[static_cast<std::size_t>(a.from) * n + a.to] = 1;
    for (const Arc& a : node.included) {
      if (banned[static_cast<std::size_t>(a.from) * n + a.to] || !arcs.contains(a.from, a.to)) {
        return;
      }
    }
    auto solved = solve_assignment(instance, [&](int i, int j) {
      if (!arcs.contains(i, j) || banned[static_cast<std::size_t>(i) * n + j]) return false;
      if (fsucc[i] >= 0 && fsucc[i] != j) return false;
      if (fpred[j] >= 0 && fpred[j] != i) return false;
      return true;
    });
    if (!solved) return;
    node.bound = solved->first;
    node.succ = std::move(solved->second);
    if (node.bound >= prune_level()) return;
    if (cycles_of(node.succ).size() == 1) {
      incumbent = node.bound;
      incumbent_succ = node.succ;
      report(open.empty() ? incumbent : std::min(open.top().bound, incumbent));
      return;
    }
    node.id = next_id++;
    open.push(std::move(node));
  };

  // Root: an infeasible assignment relaxation means no tour fits in the arc set.
  evaluate(BbNode{});
  if (open.empty() && incumbent == kInf) {
    result.status = SolveStatus::Infeasible;
    result.best_bound = kInf;
    result.elapsed = seconds_since(start);
    return result;
  }
  if (!open.empty()) report(std::min(open.top().bound, incumbent));

  bool timed_out = false;
  while (!open.empty()) {
    if (open.top().bound >= prune_level()) break;
    if (seconds_since(start) > options.time_limit) {
      timed_out = true;
      break;
    }
    BbNode node = open.top();
    open.pop();

    auto cycles = cycles_of(node.succ);
    const auto smallest = std::min_element(
        cycles.begin(), cycles.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<Arc> branch_arcs;
    for (std::size_t t = 0; t < smallest->size(); ++t) {
      branch_arcs.push_back({(*smallest)[t], (*smallest)[(t + 1) % smallest->size()]});
    }
    std::stable_sort(branch_arcs.begin(), branch_arcs.end(), [&](const Arc& a, const Arc& b) {
      return instance.cost(a.from, a.to) < instance.cost(b.from, b.to);
    });

    // Child t excludes arc t and includes arcs 0..t-1, so children partition
    // the parent's feasible tours.
    for (std::size_t t = 0; t < branch_arcs.size(); ++t) {
      BbNode child;
      child.depth = node.depth + 1;
      child.included = node.included;
      child.included.insert(child.included.end(), branch_arcs.begin(), branch_arcs.begin() + t);
      child.excluded = node.excluded;
      child.excluded.push_back(branch_arcs[t]);
      evaluate(std::move(child));
    }
    report(open.empty() ? incumbent : std::min(open.top().bound, incumbent));
  }

  result.elapsed = seconds_since(start);
  if (incumbent < kInf) {
    result.tour = make_tour(instance, order_from_successors(incumbent_succ));
    result.objective = result.tour->cost;
  }
  if (timed_out) {
    result.status = SolveStatus::TimeLimit;
    result.best_bound = reported_bound;
    return result;
  }
  if (incumbent == kInf) {
    result.status = SolveStatus::Infeasible;
    result.best_bound = kInf;
    return result;
  }
  result.status = SolveStatus::Optimal;
  result.best_bound = result.tour->cost;
  report(incumbent);
  return result;
}

SolveResult solve(Engine engine, const Instance& instance, const ArcSet& arcs,
                  const SolveOptions& options) {
  return engine == Engine::HeldKarp ? held_karp(instance, arcs, options)
                                    : branch_and_bound(instance, arcs, options);
}

std::vector<std::vector<int>> find_subtours(const ArcSelection& selection, int n) {
  std::vector<int> succ(static_cast<std::size_t>(n), -1);
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (const Arc& a : selection.chosen) {
    if (a.from < 0 || a.to < 0 || a.from >= n || a.to >= n || a.from == a.to) {
      throw Error(ErrorCode::DegreeViolation, "arc (" + std::to_string(a.from) + "," +
                                                  std::to_string(a.to) + ") is not a valid arc");
    }
    if (succ[a.from] >= 0) {
      throw Error(ErrorCode::DegreeViolation,
                  "vertex " + std::to_string(a.from) + " has more than one successor");
    }
    succ[a.from] = a.to;
    ++indegree[a.to];
  }
  for (int v = 0; v < n; ++v) {
    if (succ[v] < 0) {
      throw Error(ErrorCode::DegreeViolation, "vertex " + std::to_string(v) + " has no successor");
    }
    if (indegree[v] != 1) {
      throw Error(ErrorCode::DegreeViolation,
                  "vertex " + std::to_string(v) + " has in-degree " + std::to_string(indegree[v]));
    }
  }
  return cycles_of(succ);
}

bool validate_tour(const Instance& instance, const ArcSet& arcs, const Tour& tour) {
  const int n = instance.size();
  if (arcs.vertex_count() != n) return false;
  if (!is_permutation_of_range(tour.order, n)) return false;
  if (!tour_uses_only(tour, arcs)) return false;
  const double actual = tour_cost(instance, tour.order);
  return std::abs(actual - tour.cost) <= 1e-6 * std::max(1.0, std::abs(actual));
}

}  // namespace tspcaf
