#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tspcaf/instance.hpp"

namespace tspcaf {

enum class SolveStatus { Optimal, Infeasible, TimeLimit };
enum class Engine { HeldKarp, BranchBound };

const char* to_string(SolveStatus status) noexcept;
const char* to_string(Engine engine) noexcept;

inline constexpr double kDefaultTimeLimit = 300.0;
inline constexpr int kHeldKarpMaxVertices = 24;

struct SolveOptions {
  double time_limit = kDefaultTimeLimit;
  /// Branch-and-bound only: called whenever the global lower bound or the
  /// incumbent changes, with (best_bound, incumbent or +inf).
  std::function<void(double, double)> on_progress;
};

struct SolveResult {
  std::optional<Tour> tour;
  SolveStatus status = SolveStatus::Infeasible;
  /// Proven lower bound. -inf when no valid bound is known.
  double best_bound = 0.0;
  std::optional<double> objective;
  double elapsed = 0.0;
  Engine engine = Engine::HeldKarp;
  /// Branch-and-bound nodes evaluated (0 for Held-Karp).
  long long nodes = 0;
};

/// Exact DP over (visited set, last vertex) anchored at vertex 0. Arcs missing
/// from `arcs` are absent transitions. Throws TooLarge above 24 vertices.
SolveResult held_karp(const Instance& instance, const ArcSet& arcs,
                      const SolveOptions& options = {});

/// Best-first branch and bound on the assignment relaxation, branching on the
/// arcs of the smallest subtour.
SolveResult branch_and_bound(const Instance& instance, const ArcSet& arcs,
                             const SolveOptions& options = {});

SolveResult solve(Engine engine, const Instance& instance, const ArcSet& arcs,
                  const SolveOptions& options = {});

/// Support {(i, j) : x_ij = 1} of a binary arc assignment.
struct ArcSelection {
  std::vector<Arc> chosen;
};

/// Directed cycles of the successor function, each starting at its smallest
/// vertex, ordered by that vertex. Throws DegreeViolation unless every vertex
/// has exactly one outgoing and one incoming chosen arc.
std::vector<std::vector<int>> find_subtours(const ArcSelection& selection, int n);

/// Assignment problem with forbidden entries. Returns successor[i] for each
/// row, or nullopt when no perfect assignment avoids the forbidden entries.
/// `allowed(i, j)` decides availability; diagonal entries are never used.
std::optional<std::pair<double, std::vector<int>>> solve_assignment(
    const Instance& instance, const std::function<bool(int, int)>& allowed);

/// True iff the tour is a permutation, uses only arcs in `arcs`, and its
/// stated cost matches the recomputed cost within 1e-6 relative.
bool validate_tour(const Instance& instance, const ArcSet& arcs, const Tour& tour);

}  // namespace tspcaf
