#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tspcaf/instance.hpp"

namespace tspcaf {

/// Simulated-annealing knobs. Use `AnnealParams::defaults_for` to get the
/// instance-scaled defaults.
struct AnnealParams {
  double max_time = 10.0;
  double initial_temperature = 1.0;
  /// The schedule ends once the temperature drops below
  /// initial_temperature * final_temperature_ratio.
  double final_temperature_ratio = 1e-3;
  double cooling_rate = 0.995;
  int moves_per_temperature = 100;
  std::uint64_t seed = 1;
  double big_m = 0.0;
  /// Hard cap on proposed moves, 0 for none. Gives a budget that does not
  /// depend on the wall clock.
  std::uint64_t max_moves = 0;

  static AnnealParams defaults_for(const Instance& instance);

  /// Throws InvalidArgument on cooling_rate outside (0, 1), nonpositive
  /// temperatures or moves, or big_m <= n * max(c_ij).
  void validate(const Instance& instance) const;
};

/// Applies `key=value` lines (blank lines and `#` comments skipped) on top of
/// `params`. Keys match the field names. Throws ParseError.
void load_anneal_config(std::istream& in, AnnealParams& params);

struct AnnealResult {
  Tour tour;
  bool feasible_in_arcs = false;
  /// Penalized cost of `tour`: cost + big_m * (arcs outside the set).
  double penalized_cost = 0.0;
  int forbidden_arcs = 0;
  std::uint64_t moves = 0;
  /// Annealing loop only.
  double elapsed = 0.0;
  /// Penalty-table construction plus annealing.
  double total_elapsed = 0.0;
};

/// Permutation-space annealing with 2-opt and or-opt moves over the penalized
/// cost. Deterministic for a fixed seed as long as the schedule finishes
/// before max_time. Requires n >= 4.
AnnealResult anneal_solve(const Instance& instance, const ArcSet& arcs,
                          const AnnealParams& params);

struct TrialStats {
  int n = 0;
  int runs = 0;
  int feasible_runs = 0;
  double of_opt = 0.0;
  /// Over feasible runs only; absent when none was feasible.
  std::optional<double> of_avg;
  std::optional<double> of_std;
  /// Integer percent, rounded half away from zero.
  std::optional<double> gap_percent;
  /// Unrounded 100 * (of_avg - of_opt) / of_opt.
  std::optional<double> gap_raw;
  double pct_solved = 0.0;
  double time_avg = 0.0;
  double time_std = 0.0;
  double solve_time_avg = 0.0;
  double solve_time_std = 0.0;
  /// Per-run results in seed order.
  std::vector<AnnealResult> run_results;
};

/// Runs `num_runs` anneals with seeds params.seed + r and aggregates them with
/// population standard deviations.
TrialStats run_trials(const Instance& instance, const ArcSet& arcs, const AnnealParams& params,
                      int num_runs, double of_opt);

}  // namespace tspcaf
