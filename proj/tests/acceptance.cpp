// Acceptance checks against berlin52. Prints one PASS/FAIL line per criterion
// and exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "support.hpp"
#include "tspcaf/bench.hpp"
#include "tspcaf/caf.hpp"
#include "tspcaf/exact.hpp"
#include "tspcaf/lp_export.hpp"

namespace {

using namespace tspcaf;
using Clock = std::chrono::steady_clock;

constexpr double kReferenceTolerance = 0.01;
constexpr double kEngineTolerance = 1e-6;

struct Check {
  bool ok = true;
  std::string detail;

  void fail(std::string message) {
    if (ok) detail = std::move(message);
    ok = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ExperimentConfig berlin_config(int first, int last) {
  ExperimentConfig config;
  config.instance_path = testing::data_path("berlin52.tsp");
  config.n_range = {first, last};
  config.reproducible = true;
  return config;
}

bool close_relative(double a, double b) {
  return std::abs(a - b) <= kEngineTolerance * std::max(std::abs(a), std::abs(b));
}

Check table2_counts() {
  Check c;
  const auto start = Clock::now();
  const auto rows = run_table2(testing::berlin52(), berlin_config(5, 50));
  const double elapsed = seconds_since(start);
  const auto& with = testing::table2_with_caf();
  const auto& gap = testing::table2_gap();
  if (rows.size() != with.size()) c.fail("row count");
  for (std::size_t r = 0; r < rows.size() && r < with.size(); ++r) {
    const auto n = rows[r].n;
    if (rows[r].vars_without != std::int64_t{n} * (n - 1)) c.fail(fmt::format("vars_without n={}", n));
    if (rows[r].vars_with != with[r].second) c.fail(fmt::format("vars_with n={}", n));
    if (rows[r].gap_percent != gap[r]) c.fail(fmt::format("gap n={}", n));
  }
  if (elapsed >= 1.0) c.fail(fmt::format("runtime {:.3f} s", elapsed));
  if (c.ok) c.detail = fmt::format("46 rows exact, {:.3f} s", elapsed);
  return c;
}

Check table3_objectives(int first, int last) {
  Check c;
  const auto start = Clock::now();
  for (const auto& golden : testing::table3_golden()) {
    if (golden.n < first || golden.n > last) continue;
    const auto inst = testing::berlin(golden.n);
    const auto full = held_karp(inst, complete_arcs(inst));
    const auto reduced = held_karp(inst, caf_filter(inst).arcs);
    if (full.status != SolveStatus::Optimal || reduced.status != SolveStatus::Optimal) {
      c.fail(fmt::format("n={} not optimal", golden.n));
      continue;
    }
    if (std::abs(*full.objective - golden.without) > kReferenceTolerance) {
      c.fail(fmt::format("n={} without {:.4f} vs {:.2f}", golden.n, *full.objective, golden.without));
    }
    if (std::abs(*reduced.objective - golden.with) > kReferenceTolerance) {
      c.fail(fmt::format("n={} with {:.4f} vs {:.2f}", golden.n, *reduced.objective, golden.with));
    }
  }
  if (c.ok) c.detail = fmt::format("n={}..{} within {}, {:.1f} s", first, last, kReferenceTolerance, seconds_since(start));
  return c;
}

Check table3_with_extension() {
  Check gating = table3_objectives(5, 17);
  const Check extended = table3_objectives(18, 20);
  if (gating.ok) {
    gating.detail += extended.ok ? "; extended n=18..20 also within tolerance"
                                 : "; extended n=18..20 (non-gating) mismatch: " + extended.detail;
  }
  return gating;
}

Check feasibility() {
  Check c;
  for (int n = 5; n <= 52; ++n) {
    const auto inst = testing::berlin(n);
    const auto caf = caf_filter(inst);
    const auto cert = dirac_certificate(caf.arcs);
    if (cert.min_degree < (n + 1) / 2 || !cert.hamiltonicity_guaranteed) {
      c.fail(fmt::format("n={} min degree {}", n, cert.min_degree));
    }
    if (n > 17) continue;
    const auto result = held_karp(inst, caf.arcs);
    if (result.status != SolveStatus::Optimal || !result.tour ||
        !validate_tour(inst, caf.arcs, *result.tour)) {
      c.fail(fmt::format("n={} no valid tour", n));
    }
  }
  if (c.ok) c.detail = "min degree >= ceil(n/2) for n=5..52, optimal tours for n<=17";
  return c;
}

Check monotone_restriction() {
  Check c;
  std::vector<int> strict;
  for (int n = 5; n <= 17; ++n) {
    const auto inst = testing::berlin(n);
    const double full = *held_karp(inst, complete_arcs(inst)).objective;
    const double reduced = *held_karp(inst, caf_filter(inst).arcs).objective;
    if (reduced < full - kReferenceTolerance) c.fail(fmt::format("n={} reduced below full", n));
    if (reduced > full + kReferenceTolerance) strict.push_back(n);
  }
  if (strict != std::vector<int>{6, 9, 14}) c.fail("strict set differs from {6, 9, 14}");
  if (c.ok) c.detail = "strict at n=6, 9, 14 only";
  return c;
}

Check oracle_equivalence() {
  Check c;
  const auto compare = [&](const Instance& inst, const ArcSet& arcs, const std::string& label) {
    const auto hk = held_karp(inst, arcs);
    const auto bb = branch_and_bound(inst, arcs);
    if (hk.status != bb.status) {
      c.fail(label + " status differs");
    } else if (hk.objective && !close_relative(*hk.objective, *bb.objective)) {
      c.fail(fmt::format("{} {:.6f} vs {:.6f}", label, *hk.objective, *bb.objective));
    }
  };
  for (int n = 5; n <= 12; ++n) {
    const auto inst = testing::berlin(n);
    compare(inst, complete_arcs(inst), fmt::format("berlin n={} full", n));
    compare(inst, caf_filter(inst).arcs, fmt::format("berlin n={} caf", n));
  }
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 50; ++i) {
    const int n = 6 + i % 6;
    const auto inst = testing::random_instance(rng, n);
    compare(inst, complete_arcs(inst), fmt::format("random #{} n={}", i, n));
  }
  if (c.ok) c.detail = "berlin n=5..12 both regimes, 50 random instances";
  return c;
}

Check subtour_machinery() {
  Check c;
  std::mt19937_64 rng(7);
  int multi = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 3 + i % 8;
    const auto chosen = testing::random_degree_feasible(rng, n);
    const auto cycles = find_subtours({chosen}, n);
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const auto& cycle : cycles) {
      for (int v : cycle) ++seen[v];
    }
    for (int count : seen) {
      if (count != 1) c.fail(fmt::format("selection #{} not partitioned", i));
    }

    const auto inst = testing::berlin(n);
    const auto model = export_ilp(inst, complete_arcs(inst));
    if (model.num_subtour_constraints != (std::int64_t{1} << n) - n - 2) {
      c.fail(fmt::format("n={} subtour row count", n));
    }
    const auto parsed = parse_lp(model.body);
    std::map<std::string, int> values;
    for (const Arc& a : chosen) values[variable_name(a.from, a.to)] = 1;
    bool sec_violated = false;
    for (const auto* row : parsed.violated(values)) sec_violated |= row->name.rfind("sec_", 0) == 0;
    if (cycles.size() > 1) {
      ++multi;
      if (!sec_violated) c.fail(fmt::format("selection #{} multi-cycle not cut", i));
    } else if (!parsed.violated(values).empty()) {
      c.fail(fmt::format("selection #{} tour violates a row", i));
    }
  }
  if (c.ok) c.detail = fmt::format("200 selections, {} multi-cycle", multi);
  return c;
}

Check emulator_protocol() {
  Check c;
  const auto start = Clock::now();
  auto config = berlin_config(5, 11);
  config.runs = 5;
  const auto rows = run_table4(testing::berlin52(), config);
  for (const auto& row : rows) {
    const auto inst = testing::berlin(row.n);
    for (const bool with : {false, true}) {
      const TrialStats& s = with ? row.with : row.without;
      const auto arcs = arcs_for(inst, with, std::nullopt);
      if (!s.gap_percent || *s.gap_percent != 0.0 || s.pct_solved != 100.0) {
        c.fail(fmt::format("n={} {} gap/solved", row.n, with ? "with" : "without"));
      }
      if (s.gap_raw && *s.gap_raw < -1e-9) c.fail(fmt::format("n={} negative gap", row.n));
      for (const auto& run : s.run_results) {
        if (run.feasible_in_arcs && !validate_tour(inst, arcs, run.tour)) {
          c.fail(fmt::format("n={} invalid reported tour", row.n));
        }
      }
    }
  }
  std::ostringstream first, second;
  write_table4_csv(first, rows, config);
  write_table4_csv(second, run_table4(testing::berlin52(), config), config);
  if (first.str() != second.str()) c.fail("CSV differs between identical runs");
  if (c.ok) c.detail = fmt::format("n=5..11, 5 runs, gap 0 and 100% solved, {:.1f} s", seconds_since(start));
  return c;
}

Check export_integrity() {
  Check c;
  for (int n = 3; n <= 12; ++n) {
    const auto inst = testing::berlin(n);
    for (const bool with : {false, true}) {
      const auto arcs = arcs_for(inst, with, std::nullopt);
      const auto model = export_ilp(inst, arcs);
      const ModelStats expected{static_cast<std::int64_t>(arcs.size()), 2 * n,
                                (std::int64_t{1} << n) - n - 2};
      if (model_stats(model) != expected) c.fail(fmt::format("n={} round trip", n));
    }
  }
  const auto five = testing::berlin(5);
  if (model_stats(export_ilp(five, complete_arcs(five))) != ModelStats{20, 10, 25}) {
    c.fail("n=5 complete model");
  }
  if (c.ok) c.detail = "n=3..12 both regimes, n=5 gives (20, 10, 25)";
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    Check (*run)();
  };
  const Criterion criteria[] = {
      {"AC1", "Variable counts and reduction gaps", table2_counts},
      {"AC2", "Exact objectives on berlin52 prefixes", table3_with_extension},
      {"AC3", "CAF feasibility", feasibility},
      {"AC4", "Monotone restriction", monotone_restriction},
      {"AC5", "Branch and bound agrees with Held-Karp", oracle_equivalence},
      {"AC6", "Subtour detection and elimination rows", subtour_machinery},
      {"AC7", "Annealing emulator protocol", emulator_protocol},
      {"AC8", "Model export round trip", export_integrity},
  };

  bool all_ok = true;
  for (const auto& criterion : criteria) {
    Check result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    const char* tag = result.ok ? "PASS" : "FAIL";
    fmt::print("[{}] {} {}: {}\n", tag, criterion.id, criterion.title, result.detail);
    std::fflush(stdout);
    all_ok = all_ok && result.ok;
  }
  return all_ok ? 0 : 1;
}
