#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tspcaf/anneal.hpp"
#include "tspcaf/exact.hpp"
#include "tspcaf/instance.hpp"
#include "tspcaf/tsplib.hpp"

namespace tspcaf {

inline constexpr std::string_view kVersion = "0.1.0";

struct NRange {
  int first = 5;
  int last = 5;
};

/// Parses `A..B` (or a single integer).
NRange parse_n_range(std::string_view text);

struct ExperimentConfig {
  std::filesystem::path instance_path;
  NRange n_range;
  Engine engine = Engine::HeldKarp;
  bool use_caf = true;
  double time_limit = kDefaultTimeLimit;
  int runs = 5;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
  DistanceRounding rounding = DistanceRounding::None;
  std::optional<int> k_override;
  /// key=value lines applied on top of AnnealParams::defaults_for.
  std::string anneal_overrides;
  /// Leave machine-local timing cells empty so output is byte-stable.
  bool reproducible = false;

  std::string canonical() const;
  /// FNV-1a 64 of canonical().
  std::uint64_t hash() const;
};

/// Throws NTooSmall / NTooLarge when the range leaves [3, dimension].
void check_range(const ExperimentConfig& config, const RawTsplibFile& file);

struct Table2Row {
  int n = 0;
  std::int64_t vars_without = 0;
  std::int64_t vars_with = 0;
  int gap_percent = 0;
};

struct Table3Row {
  int n = 0;
  SolveResult without;
  SolveResult with;
};

struct Table4Row {
  int n = 0;
  TrialStats without;
  TrialStats with;
};

std::vector<Table2Row> run_table2(const RawTsplibFile& file, const ExperimentConfig& config);
std::vector<Table3Row> run_table3(const RawTsplibFile& file, const ExperimentConfig& config);
std::vector<Table4Row> run_table4(const RawTsplibFile& file, const ExperimentConfig& config);

void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows,
                      const ExperimentConfig& config);
/// Columns n,vars_without,vars_with.
void write_fig1_csv(std::ostream& out, const std::vector<Table2Row>& rows,
                    const ExperimentConfig& config);
void write_table3_csv(std::ostream& out, const std::vector<Table3Row>& rows,
                      const ExperimentConfig& config);
void write_table4_csv(std::ostream& out, const std::vector<Table4Row>& rows,
                      const ExperimentConfig& config);

/// The arc set a config selects for an instance: CAF or complete.
ArcSet arcs_for(const Instance& instance, bool use_caf, std::optional<int> k_override);

}  // namespace tspcaf
