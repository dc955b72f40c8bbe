#include "tspcaf/bench.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "tspcaf/caf.hpp"
#include "tspcaf/error.hpp"

namespace tspcaf {
namespace {

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::InvalidArgument, "bad integer `" + std::string(text) + "`");
  }
  return value;
}

void write_header(std::ostream& out, std::string_view table, const ExperimentConfig& config) {
  out << fmt::format("# tspcaf {} {}\n", kVersion, table);
  out << fmt::format("# config_hash={:016x} engine={} instance={} n_range={}..{}\n", config.hash(),
                     to_string(config.engine), config.instance_path.filename().string(),
                     config.n_range.first, config.n_range.last);
}

std::string fixed(double v, int digits) { return fmt::format("{:.{}f}", v, digits); }

std::string opt_fixed(const std::optional<double>& v, int digits) {
  return v ? fixed(*v, digits) : std::string();
}

std::string timing(double v, const ExperimentConfig& config) {
  return config.reproducible ? std::string() : fixed(v, 3);
}

// Folds key=value lines into one "; "-separated comment-safe string.
std::string one_line(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out;
}

std::string status_of(const Table3Row& row) {
  if (row.without.status != SolveStatus::Optimal) return to_string(row.without.status);
  return to_string(row.with.status);
}

struct Mean {
  double sum = 0.0;
  int count = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++count;
    }
  }
  std::optional<double> value() const {
    return count ? std::optional<double>(sum / count) : std::nullopt;
  }
};

}  // namespace

NRange parse_n_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const int n = parse_int(text);
    return {n, n};
  }
  NRange range{parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
  if (range.first > range.last) {
    throw Error(ErrorCode::InvalidArgument, "empty n range `" + std::string(text) + "`");
  }
  return range;
}

std::string ExperimentConfig::canonical() const {
  return fmt::format(
      "instance={};n_range={}..{};engine={};use_caf={};time_limit={};runs={};seed={};"
      "rounding={};k_override={};anneal={}",
      instance_path.filename().string(), n_range.first, n_range.last, to_string(engine),
      use_caf ? 1 : 0, time_limit, runs, seed,
      rounding == DistanceRounding::Nearest ? "nint" : "exact",
      k_override ? std::to_string(*k_override) : std::string("auto"), anneal_overrides);
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void check_range(const ExperimentConfig& config, const RawTsplibFile& file) {
  if (config.n_range.first < 3) {
    throw Error(ErrorCode::NTooSmall, fmt::format("n range starts at {}", config.n_range.first));
  }
  if (config.n_range.last > file.dimension) {
    throw Error(ErrorCode::NTooLarge, fmt::format("n range ends at {} but the instance has {} vertices",
                                                  config.n_range.last, file.dimension));
  }
}

ArcSet arcs_for(const Instance& instance, bool use_caf, std::optional<int> k_override) {
  return use_caf ? caf_filter(instance, k_override).arcs : complete_arcs(instance);
}

std::vector<Table2Row> run_table2(const RawTsplibFile& file, const ExperimentConfig& config) {
  check_range(config, file);
  std::vector<Table2Row> rows;
  for (int n = config.n_range.first; n <= config.n_range.last; ++n) {
    const Instance instance = take_prefix(file, n, config.rounding);
    Table2Row row;
    row.n = n;
    row.vars_without = static_cast<std::int64_t>(count_variables(complete_arcs(instance)));
    row.vars_with = static_cast<std::int64_t>(
        count_variables(caf_filter(instance, config.k_override).arcs));
    row.gap_percent = reduction_gap_percent(row.vars_without, row.vars_with);
    rows.push_back(row);
  }
  return rows;
}

std::vector<Table3Row> run_table3(const RawTsplibFile& file, const ExperimentConfig& config) {
  check_range(config, file);
  SolveOptions options;
  options.time_limit = config.time_limit;
  std::vector<Table3Row> rows;
  for (int n = config.n_range.first; n <= config.n_range.last; ++n) {
    const Instance instance = take_prefix(file, n, config.rounding);
    Table3Row row;
    row.n = n;
    row.without = solve(config.engine, instance, complete_arcs(instance), options);
    row.with = solve(config.engine, instance, caf_filter(instance, config.k_override).arcs, options);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Table4Row> run_table4(const RawTsplibFile& file, const ExperimentConfig& config) {
  check_range(config, file);
  SolveOptions options;
  options.time_limit = config.time_limit;
  std::vector<Table4Row> rows;
  for (int n = config.n_range.first; n <= config.n_range.last; ++n) {
    const Instance instance = take_prefix(file, n, config.rounding);
    AnnealParams params = AnnealParams::defaults_for(instance);
    std::istringstream overrides(config.anneal_overrides);
    load_anneal_config(overrides, params);
    params.seed = config.seed;

    Table4Row row;
    row.n = n;
    for (const bool caf : {false, true}) {
      const ArcSet arcs = arcs_for(instance, caf, config.k_override);
      const SolveResult exact = solve(config.engine, instance, arcs, options);
      if (exact.status != SolveStatus::Optimal) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("no proven reference optimum for n = {} ({})", n,
                                to_string(exact.status)));
      }
      (caf ? row.with : row.without) = run_trials(instance, arcs, params, config.runs, *exact.objective);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows,
                      const ExperimentConfig& config) {
  write_header(out, "table2", config);
  out << "n,vars_without,vars_with,gap_percent\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{}\n", r.n, r.vars_without, r.vars_with, r.gap_percent);
  }
}

void write_fig1_csv(std::ostream& out, const std::vector<Table2Row>& rows,
                    const ExperimentConfig& config) {
  write_header(out, "fig1", config);
  out << "n,vars_without,vars_with\n";
  for (const auto& r : rows) out << fmt::format("{},{},{}\n", r.n, r.vars_without, r.vars_with);
}

void write_table3_csv(std::ostream& out, const std::vector<Table3Row>& rows,
                      const ExperimentConfig& config) {
  write_header(out, "table3", config);
  out << fmt::format("# time_limit={} timings are machine-local wall-clock seconds\n",
                     config.time_limit);
  out << "n,of_without,time_without,of_with,time_with,status\n";
  for (const auto& r : rows) {
    const auto of = [](const SolveResult& s) {
      return s.status == SolveStatus::Optimal ? opt_fixed(s.objective, 2) : std::string();
    };
    out << fmt::format("{},{},{},{},{},{}\n", r.n, of(r.without), timing(r.without.elapsed, config),
                       of(r.with), timing(r.with.elapsed, config), status_of(r));
  }
}

void write_table4_csv(std::ostream& out, const std::vector<Table4Row>& rows,
                      const ExperimentConfig& config) {
  write_header(out, "table4", config);
  out << fmt::format(
      "# runs={} seeds={}..{} params=defaults_for(instance) overrides=\"{}\" "
      "gap_reference=exact optimum over the same arc set\n",
      config.runs, config.seed, config.seed + static_cast<std::uint64_t>(config.runs) - 1,
      one_line(config.anneal_overrides));
  out << "# run count: reference results state both 5 and 10 runs per row; default 5, set with "
         "--runs\n";
  out << "n";
  for (const char* regime : {"without", "with"}) {
    for (const char* col : {"of_opt", "of_avg", "of_std", "gap", "pct_solved", "time_avg",
                            "time_std", "solve_time_avg", "solve_time_std"}) {
      out << ',' << col << '_' << regime;
    }
  }
  out << '\n';

  const auto cells = [&](const TrialStats& s) {
    return fmt::format("{},{},{},{},{},{},{},{},{}", fixed(s.of_opt, 2), opt_fixed(s.of_avg, 2),
                       opt_fixed(s.of_std, 2), opt_fixed(s.gap_percent, 0), fixed(s.pct_solved, 0),
                       timing(s.time_avg, config), timing(s.time_std, config),
                       timing(s.solve_time_avg, config), timing(s.solve_time_std, config));
  };
  for (const auto& r : rows) out << r.n << ',' << cells(r.without) << ',' << cells(r.with) << '\n';

  // Column-wise means over the rows above; absent cells are skipped.
  out << "AVG";
  for (const bool with : {false, true}) {
    Mean of_opt, of_avg, of_std, gap, solved, t_avg, t_std, s_avg, s_std;
    for (const auto& r : rows) {
      const TrialStats& s = with ? r.with : r.without;
      of_opt.add(s.of_opt);
      of_avg.add(s.of_avg);
      of_std.add(s.of_std);
      gap.add(s.gap_percent);
      solved.add(s.pct_solved);
      t_avg.add(s.time_avg);
      t_std.add(s.time_std);
      s_avg.add(s.solve_time_avg);
      s_std.add(s.solve_time_std);
    }
    const auto t = [&](const Mean& m) {
      return config.reproducible ? std::string() : opt_fixed(m.value(), 3);
    };
    out << fmt::format(",{},{},{},{},{},{},{},{},{}", opt_fixed(of_opt.value(), 2),
                       opt_fixed(of_avg.value(), 2), opt_fixed(of_std.value(), 2),
                       opt_fixed(gap.value(), 2), opt_fixed(solved.value(), 2), t(t_avg), t(t_std),
                       t(s_avg), t(s_std));
  }
  out << '\n';
}

}  // namespace tspcaf
