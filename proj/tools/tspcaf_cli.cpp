// tspcaf command-line front end.
//
// Exit codes: 0 success, 2 input error, 3 time limit hit (partial output
// written), 4 internal invariant failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "tspcaf/anneal.hpp"
#include "tspcaf/bench.hpp"
#include "tspcaf/caf.hpp"
#include "tspcaf/error.hpp"
#include "tspcaf/exact.hpp"
#include "tspcaf/lp_export.hpp"
#include "tspcaf/tsplib.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitTimeLimit = 3;
constexpr int kExitInvariant = 4;

struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string instance;
  int n = 0;
  std::string n_range = "5..5";
  bool caf = true;
  std::string engine = "heldkarp";
  double time_limit = tspcaf::kDefaultTimeLimit;
  int runs = 5;
  std::uint64_t seed = 1;
  std::string out;
  std::optional<int> k_override;
  bool rounded = false;
  std::string config_path;
  bool reproducible = false;
  bool omit_subtours = false;
  int n_max = tspcaf::kDefaultEnumerateMax;
};

tspcaf::Engine parse_engine(const std::string& name) {
  if (name == "heldkarp" || name == "HeldKarp" || name == "hk") return tspcaf::Engine::HeldKarp;
  if (name == "branchbound" || name == "BranchBound" || name == "bb") {
    return tspcaf::Engine::BranchBound;
  }
  throw tspcaf::Error(tspcaf::ErrorCode::InvalidArgument, "unknown engine `" + name + "`");
}

tspcaf::DistanceRounding rounding(const Options& o) {
  return o.rounded ? tspcaf::DistanceRounding::Nearest : tspcaf::DistanceRounding::None;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tspcaf::Error(tspcaf::ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

tspcaf::ExperimentConfig experiment(const Options& o) {
  tspcaf::ExperimentConfig config;
  config.instance_path = o.instance;
  config.n_range = tspcaf::parse_n_range(o.n_range);
  config.engine = parse_engine(o.engine);
  config.use_caf = o.caf;
  config.time_limit = o.time_limit;
  config.runs = o.runs;
  config.seed = o.seed;
  config.rounding = rounding(o);
  config.k_override = o.k_override;
  config.reproducible = o.reproducible;
  if (!o.config_path.empty()) config.anneal_overrides = read_file(o.config_path);
  return config;
}

// Writes through `body` to --out (a file, or table.csv inside a directory
// given with a trailing slash or already existing) or stdout.
template <typename Fn>
void emit(const Options& o, const std::string& default_name, Fn&& body) {
  if (o.out.empty()) {
    body(std::cout);
    return;
  }
  std::filesystem::path path(o.out);
  const bool names_directory = o.out.back() == '/' || std::filesystem::is_directory(path);
  if (names_directory) {
    std::filesystem::create_directories(path);
    path /= default_name;
  } else if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tspcaf::Error(tspcaf::ErrorCode::InvalidArgument, "cannot write " + path.string());
  body(out);
}

tspcaf::Instance load_instance(const Options& o, tspcaf::RawTsplibFile& file) {
  file = tspcaf::load_tsplib(o.instance);
  for (const auto& w : file.warnings) std::cerr << "warning: " << w << '\n';
  return tspcaf::take_prefix(file, o.n > 0 ? o.n : file.dimension, rounding(o));
}

int cmd_parse(const Options& o) {
  const auto file = tspcaf::load_tsplib(o.instance);
  for (const auto& w : file.warnings) std::cerr << "warning: " << w << '\n';
  if (!o.out.empty()) {
    emit(o, file.name + ".tsp", [&](std::ostream& out) { tspcaf::write_tsplib(out, file); });
  }
  std::cout << fmt::format("name={} dimension={} edge_weight_type=EUC_2D\n", file.name,
                           file.dimension);
  if (!file.coords.empty()) {
    std::cout << fmt::format("first=({}, {})\n", file.coords.front().x, file.coords.front().y);
  }
  return kExitOk;
}

int cmd_caf_dump(const Options& o) {
  tspcaf::RawTsplibFile file;
  const auto instance = load_instance(o, file);
  if (o.k_override) {
    std::cerr << "warning: --k-override is experimental and voids the Hamiltonicity guarantee\n";
  }
  const auto result = tspcaf::caf_filter(instance, o.k_override);
  const auto cert = tspcaf::dirac_certificate(result.arcs);
  std::cerr << fmt::format("n={} k={} arcs={} min_degree={} hamiltonicity_guaranteed={}\n",
                           instance.size(), result.k, result.arcs.size(), cert.min_degree,
                           cert.hamiltonicity_guaranteed);
  emit(o, "caf.csv", [&](std::ostream& out) {
    for (const auto& arc : result.arcs.arcs()) {
      out << fmt::format("{},{},{:.6f}\n", arc.from, arc.to, instance.cost(arc.from, arc.to));
    }
  });
  return kExitOk;
}

int cmd_solve(const Options& o) {
  tspcaf::RawTsplibFile file;
  const auto instance = load_instance(o, file);
  const auto arcs = tspcaf::arcs_for(instance, o.caf, o.k_override);
  tspcaf::SolveOptions options;
  options.time_limit = o.time_limit;
  const auto result = tspcaf::solve(parse_engine(o.engine), instance, arcs, options);

  if (result.status == tspcaf::SolveStatus::Optimal &&
      !tspcaf::validate_tour(instance, arcs, *result.tour)) {
    throw InvariantFailure("solver returned a tour that fails validation");
  }
  emit(o, "solve.txt", [&](std::ostream& out) {
    out << fmt::format("engine={} n={} arcs={} status={}\n", tspcaf::to_string(result.engine),
                       instance.size(), arcs.size(), tspcaf::to_string(result.status));
    if (result.objective) out << fmt::format("objective={:.6f}\n", *result.objective);
    out << fmt::format("best_bound={:.6f}\nelapsed={:.3f}\n", result.best_bound, result.elapsed);
    if (result.tour) {
      out << "tour=";
      for (std::size_t i = 0; i < result.tour->order.size(); ++i) {
        out << (i ? " " : "") << result.tour->order[i];
      }
      out << '\n';
    }
  });
  return result.status == tspcaf::SolveStatus::TimeLimit ? kExitTimeLimit : kExitOk;
}

int cmd_export(const Options& o) {
  tspcaf::RawTsplibFile file;
  const auto instance = load_instance(o, file);
  const auto arcs = tspcaf::arcs_for(instance, o.caf, o.k_override);
  const auto model = tspcaf::export_ilp(
      instance, arcs, o.omit_subtours ? tspcaf::SubtourMode::Omit : tspcaf::SubtourMode::Enumerate,
      o.n_max);
  if (tspcaf::model_stats(model) != tspcaf::ModelStats{model.num_variables,
                                                       model.num_degree_constraints,
                                                       model.num_subtour_constraints}) {
    throw InvariantFailure("exported model does not re-parse to its own counts");
  }
  if (o.out.empty()) {
    std::cout << model.body;
  } else {
    std::ofstream(o.out, std::ios::binary) << model.body;
    std::ofstream(o.out + ".meta", std::ios::binary) << model.meta_line() << '\n';
  }
  std::cerr << model.meta_line() << '\n';
  return kExitOk;
}

int cmd_anneal(const Options& o) {
  tspcaf::RawTsplibFile file;
  const auto instance = load_instance(o, file);
  const auto arcs = tspcaf::arcs_for(instance, o.caf, o.k_override);
  auto params = tspcaf::AnnealParams::defaults_for(instance);
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw tspcaf::Error(tspcaf::ErrorCode::InvalidArgument, "cannot open " + o.config_path);
    tspcaf::load_anneal_config(in, params);
  }
  params.seed = o.seed;
  emit(o, "anneal.csv", [&](std::ostream& out) {
    out << "run,seed,cost,feasible,forbidden_arcs,moves,elapsed\n";
    for (int r = 0; r < o.runs; ++r) {
      auto run_params = params;
      run_params.seed = params.seed + static_cast<std::uint64_t>(r);
      const auto result = tspcaf::anneal_solve(instance, arcs, run_params);
      if (result.feasible_in_arcs && !tspcaf::validate_tour(instance, arcs, result.tour)) {
        throw InvariantFailure("annealer reported a feasible tour that fails validation");
      }
      out << fmt::format("{},{},{:.2f},{},{},{},{}\n", r, run_params.seed, result.tour.cost,
                         result.feasible_in_arcs ? 1 : 0, result.forbidden_arcs, result.moves,
                         o.reproducible ? std::string() : fmt::format("{:.3f}", result.elapsed));
    }
  });
  return kExitOk;
}

int cmd_table2(const Options& o, bool fig1) {
  const auto config = experiment(o);
  const auto file = tspcaf::load_tsplib(config.instance_path);
  const auto rows = tspcaf::run_table2(file, config);
  emit(o, fig1 ? "fig1.csv" : "table2.csv", [&](std::ostream& out) {
    if (fig1) {
      tspcaf::write_fig1_csv(out, rows, config);
    } else {
      tspcaf::write_table2_csv(out, rows, config);
    }
  });
  return kExitOk;
}

int cmd_table3(const Options& o) {
  const auto config = experiment(o);
  const auto file = tspcaf::load_tsplib(config.instance_path);
  const auto rows = tspcaf::run_table3(file, config);
  emit(o, "table3.csv", [&](std::ostream& out) { tspcaf::write_table3_csv(out, rows, config); });
  for (const auto& row : rows) {
    for (const auto* r : {&row.without, &row.with}) {
      if (r->status == tspcaf::SolveStatus::TimeLimit) return kExitTimeLimit;
    }
  }
  return kExitOk;
}

int cmd_table4(const Options& o) {
  const auto config = experiment(o);
  const auto file = tspcaf::load_tsplib(config.instance_path);
  const auto rows = tspcaf::run_table4(file, config);
  for (const auto& row : rows) {
    for (const auto* stats : {&row.without, &row.with}) {
      if (stats->gap_percent && *stats->gap_percent < 0) {
        throw InvariantFailure(fmt::format("negative gap at n = {}", row.n));
      }
    }
  }
  emit(o, "table4.csv", [&](std::ostream& out) { tspcaf::write_table4_csv(out, rows, config); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost-based arc filtering toolkit for the symmetric TSP"};
  app.require_subcommand(1);
  Options o;

  const auto add_instance = [&](CLI::App* cmd) {
    cmd->add_option("--instance", o.instance, "TSPLIB EUC_2D file")->required();
    cmd->add_flag("--rounded-distances", o.rounded, "Use TSPLIB nint() distances");
  };
  const auto add_single = [&](CLI::App* cmd) {
    add_instance(cmd);
    cmd->add_option("--n", o.n, "Use the first n vertices (default: all)");
    cmd->add_flag("--caf,!--no-caf", o.caf, "Restrict to the CAF arc set (default on)");
    cmd->add_option("--k-override", o.k_override,
                    "EXPERIMENTAL: neighbours kept per vertex; voids the feasibility guarantee");
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
  };
  const auto add_range = [&](CLI::App* cmd) {
    add_instance(cmd);
    cmd->add_option("--n-range", o.n_range, "Inclusive range A..B")->required();
    cmd->add_option("--engine", o.engine, "heldkarp | branchbound");
    cmd->add_option("--time-limit", o.time_limit, "Seconds per exact solve");
    cmd->add_option("--runs", o.runs, "Annealing runs per row");
    cmd->add_option("--seed", o.seed, "Base seed; run r uses seed + r");
    cmd->add_option("--k-override", o.k_override,
                    "EXPERIMENTAL: neighbours kept per vertex; voids the feasibility guarantee");
    cmd->add_flag("--caf,!--no-caf", o.caf, "Recorded in the config hash");
    cmd->add_option("--config", o.config_path, "Annealing key=value overrides");
    cmd->add_flag("--reproducible", o.reproducible, "Leave timing cells empty");
    cmd->add_option("--out", o.out, "Output file or directory (default: stdout)");
  };

  auto* parse = app.add_subcommand("parse", "Parse a TSPLIB file and echo its summary");
  add_instance(parse);
  parse->add_option("--out", o.out, "Re-serialize the parsed file here");

  auto* caf = app.add_subcommand("caf", "Cost-based arc filtering");
  caf->require_subcommand(1);
  auto* caf_dump = caf->add_subcommand("dump", "Write the reduced arc set as i,j,c_ij lines");
  add_single(caf_dump);

  auto* solve = app.add_subcommand("solve", "Solve to proven optimality");
  add_single(solve);
  solve->add_option("--engine", o.engine, "heldkarp | branchbound");
  solve->add_option("--time-limit", o.time_limit, "Seconds");

  auto* exporter = app.add_subcommand("export", "Write the ILP in LP format (+ .meta sidecar)");
  add_single(exporter);
  exporter->add_flag("--omit-subtours", o.omit_subtours, "Skip subtour elimination rows");
  exporter->add_option("--n-max", o.n_max, "Largest n allowed for full subtour enumeration");

  auto* anneal = app.add_subcommand("anneal", "Simulated annealing over the arc set");
  add_single(anneal);
  anneal->add_option("--seed", o.seed, "Base seed; run r uses seed + r");
  anneal->add_option("--runs", o.runs, "Independent runs");
  anneal->add_option("--config", o.config_path, "key=value parameter file");
  anneal->add_flag("--reproducible", o.reproducible, "Leave timing cells empty");

  auto* table2 = app.add_subcommand("table2", "Variable counts with and without CAF");
  add_range(table2);
  auto* table3 = app.add_subcommand("table3", "Exact optima with and without CAF");
  add_range(table3);
  auto* table4 = app.add_subcommand("table4", "Annealing trial statistics");
  add_range(table4);
  auto* fig1 = app.add_subcommand("fig1", "Variable-count curves");
  add_range(fig1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (parse->parsed()) return cmd_parse(o);
    if (caf_dump->parsed()) return cmd_caf_dump(o);
    if (solve->parsed()) return cmd_solve(o);
    if (exporter->parsed()) return cmd_export(o);
    if (anneal->parsed()) return cmd_anneal(o);
    if (table2->parsed()) return cmd_table2(o, false);
    if (fig1->parsed()) return cmd_table2(o, true);
    if (table3->parsed()) return cmd_table3(o);
    if (table4->parsed()) return cmd_table4(o);
  } catch (const tspcaf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitInput;
}
