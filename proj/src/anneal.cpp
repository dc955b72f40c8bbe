#include "tspcaf/anneal.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <numeric>
#include <random>
#include <string>
#include <string_view>

#include "tspcaf/error.hpp"

namespace tspcaf {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_value(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError,
                "bad value `" + std::string(text) + "` for key `" + std::string(key) + "`");
  }
  return value;
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

// Population statistics.
Stats summarize(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

}  // namespace

AnnealParams AnnealParams::defaults_for(const Instance& instance) {
  AnnealParams p;
  const double max_cost = instance.max_cost();
  p.initial_temperature = max_cost > 0.0 ? max_cost : 1.0;
  p.cooling_rate = 0.995;
  p.moves_per_temperature = 100 * instance.size();
  p.big_m = static_cast<double>(instance.size()) * (max_cost > 0.0 ? max_cost : 1.0) * 10.0;
  return p;
}

void AnnealParams::validate(const Instance& instance) const {
  if (instance.size() < 4) throw Error(ErrorCode::NTooSmall, "annealing needs n >= 4");
  if (!(cooling_rate > 0.0 && cooling_rate < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "cooling_rate must lie in (0, 1)");
  }
  if (!(initial_temperature > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "initial_temperature must be positive");
  }
  if (!(final_temperature_ratio > 0.0 && final_temperature_ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "final_temperature_ratio must lie in (0, 1)");
  }
  if (moves_per_temperature <= 0) {
    throw Error(ErrorCode::InvalidArgument, "moves_per_temperature must be positive");
  }
  if (!(max_time > 0.0)) throw Error(ErrorCode::InvalidArgument, "max_time must be positive");
  if (!(big_m > static_cast<double>(instance.size()) * instance.max_cost())) {
    throw Error(ErrorCode::InvalidArgument, "big_m must exceed n * max(c_ij)");
  }
}

void load_anneal_config(std::istream& in, AnnealParams& params) {
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "max_time") {
      params.max_time = parse_value<double>(key, value);
    } else if (key == "initial_temperature") {
      params.initial_temperature = parse_value<double>(key, value);
    } else if (key == "final_temperature_ratio") {
      params.final_temperature_ratio = parse_value<double>(key, value);
    } else if (key == "cooling_rate") {
      params.cooling_rate = parse_value<double>(key, value);
    } else if (key == "moves_per_temperature") {
      params.moves_per_temperature = parse_value<int>(key, value);
    } else if (key == "seed") {
      params.seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "big_m") {
      params.big_m = parse_value<double>(key, value);
    } else if (key == "max_moves") {
      params.max_moves = parse_value<std::uint64_t>(key, value);
    } else {
      throw Error(ErrorCode::ParseError, "unknown key `" + std::string(key) + "`");
    }
  }
}

AnnealResult anneal_solve(const Instance& instance, const ArcSet& arcs,
                          const AnnealParams& params) {
  const auto start = Clock::now();
  params.validate(instance);
  const int n = instance.size();
  if (arcs.vertex_count() != n) {
    throw Error(ErrorCode::InvalidArgument, "arc set and instance disagree on vertex count");
  }

  // Penalized arc weights.
  std::vector<double> weight(static_cast<std::size_t>(n) * n, 0.0);
  bool symmetric = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      weight[static_cast<std::size_t>(i) * n + j] =
          instance.cost(i, j) + (arcs.contains(i, j) ? 0.0 : params.big_m);
      if (arcs.contains(i, j) != arcs.contains(j, i)) symmetric = false;
    }
  }
  const auto w = [&](int a, int b) { return weight[static_cast<std::size_t>(a) * n + b]; };

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<int> tour(static_cast<std::size_t>(n));
  std::iota(tour.begin(), tour.end(), 0);
  std::shuffle(tour.begin(), tour.end(), rng);

  const auto total_weight = [&](const std::vector<int>& t) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += w(t[i], t[(i + 1) % n]);
    return s;
  };
  // Change in weight when the directed path t[lo..hi] is traversed backwards.
  const auto reversal_shift = [&](int lo, int hi) {
    if (symmetric) return 0.0;
    double s = 0.0;
    for (int k = lo; k < hi; ++k) s += w(tour[k + 1], tour[k]) - w(tour[k], tour[k + 1]);
    return s;
  };

  const auto anneal_start = Clock::now();
  double current = total_weight(tour);
  double best = current;
  std::vector<int> best_tour = tour;

  const int max_or_len = std::min(3, n - 3);
  std::uniform_int_distribution<int> pick_vertex(0, n - 1);
  std::uint64_t moves = 0;
  bool stop = false;
  const double final_temperature = params.initial_temperature * params.final_temperature_ratio;

  for (double temperature = params.initial_temperature;
       temperature >= final_temperature && !stop; temperature *= params.cooling_rate) {
    for (int step = 0; step < params.moves_per_temperature; ++step) {
      if (params.max_moves != 0 && moves >= params.max_moves) {
        stop = true;
        break;
      }
      if ((moves & 0xFF) == 0 && seconds_since(anneal_start) > params.max_time) {
        stop = true;
        break;
      }
      ++moves;

      if (max_or_len < 1 || unit(rng) < 0.5) {
        // 2-opt: reverse tour[i..j].
        int i = pick_vertex(rng);
        int j = pick_vertex(rng);
        if (i > j) std::swap(i, j);
        const int len = j - i + 1;
        if (len < 2 || len > n - 2) continue;
        const int prev = tour[(i - 1 + n) % n];
        const int next = tour[(j + 1) % n];
        const int first = tour[i];
        const int last = tour[j];
        const double delta = w(prev, last) + w(first, next) - w(prev, first) - w(last, next) +
                             reversal_shift(i, j);
        if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature)) {
          std::reverse(tour.begin() + i, tour.begin() + j + 1);
          current += delta;
        }
      } else {
        // or-opt: move tour[i..i+len-1] after tour[p], optionally reversed.
        const int len = std::uniform_int_distribution<int>(1, max_or_len)(rng);
        const int i = std::uniform_int_distribution<int>(0, n - len)(rng);
        const int r = std::uniform_int_distribution<int>(0, n - len - 2)(rng);
        const bool flip = len >= 2 && unit(rng) < 0.5;
        const int p = (i + len + r) % n;
        const int seg_first = tour[i];
        const int seg_last = tour[i + len - 1];
        const int a = tour[(i - 1 + n) % n];
        const int b = tour[(i + len) % n];
        const int before = tour[p];
        const int after = tour[(p + 1) % n];
        const int head = flip ? seg_last : seg_first;
        const int tail = flip ? seg_first : seg_last;
        const double delta = w(a, b) + w(before, head) + w(tail, after) - w(a, seg_first) -
                             w(seg_last, b) - w(before, after) +
                             (flip ? reversal_shift(i, i + len - 1) : 0.0);
        if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature)) {
          int lo = 0;
          if (p > i + len - 1) {
            std::rotate(tour.begin() + i, tour.begin() + i + len, tour.begin() + p + 1);
            lo = p + 1 - len;
          } else {
            std::rotate(tour.begin() + p + 1, tour.begin() + i, tour.begin() + i + len);
            lo = p + 1;
          }
          if (flip) std::reverse(tour.begin() + lo, tour.begin() + lo + len);
          current += delta;
        }
      }

      if (current < best) {
        // Resync against accumulated rounding before trusting the improvement.
        current = total_weight(tour);
        if (current < best) {
          best = current;
          best_tour = tour;
        }
      }
    }
  }

  AnnealResult result;
  result.moves = moves;
  result.elapsed = seconds_since(anneal_start);
  for (int k = 0; k < n; ++k) {
    if (!arcs.contains(best_tour[k], best_tour[(k + 1) % n])) ++result.forbidden_arcs;
  }
  result.penalized_cost = total_weight(best_tour);
  result.feasible_in_arcs = result.forbidden_arcs == 0;
  result.tour = make_tour(instance, std::move(best_tour));
  result.total_elapsed = seconds_since(start);
  return result;
}

TrialStats run_trials(const Instance& instance, const ArcSet& arcs, const AnnealParams& params,
                      int num_runs, double of_opt) {
  if (num_runs < 1) throw Error(ErrorCode::InvalidArgument, "num_runs must be >= 1");
  if (!(of_opt > 0.0)) throw Error(ErrorCode::InvalidArgument, "of_opt must be positive");

  TrialStats stats;
  stats.n = instance.size();
  stats.runs = num_runs;
  stats.of_opt = of_opt;

  std::vector<double> objectives, totals, solves;
  for (int r = 0; r < num_runs; ++r) {
    AnnealParams run_params = params;
    run_params.seed = params.seed + static_cast<std::uint64_t>(r);
    AnnealResult run = anneal_solve(instance, arcs, run_params);
    if (run.feasible_in_arcs) objectives.push_back(run.tour.cost);
    totals.push_back(run.total_elapsed);
    solves.push_back(run.elapsed);
    stats.run_results.push_back(std::move(run));
  }

  stats.feasible_runs = static_cast<int>(objectives.size());
  stats.pct_solved = 100.0 * stats.feasible_runs / num_runs;
  if (!objectives.empty()) {
    const Stats of = summarize(objectives);
    stats.of_avg = of.mean;
    stats.of_std = of.stddev;
    stats.gap_raw = 100.0 * (of.mean - of_opt) / of_opt;
    // std::round is half away from zero; +0.0 folds a -0 result.
    stats.gap_percent = std::round(*stats.gap_raw) + 0.0;
  }
  const Stats total = summarize(totals);
  const Stats solve = summarize(solves);
  stats.time_avg = total.mean;
  stats.time_std = total.stddev;
  stats.solve_time_avg = solve.mean;
  stats.solve_time_std = solve.stddev;
  return stats;
}

}  // namespace tspcaf
