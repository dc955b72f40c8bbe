#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tspcaf/instance.hpp"

namespace tspcaf {

enum class SubtourMode { Enumerate, Omit };

inline constexpr int kDefaultEnumerateMax = 16;

struct ExportedModel {
  std::int64_t num_variables = 0;
  std::int64_t num_degree_constraints = 0;
  std::int64_t num_subtour_constraints = 0;
  /// LP-format text.
  std::string body;

  /// Sidecar line: `variables=V degree_constraints=D subtour_constraints=S`.
  std::string meta_line() const;
};

/// Writes the arc-based TSP model in LP format: objective over the arcs in
/// `arcs`, out/in degree equalities, and (Enumerate) one subtour elimination
/// row per proper subset |S| >= 2, ordered by size then bitmask.
/// Throws TooLargeToEnumerate when n > n_max under Enumerate.
ExportedModel export_ilp(const Instance& instance, const ArcSet& arcs,
                         SubtourMode mode = SubtourMode::Enumerate,
                         int n_max = kDefaultEnumerateMax);

enum class Sense { LessEqual, Equal, GreaterEqual };

struct LinearRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

/// Subset of LP format produced by export_ilp.
struct ParsedModel {
  std::vector<std::pair<std::string, double>> objective;
  std::vector<LinearRow> rows;
  std::vector<std::string> binaries;

  /// Rows violated by a 0/1 assignment (variables missing from the map are 0).
  std::vector<const LinearRow*> violated(const std::map<std::string, int>& values,
                                         double tol = 1e-9) const;
};

ParsedModel parse_lp(std::string_view text);

struct ModelStats {
  std::int64_t variables = 0;
  std::int64_t degree_constraints = 0;
  std::int64_t subtour_constraints = 0;
  bool operator==(const ModelStats&) const = default;
};

/// Counts recovered by re-parsing an exported body. Throws ParseError.
ModelStats model_stats(std::string_view body);
ModelStats model_stats(const ExportedModel& model);

std::string variable_name(int from, int to);

}  // namespace tspcaf
