#include "tspcaf/lp_export.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "tspcaf/error.hpp"

namespace tspcaf {
namespace {

constexpr int kTermsPerLine = 8;

// Appends "name: t1 + t2 ..." wrapping every kTermsPerLine terms.
void write_terms(std::string& out, const std::string& name, const std::vector<std::string>& terms) {
  out += ' ';
  out += name;
  out += ':';
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t > 0 && t % kTermsPerLine == 0) {
      out += "\n   +";
    } else if (t > 0) {
      out += " +";
    }
    out += ' ';
    out += terms[t];
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& value) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

bool is_sense(std::string_view t) {
  return t == "<=" || t == "=<" || t == "<" || t == ">=" || t == "=>" || t == ">" || t == "=";
}

Sense to_sense(std::string_view t) {
  if (t == "=") return Sense::Equal;
  if (t == ">=" || t == "=>" || t == ">") return Sense::GreaterEqual;
  return Sense::LessEqual;
}

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Linear expression "[+|-] [coef] var ..." from tokens [begin, end).
std::vector<std::pair<std::string, double>> parse_expression(
    const std::vector<std::string_view>& tokens, std::size_t begin, std::size_t end) {
  std::vector<std::pair<std::string, double>> terms;
  double sign = 1.0;
  std::optional<double> coef;
  for (std::size_t k = begin; k < end; ++k) {
    const std::string_view t = tokens[k];
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
      continue;
    }
    double value = 0.0;
    if (parse_double(t, value)) {
      if (coef) throw Error(ErrorCode::ParseError, "two coefficients in a row");
      coef = value;
      continue;
    }
    if (!(std::isalpha(static_cast<unsigned char>(t.front())) || t.front() == '_')) {
      throw Error(ErrorCode::ParseError, "unexpected token `" + std::string(t) + "`");
    }
    terms.emplace_back(std::string(t), sign * coef.value_or(1.0));
    sign = 1.0;
    coef.reset();
  }
  if (coef) throw Error(ErrorCode::ParseError, "dangling coefficient");
  return terms;
}

enum class Section { None, Objective, Constraints, Binary, Done };

}  // namespace

std::string variable_name(int from, int to) { return fmt::format("x_{}_{}", from, to); }

std::string ExportedModel::meta_line() const {
  return fmt::format("variables={} degree_constraints={} subtour_constraints={}", num_variables,
                     num_degree_constraints, num_subtour_constraints);
}

ExportedModel export_ilp(const Instance& instance, const ArcSet& arcs, SubtourMode mode,
                         int n_max) {
  const int n = instance.size();
  if (arcs.vertex_count() != n) {
    throw Error(ErrorCode::InvalidArgument, "arc set and instance disagree on vertex count");
  }
  if (mode == SubtourMode::Enumerate && (n > n_max || n > 30)) {
    throw Error(ErrorCode::TooLargeToEnumerate,
                fmt::format("n = {} exceeds the enumeration limit {}", n, std::min(n_max, 30)));
  }

  const std::vector<Arc> all = arcs.arcs();
  // A row with no arcs still needs a variable to be valid LP text.
  const std::string placeholder =
      all.empty() ? std::string("0") : "0 " + variable_name(all.front().from, all.front().to);

  ExportedModel model;
  model.num_variables = static_cast<std::int64_t>(all.size());
  std::string& out = model.body;
  out += fmt::format("\\ TSP arc model: {} vertices, {} arcs\n", n, all.size());
  out += "Minimize\n";

  std::vector<std::string> terms;
  for (const Arc& a : all) {
    terms.push_back(fmt::format("{:.6f} {}", instance.cost(a.from, a.to), variable_name(a.from, a.to)));
  }
  if (terms.empty()) terms.push_back(placeholder);
  write_terms(out, "obj", terms);
  out += "\nSubject To\n";

  const auto emit_row = [&](const std::string& name, std::vector<std::string>& row,
                            const std::string& tail) {
    if (row.empty()) row.push_back(placeholder);
    write_terms(out, name, row);
    out += tail;
  };

  for (int i = 0; i < n; ++i) {
    terms.clear();
    for (int j = 0; j < n; ++j) {
      if (arcs.contains(i, j)) terms.push_back(variable_name(i, j));
    }
    emit_row(fmt::format("deg_out_{}", i), terms, " = 1\n");
  }
  for (int j = 0; j < n; ++j) {
    terms.clear();
    for (int i = 0; i < n; ++i) {
      if (arcs.contains(i, j)) terms.push_back(variable_name(i, j));
    }
    emit_row(fmt::format("deg_in_{}", j), terms, " = 1\n");
  }
  model.num_degree_constraints = 2 * static_cast<std::int64_t>(n);

  if (mode == SubtourMode::Enumerate) {
    std::vector<int> members;
    for (int size = 2; size < n; ++size) {
      // Gosper's hack walks masks of one popcount in increasing order.
      std::uint64_t mask = (std::uint64_t{1} << size) - 1;
      const std::uint64_t limit = std::uint64_t{1} << n;
      while (mask < limit) {
        members.clear();
        for (int v = 0; v < n; ++v) {
          if (mask & (std::uint64_t{1} << v)) members.push_back(v);
        }
        terms.clear();
        for (int i : members) {
          for (int j : members) {
            if (i != j && arcs.contains(i, j)) terms.push_back(variable_name(i, j));
          }
        }
        emit_row(fmt::format("sec_{}", mask), terms, fmt::format(" <= {}\n", size - 1));
        ++model.num_subtour_constraints;

        const std::uint64_t low = mask & (~mask + 1);
        const std::uint64_t ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
      }
    }
  }

  out += "Binary\n";
  for (const Arc& a : all) {
    out += ' ';
    out += variable_name(a.from, a.to);
    out += '\n';
  }
  out += "End\n";
  return model;
}

std::vector<const LinearRow*> ParsedModel::violated(const std::map<std::string, int>& values,
                                                    double tol) const {
  std::vector<const LinearRow*> out;
  for (const LinearRow& row : rows) {
    double lhs = 0.0;
    for (const auto& [name, coef] : row.terms) {
      const auto it = values.find(name);
      if (it != values.end()) lhs += coef * it->second;
    }
    const bool ok = row.sense == Sense::LessEqual   ? lhs <= row.rhs + tol
                    : row.sense == Sense::Equal     ? std::abs(lhs - row.rhs) <= tol
                                                    : lhs >= row.rhs - tol;
    if (!ok) out.push_back(&row);
  }
  return out;
}

ParsedModel parse_lp(std::string_view text) {
  ParsedModel model;
  Section section = Section::None;
  bool saw_objective = false;
  bool saw_constraints = false;
  std::string objective_text;
  std::string pending;  // current constraint row, possibly spanning lines

  const auto finish_row = [&]() {
    const auto colon = pending.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "constraint without a name");
    LinearRow row;
    row.name = std::string(trim(std::string_view(pending).substr(0, colon)));
    const auto tokens = tokenize(std::string_view(pending).substr(colon + 1));
    std::size_t sense_at = tokens.size();
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (is_sense(tokens[k])) {
        sense_at = k;
        break;
      }
    }
    if (sense_at + 2 != tokens.size() || !parse_double(tokens[sense_at + 1], row.rhs)) {
      throw Error(ErrorCode::ParseError, "malformed constraint `" + row.name + "`");
    }
    row.sense = to_sense(tokens[sense_at]);
    row.terms = parse_expression(tokens, 0, sense_at);
    model.rows.push_back(std::move(row));
    pending.clear();
  };
  const auto row_complete = [&]() {
    const auto tokens = tokenize(pending);
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (is_sense(tokens[k])) return k + 1 < tokens.size();
    }
    return false;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '\\') continue;
    const std::string key = lower(line);

    if (key == "minimize" || key == "maximize" || key == "minimum" || key == "maximum") {
      section = Section::Objective;
      saw_objective = true;
      continue;
    }
    if (key == "subject to" || key == "such that" || key == "st" || key == "s.t.") {
      section = Section::Constraints;
      saw_constraints = true;
      continue;
    }
    if (key == "binary" || key == "binaries" || key == "bin") {
      if (!pending.empty()) throw Error(ErrorCode::ParseError, "unterminated constraint");
      section = Section::Binary;
      continue;
    }
    if (key == "end") {
      if (!pending.empty()) throw Error(ErrorCode::ParseError, "unterminated constraint");
      section = Section::Done;
      break;
    }

    switch (section) {
      case Section::None:
      case Section::Done:
        throw Error(ErrorCode::ParseError, "text outside any section: `" + std::string(line) + "`");
      case Section::Objective:
        objective_text += ' ';
        objective_text += line;
        break;
      case Section::Constraints:
        if (!pending.empty()) pending += ' ';
        pending += line;
        if (row_complete()) finish_row();
        break;
      case Section::Binary:
        for (auto token : tokenize(line)) model.binaries.emplace_back(token);
        break;
    }
  }

  if (!saw_objective || !saw_constraints || section != Section::Done) {
    throw Error(ErrorCode::ParseError, "missing Minimize / Subject To / End");
  }
  const auto colon = objective_text.find(':');
  const auto tokens =
      tokenize(colon == std::string::npos ? std::string_view(objective_text)
                                          : std::string_view(objective_text).substr(colon + 1));
  model.objective = parse_expression(tokens, 0, tokens.size());
  return model;
}

ModelStats model_stats(std::string_view body) {
  const ParsedModel parsed = parse_lp(body);
  ModelStats stats;
  stats.variables = static_cast<std::int64_t>(
      std::set<std::string>(parsed.binaries.begin(), parsed.binaries.end()).size());
  for (const LinearRow& row : parsed.rows) {
    if (row.name.rfind("deg_", 0) == 0) {
      ++stats.degree_constraints;
    } else if (row.name.rfind("sec_", 0) == 0) {
      ++stats.subtour_constraints;
    }
  }
  return stats;
}

ModelStats model_stats(const ExportedModel& model) { return model_stats(model.body); }

}  // namespace tspcaf
