#include "tspcaf/tsplib.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "tspcaf/error.hpp"

namespace tspcaf {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

// Splits "KEY : value", "KEY: value" and "KEY value".
std::pair<std::string_view, std::string_view> split_header(std::string_view line) {
  const auto colon = line.find(':');
  if (colon != std::string_view::npos) {
    return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
  }
  const auto space = line.find_first_of(" \t");
  if (space == std::string_view::npos) return {line, {}};
  return {trim(line.substr(0, space)), trim(line.substr(space + 1))};
}

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

RawTsplibFile parse_tsplib(std::istream& in) {
  RawTsplibFile file;
  bool have_dimension = false;
  bool have_weight_type = false;
  bool in_coords = false;
  bool saw_coords = false;
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line == "EOF") break;

    if (in_coords) {
      const auto tokens = split_ws(line);
      long long id = 0;
      Point p;
      if (tokens.size() != 3 || !parse_number(tokens[0], id) || !parse_number(tokens[1], p.x) ||
          !parse_number(tokens[2], p.y) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error(ErrorCode::MalformedLine,
                    "line " + std::to_string(line_no) + ": expected `id x y`, got `" +
                        std::string(line) + "`");
      }
      file.ids.push_back(id);
      file.coords.push_back(p);
      continue;
    }

    auto [key, value] = split_header(line);
    if (key == "NODE_COORD_SECTION") {
      in_coords = true;
      saw_coords = true;
    } else if (key == "NAME") {
      file.name = std::string(value);
    } else if (key == "DIMENSION") {
      if (!parse_number(value, file.dimension) || file.dimension <= 0) {
        throw Error(ErrorCode::MalformedLine,
                    "line " + std::to_string(line_no) + ": bad DIMENSION `" + std::string(value) + "`");
      }
      have_dimension = true;
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value != "EUC_2D") {
        throw Error(ErrorCode::UnsupportedWeightType, "EDGE_WEIGHT_TYPE " + std::string(value));
      }
      file.edge_weight_type = EdgeWeightType::Euc2D;
      have_weight_type = true;
    } else if (key == "TYPE" || key == "COMMENT") {
      // informational
    } else {
      file.warnings.push_back("line " + std::to_string(line_no) + ": ignoring unknown key `" +
                              std::string(key) + "`");
    }
  }

  if (!saw_coords) throw Error(ErrorCode::MissingSection, "NODE_COORD_SECTION not found");
  if (!have_weight_type) throw Error(ErrorCode::UnsupportedWeightType, "EDGE_WEIGHT_TYPE missing");
  if (!have_dimension) throw Error(ErrorCode::MissingSection, "DIMENSION header not found");
  if (static_cast<int>(file.coords.size()) != file.dimension) {
    throw Error(ErrorCode::DimensionMismatch,
                "DIMENSION " + std::to_string(file.dimension) + " but " +
                    std::to_string(file.coords.size()) + " coordinates");
  }
  return file;
}

RawTsplibFile load_tsplib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return parse_tsplib(in);
}

void write_tsplib(std::ostream& out, const RawTsplibFile& file) {
  out << "NAME: " << file.name << '\n'
      << "TYPE: TSP\n"
      << "DIMENSION: " << file.dimension << '\n'
      << "EDGE_WEIGHT_TYPE: EUC_2D\n"
      << "NODE_COORD_SECTION\n";
  for (std::size_t i = 0; i < file.coords.size(); ++i) {
    const long long id = i < file.ids.size() ? file.ids[i] : static_cast<long long>(i + 1);
    out << id << ' ' << shortest(file.coords[i].x) << ' ' << shortest(file.coords[i].y) << '\n';
  }
  out << "EOF\n";
}

double euclidean_cost(Point p, Point q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

double euclidean_cost_rounded(Point p, Point q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return static_cast<double>(static_cast<long long>(std::sqrt(dx * dx + dy * dy) + 0.5));
}

Instance take_prefix(const RawTsplibFile& file, int n, DistanceRounding rounding) {
  if (n < 3) throw Error(ErrorCode::NTooSmall, "n = " + std::to_string(n) + " < 3");
  if (n > file.dimension) {
    throw Error(ErrorCode::NTooLarge, "n = " + std::to_string(n) + " exceeds dimension " +
                                          std::to_string(file.dimension));
  }
  std::vector<Point> points(file.coords.begin(), file.coords.begin() + n);
  return Instance::from_points(std::move(points), rounding);
}

}  // namespace tspcaf
