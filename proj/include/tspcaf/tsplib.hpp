#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tspcaf/instance.hpp"

namespace tspcaf {

enum class EdgeWeightType { Euc2D };

/// Contents of a TSPLIB NODE_COORD_SECTION file. Vertices are re-indexed to
/// 0..dimension-1 in file order; the original ids are kept in `ids`.
struct RawTsplibFile {
  std::string name;
  int dimension = 0;
  EdgeWeightType edge_weight_type = EdgeWeightType::Euc2D;
  std::vector<long long> ids;
  std::vector<Point> coords;
  /// Unknown header keys, one message each.
  std::vector<std::string> warnings;
};

RawTsplibFile parse_tsplib(std::istream& in);
RawTsplibFile load_tsplib(const std::filesystem::path& path);

/// Writes the file back in TSPLIB form. Coordinates use the shortest decimal
/// representation that round-trips to the same double.
void write_tsplib(std::ostream& out, const RawTsplibFile& file);

double euclidean_cost(Point p, Point q) noexcept;

/// TSPLIB EUC_2D convention: nint(sqrt(dx^2 + dy^2)).
double euclidean_cost_rounded(Point p, Point q) noexcept;

/// Instance over the first n vertices in file order.
Instance take_prefix(const RawTsplibFile& file, int n,
                     DistanceRounding rounding = DistanceRounding::None);

}  // namespace tspcaf
