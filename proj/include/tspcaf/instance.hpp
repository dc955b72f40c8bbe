#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tspcaf {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class DistanceRounding {
  None,     // plain Euclidean distance
  Nearest,  // TSPLIB nint(), for interoperability only
};

/// A symmetric TSP instance: n >= 3 vertices and a dense n x n cost matrix.
/// Immutable after construction.
class Instance {
 public:
  static Instance from_points(std::vector<Point> points,
                              DistanceRounding rounding = DistanceRounding::None);

  /// Row-major n x n matrix. Must be symmetric with a zero diagonal and
  /// nonnegative entries.
  static Instance from_matrix(int n, std::vector<double> cost);

  int size() const noexcept { return n_; }
  double cost(int i, int j) const noexcept {
    return cost_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(j)];
  }
  std::span<const double> cost_matrix() const noexcept { return cost_; }
  std::span<const Point> points() const noexcept { return points_; }
  double max_cost() const noexcept { return max_cost_; }

 private:
  Instance(int n, std::vector<Point> points, std::vector<double> cost);

  int n_;
  std::vector<Point> points_;
  std::vector<double> cost_;
  double max_cost_;
};

struct Arc {
  int from = 0;
  int to = 0;
  auto operator<=>(const Arc&) const = default;
};

/// Set of directed arcs over vertices 0..n-1, backed by an n x n bitmap.
class ArcSet {
 public:
  explicit ArcSet(int n);

  static ArcSet complete(int n);

  /// Returns true if the arc was not present before. Self-loops are rejected.
  bool insert(int from, int to);
  bool erase(int from, int to);
  bool contains(int from, int to) const noexcept {
    return bits_[index(from, to)] != 0;
  }

  int vertex_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  /// Arcs in row-major (from, to) order.
  std::vector<Arc> arcs() const;
  std::vector<int> successors(int from) const;

  bool operator==(const ArcSet& other) const = default;

 private:
  std::size_t index(int from, int to) const noexcept {
    return static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(to);
  }

  int n_;
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

/// A Hamiltonian cycle given as a vertex permutation plus its stated cost.
struct Tour {
  std::vector<int> order;
  double cost = 0.0;
};

bool is_permutation_of_range(std::span<const int> order, int n);

/// Builds a tour and computes its cost. Throws NotAPermutation.
Tour make_tour(const Instance& instance, std::vector<int> order);

ArcSet complete_arcs(const Instance& instance);

/// One binary variable per candidate arc.
std::size_t count_variables(const ArcSet& arcs) noexcept;

/// Integer percent reduction 100 * (without - with_caf) / without, rounded
/// half away from zero. Throws OrderViolation when with_caf > without.
int reduction_gap_percent(std::int64_t without, std::int64_t with_caf);

/// Sum of consecutive costs including the closing arc. Throws NotAPermutation.
double tour_cost(const Instance& instance, std::span<const int> order);

bool tour_uses_only(const Tour& tour, const ArcSet& arcs);

}  // namespace tspcaf
