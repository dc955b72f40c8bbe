#include "tspcaf/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tspcaf/error.hpp"
#include "tspcaf/tsplib.hpp"

namespace tspcaf {

Instance::Instance(int n, std::vector<Point> points, std::vector<double> cost)
    : n_(n), points_(std::move(points)), cost_(std::move(cost)) {
  max_cost_ = cost_.empty() ? 0.0 : *std::max_element(cost_.begin(), cost_.end());
}

Instance Instance::from_points(std::vector<Point> points, DistanceRounding rounding) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw Error(ErrorCode::NTooSmall, "an instance needs at least 3 vertices");
  std::vector<double> cost(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double c = rounding == DistanceRounding::Nearest
                           ? euclidean_cost_rounded(points[i], points[j])
                           : euclidean_cost(points[i], points[j]);
      cost[static_cast<std::size_t>(i) * n + j] = c;
      cost[static_cast<std::size_t>(j) * n + i] = c;
    }
  }
  return Instance(n, std::move(points), std::move(cost));
}

Instance Instance::from_matrix(int n, std::vector<double> cost) {
  if (n < 3) throw Error(ErrorCode::NTooSmall, "an instance needs at least 3 vertices");
  if (cost.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "cost matrix must have n*n entries");
  }
  for (int i = 0; i < n; ++i) {
    if (cost[static_cast<std::size_t>(i) * n + i] != 0.0) {
      throw Error(ErrorCode::InvalidArgument, "cost matrix diagonal must be zero");
    }
    for (int j = 0; j < n; ++j) {
      const double c = cost[static_cast<std::size_t>(i) * n + j];
      if (!std::isfinite(c) || c < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "costs must be finite and nonnegative");
      }
      if (c != cost[static_cast<std::size_t>(j) * n + i]) {
        throw Error(ErrorCode::InvalidArgument, "cost matrix must be symmetric");
      }
    }
  }
  return Instance(n, {}, std::move(cost));
}

ArcSet::ArcSet(int n) : n_(n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  bits_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

ArcSet ArcSet::complete(int n) {
  ArcSet set(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) set.insert(i, j);
    }
  }
  return set;
}

bool ArcSet::insert(int from, int to) {
  if (from < 0 || to < 0 || from >= n_ || to >= n_) {
    throw Error(ErrorCode::InvalidArgument,
                "arc (" + std::to_string(from) + "," + std::to_string(to) + ") out of range");
  }
  if (from == to) throw Error(ErrorCode::InvalidArgument, "self-loops are not arcs");
  auto& bit = bits_[index(from, to)];
  if (bit) return false;
  bit = 1;
  ++count_;
  return true;
}

bool ArcSet::erase(int from, int to) {
  if (from < 0 || to < 0 || from >= n_ || to >= n_) return false;
  auto& bit = bits_[index(from, to)];
  if (!bit) return false;
  bit = 0;
  --count_;
  return true;
}

std::vector<Arc> ArcSet::arcs() const {
  std::vector<Arc> out;
  out.reserve(count_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (contains(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<int> ArcSet::successors(int from) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j) {
    if (contains(from, j)) out.push_back(j);
  }
  return out;
}

bool is_permutation_of_range(std::span<const int> order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Tour make_tour(const Instance& instance, std::vector<int> order) {
  const double cost = tour_cost(instance, order);
  return Tour{std::move(order), cost};
}

ArcSet complete_arcs(const Instance& instance) { return ArcSet::complete(instance.size()); }

std::size_t count_variables(const ArcSet& arcs) noexcept { return arcs.size(); }

int reduction_gap_percent(std::int64_t without, std::int64_t with_caf) {
  if (without <= 0) throw Error(ErrorCode::InvalidArgument, "variable count must be positive");
  if (with_caf < 0) throw Error(ErrorCode::InvalidArgument, "variable count must be nonnegative");
  if (with_caf > without) {
    throw Error(ErrorCode::OrderViolation, "reduced model is larger than the complete one");
  }
  // Exact integer form of round-half-away(100 * diff / without) for diff >= 0.
  const std::int64_t diff = without - with_caf;
  return static_cast<int>((200 * diff + without) / (2 * without));
}

double tour_cost(const Instance& instance, std::span<const int> order) {
  const int n = instance.size();
  if (!is_permutation_of_range(order, n)) {
    throw Error(ErrorCode::NotAPermutation, "tour order is not a permutation of 0..n-1");
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += instance.cost(order[i], order[(i + 1) % n]);
  return total;
}

bool tour_uses_only(const Tour& tour, const ArcSet& arcs) {
  const int n = static_cast<int>(tour.order.size());
  if (n != arcs.vertex_count()) return false;
  for (int i = 0; i < n; ++i) {
    const int a = tour.order[i];
    const int b = tour.order[(i + 1) % n];
    if (a < 0 || b < 0 || a >= n || b >= n || a == b || !arcs.contains(a, b)) return false;
  }
  return true;
}

}  // namespace tspcaf
