#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mag/exact_length.hpp"

namespace mag {

/// A finite metric space with exact distances. Immutable after
/// construction; all operations on it are pure.
class FiniteMetricSpace {
 public:
  /// Validates symmetry, zero diagonal, positivity and the triangle
  /// inequality; throws std::invalid_argument on violation.
  FiniteMetricSpace(std::vector<std::string> labels,
                    std::vector<std::vector<ExactLength>> dist);

  /// Shortest-path metric of a connected undirected graph.
  /// Throws on disconnected input.
  static FiniteMetricSpace from_graph(size_t n,
                                      const std::vector<std::pair<size_t, size_t>>& edges,
                                      std::vector<std::string> labels = {});

  size_t size() const { return labels_.size(); }
  const std::string& label(size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const ExactLength& d(size_t i, size_t j) const { return dist_[i][j]; }

  /// Induced subspace on the given points (order preserved).
  FiniteMetricSpace restrict(const std::vector<size_t>& points) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<ExactLength>> dist_;
};

/// d(x,z) = d(x,y) + d(y,z), exactly.
bool is_between(const FiniteMetricSpace& X, size_t x, size_t y, size_t z);

/// Strict betweenness: between and x != y != z.
bool is_strictly_between(const FiniteMetricSpace& X, size_t x, size_t y, size_t z);

/// The closed interval [a,b], sorted by index.
std::vector<size_t> interval(const FiniteMetricSpace& X, size_t a, size_t b);

bool is_adjacent(const FiniteMetricSpace& X, size_t x, size_t y);

/// Points adjacent to at least one other point, sorted.
std::vector<size_t> inner_boundary(const FiniteMetricSpace& X);

struct AlignednessReport {
  bool aligned = false;
  /// (a, b, x, y): x, y in [a,b] but not comparable along it.
  std::optional<std::array<size_t, 4>> geodetic_violation;
  /// (a, x, y, b): a < x < y and x < y < b strictly, {x,y} not within [a,b].
  std::optional<std::array<size_t, 4>> four_cut;
};

/// Aligned iff geodetic and no 4-cuts. Witnesses are lexicographically
/// least in index order.
AlignednessReport alignedness(const FiniteMetricSpace& X);

/// Least fixed point of the interval-closure operator applied to A.
std::vector<size_t> metric_convex_hull(const FiniteMetricSpace& X, std::vector<size_t> A);

/// A distance-preserving bijection X -> Y as an index table, if one exists.
std::optional<std::vector<size_t>> isometry_witness(const FiniteMetricSpace& X,
                                                    const FiniteMetricSpace& Y);

}  // namespace mag
