#pragma once

#include <optional>
#include <vector>

#include "mag/linalg.hpp"
#include "mag/metspace.hpp"

namespace mag {

using Vec = std::vector<Rat>;  // a point of Q^N

/// Finite set of pairwise distinct points with exact rational coordinates.
struct PointSet {
  size_t dim = 0;
  std::vector<Vec> pts;

  PointSet() = default;
  PointSet(size_t d, std::vector<Vec> p);

  size_t size() const { return pts.size(); }
};

/// Squared Euclidean distance (rational).
Rat dist2(const Vec& a, const Vec& b);

/// Metric space of a point set; distances in canonical radical form.
FiniteMetricSpace metric_space_of(const PointSet& X);

bool affinely_independent(const std::vector<Vec>& points);

/// Barycentric coefficients expressing a as a convex combination of the
/// generators, or nullopt when a is outside their hull. Exact simplex
/// method with Bland's rule.
std::optional<Vec> conv_contains(const std::vector<Vec>& generators, const Vec& a);

struct CaratheodoryCertificate {
  std::vector<size_t> subset;  // indices into X, affinely independent
  Vec barycentric;             // nonnegative, sums to 1, expresses the query point
};

/// An affinely independent subset S of X with a in conv(S) and
/// conv(S) meeting X only in S. Chosen as the verified candidate least in
/// (affine dimension, squared hull volume, index order). Nullopt when
/// a is not in conv(X).
std::optional<CaratheodoryCertificate> closed_caratheodory(const PointSet& X, const Vec& a);

/// Is p strictly inside segment(x, y)? Pure rational test.
bool strictly_on_segment(const Vec& x, const Vec& p, const Vec& y);

/// Indices of points adjacent to at least one other point.
std::vector<size_t> inner_boundary_euclidean(const PointSet& X);

/// Indices of the points of X lying in conv(inner boundary of X).
std::vector<size_t> core_finite_indices(const PointSet& X);
PointSet core_finite(const PointSet& X);

/// Nearest point of conv(generators) to a; exact quadratic minimization
/// over faces with the variational inequality as an optimality check.
Vec metric_projection(const Vec& a, const std::vector<Vec>& generators);

enum class Dichotomy { inside, vertices_only, violated, precondition_failed };

/// For an affinely independent simplex whose hull meets the inner
/// boundary only in its vertices: either the hull is contained in X or
/// meets X exactly in the vertex set.
Dichotomy dichotomy_check(const PointSet& X, const std::vector<size_t>& simplex);

struct FiniteEquivalence {
  bool equivalent = false;
  /// Point-to-point witness tables X -> Y and Y -> X (1-Lipschitz,
  /// verified); present when equivalent and both spaces nonempty.
  std::optional<std::vector<size_t>> f, g;
};

/// Magnitude homology equivalence of finite Euclidean sets: cores
/// isometric. Witness maps compose the core isometry with the
/// nearest-core-point retraction.
FiniteEquivalence equivalence_decision_finite(const PointSet& X, const PointSet& Y);

}  // namespace mag
