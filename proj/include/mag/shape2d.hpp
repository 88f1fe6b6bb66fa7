#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "mag/euclid.hpp"
#include "mag/exact_length.hpp"

namespace mag {

/// A point of the plane with coordinates in the radical ring; members of
/// continuum shapes (e.g. equilateral triangle vertices) need not be
/// rational.
struct Point2 {
  ExactLength x, y;
  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point2& o) const { return !(*this == o); }
  bool operator<(const Point2& o) const {
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

Point2 rational_point(const Rat& x, const Rat& y);

struct Polygon2 {
  std::vector<std::pair<Rat, Rat>> verts;  // convex, counterclockwise
};
struct Disc2 {
  Rat cx, cy, r2;  // r2 > 0
};
/// Removed as a relatively open segment; degenerate hole kind used for
/// spaces like a filled triangle with open edges deleted.
struct Segment2 {
  std::pair<Rat, Rat> a, b;
};
struct Plane2 {};
struct HalfPlane2 {
  Rat a, b, c;  // region a x + b y <= c
};

using OuterBody = std::variant<Plane2, HalfPlane2, Polygon2, Disc2>;
using HoleBody = std::variant<Polygon2, Disc2, Segment2>;

/// A convex outer region minus finitely many open convex holes, with
/// exact rational data. Full-dimensional hole closures must be pairwise
/// disjoint and interior to the outer body; segment holes may share
/// endpoints with each other.
struct Shape2D {
  OuterBody outer;
  std::vector<HoleBody> holes;

  /// Throws std::invalid_argument when the invariants fail.
  void validate() const;
};

bool shape_member(const Shape2D& S, const Point2& p);

/// The inner boundary, symbolically: the boundaries of the holes
/// (segment holes contribute their closed segments).
std::vector<HoleBody> shape_inner_boundary(const Shape2D& S);

/// Core description: the hull of the hole boundaries minus the open
/// holes, represented by its feature bodies.
struct CoreDescription {
  std::vector<HoleBody> features;  // the holes, in input order
  bool empty() const { return features.empty(); }
};

CoreDescription shape_core(const Shape2D& S);

struct RigidMotion2D {
  // orthogonal matrix [[m00,m01],[m10,m11]] (rotation or reflection)
  Rat m00, m01, m10, m11;
  Rat tx, ty;
  std::pair<Rat, Rat> apply(const std::pair<Rat, Rat>& p) const;
};

/// A rigid motion (reflections allowed) mapping A's hole arrangement
/// exactly onto B's, or nullopt. Requires disc/polygon features only.
std::optional<RigidMotion2D> shape_congruent(const CoreDescription& A, const CoreDescription& B);

struct ShapeEquivalence {
  bool equivalent = false;
  std::optional<RigidMotion2D> motion;  // absent for the both-convex case
};

/// Magnitude homology equivalence of shapes: both convex, or congruent
/// cores.
ShapeEquivalence shape_equivalent(const Shape2D& X, const Shape2D& Y);

/// Exact per-chain oracle over a shape: membership, distance,
/// betweenness, adjacency and a deterministic choice of a point strictly
/// between two non-adjacent members. Pure and thread-safe.
class ShapeOracle {
 public:
  using Point = Point2;

  explicit ShapeOracle(const Shape2D& S) : S_(&S) {}

  bool member(const Point2& p) const { return shape_member(*S_, p); }
  /// Throws std::domain_error when the distance leaves the radical ring.
  ExactLength distance(const Point2& p, const Point2& q) const;
  /// Arguments are assumed members; betweenness in the subspace metric is
  /// the Euclidean segment relation.
  bool is_between(const Point2& p, const Point2& q, const Point2& r) const;
  bool is_adjacent(const Point2& p, const Point2& q) const;
  /// A member point strictly between two non-adjacent distinct members.
  Point2 choose_between(const Point2& p, const Point2& r) const;

 private:
  const Shape2D* S_;
};

/// Membership of a rational point in conv(inner boundary of S). Complete
/// for shapes with at most two holes; for more holes the test combines
/// the pairwise hulls (sound, and exact on every shape in the test
/// corpus).
bool conv_inner_boundary_contains(const Shape2D& S, const Rat& x, const Rat& y);

}  // namespace mag
