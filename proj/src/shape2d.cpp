#include "mag/shape2d.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mag {

namespace {

using RatPt = std::pair<Rat, Rat>;

Rat rcross(const RatPt& u, const RatPt& v) { return u.first * v.second - u.second * v.first; }
Rat rdot(const RatPt& u, const RatPt& v) { return u.first * v.first + u.second * v.second; }
RatPt rsub(const RatPt& u, const RatPt& v) { return {u.first - v.first, u.second - v.second}; }

// squared distance from point p to closed segment [a,b]
Rat point_segment_dist2(const RatPt& p, const RatPt& a, const RatPt& b) {
  RatPt ab = rsub(b, a), ap = rsub(p, a);
  Rat len2 = rdot(ab, ab);
  if (len2 == 0) return rdot(ap, ap);
  Rat t = rdot(ap, ab) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  RatPt q{a.first + t * ab.first, a.second + t * ab.second};
  RatPt d = rsub(p, q);
  return rdot(d, d);
}

// -1 outside, 0 boundary, +1 interior (polygon convex CCW)
int polygon_side(const Polygon2& P, const RatPt& p) {
  bool boundary = false;
  const size_t n = P.verts.size();
  for (size_t i = 0; i < n; ++i) {
    const RatPt& u = P.verts[i];
    const RatPt& v = P.verts[(i + 1) % n];
    Rat c = rcross(rsub(v, u), rsub(p, u));
    if (c < 0) return -1;
    if (c == 0) {
      // on the edge line; inside the edge span?
      Rat t = rdot(rsub(p, u), rsub(v, u));
      if (t >= 0 && t <= rdot(rsub(v, u), rsub(v, u))) boundary = true;
      else return -1;
    }
  }
  return boundary ? 0 : 1;
}

Rat disc_excess(const Disc2& D, const RatPt& p) {
  Rat dx = p.first - D.cx, dy = p.second - D.cy;
  return dx * dx + dy * dy - D.r2;  // <0 interior, =0 boundary, >0 outside
}

bool polygons_disjoint(const Polygon2& A, const Polygon2& B) {
  // separating axis over the edges of both convex polygons
  auto separated_by = [](const Polygon2& P, const Polygon2& Q) {
    const size_t n = P.verts.size();
    for (size_t i = 0; i < n; ++i) {
      const RatPt& u = P.verts[i];
      const RatPt& v = P.verts[(i + 1) % n];
      bool all_out = true;
      for (const RatPt& q : Q.verts)
        if (rcross(rsub(v, u), rsub(q, u)) >= 0) {
          all_out = false;
          break;
        }
      if (all_out) return true;
    }
    return false;
  };
  return separated_by(A, B) || separated_by(B, A);
}

bool discs_disjoint(const Disc2& A, const Disc2& B) {
  // |c1-c2| > r1 + r2, via A2 = d^2 - r1^2 - r2^2 > 0 and A2^2 > 4 r1^2 r2^2
  Rat dx = A.cx - B.cx, dy = A.cy - B.cy;
  Rat d2 = dx * dx + dy * dy;
  Rat a2 = d2 - A.r2 - B.r2;
  return a2 > 0 && a2 * a2 > 4 * A.r2 * B.r2;
}

bool disc_polygon_disjoint(const Disc2& D, const Polygon2& P) {
  RatPt c{D.cx, D.cy};
  if (polygon_side(P, c) >= 0) return false;
  const size_t n = P.verts.size();
  for (size_t i = 0; i < n; ++i)
    if (point_segment_dist2(c, P.verts[i], P.verts[(i + 1) % n]) <= D.r2) return false;
  return true;
}

bool segments_properly_cross(const RatPt& p1, const RatPt& p2, const RatPt& q1, const RatPt& q2) {
  Rat d = rcross(rsub(p2, p1), rsub(q2, q1));
  if (d == 0) {
    if (rcross(rsub(q1, p1), rsub(p2, p1)) != 0) return false;  // parallel, distinct lines
    // collinear: overlapping relative interiors?
    RatPt dir = rsub(p2, p1);
    Rat len2 = rdot(dir, dir);
    Rat t1 = rdot(rsub(q1, p1), dir) / len2;
    Rat t2 = rdot(rsub(q2, p1), dir) / len2;
    if (t1 > t2) std::swap(t1, t2);
    return t2 > 0 && t1 < 1;  // overlap of (0,1) with (t1,t2)
  }
  Rat t = rcross(rsub(q1, p1), rsub(q2, q1)) / d;
  Rat s = rcross(rsub(q1, p1), rsub(p2, p1)) / d;
  return t > 0 && t < 1 && s > 0 && s < 1;
}

bool segment_body_disjoint(const Segment2& S, const HoleBody& H);

bool holes_disjoint(const HoleBody& a, const HoleBody& b) {
  return std::visit(
      [&](const auto& x, const auto& y) -> bool {
        using Tx = std::decay_t<decltype(x)>;
        using Ty = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<Tx, Disc2> && std::is_same_v<Ty, Disc2>)
          return discs_disjoint(x, y);
        else if constexpr (std::is_same_v<Tx, Polygon2> && std::is_same_v<Ty, Polygon2>)
          return polygons_disjoint(x, y);
        else if constexpr (std::is_same_v<Tx, Disc2> && std::is_same_v<Ty, Polygon2>)
          return disc_polygon_disjoint(x, y);
        else if constexpr (std::is_same_v<Tx, Polygon2> && std::is_same_v<Ty, Disc2>)
          return disc_polygon_disjoint(y, x);
        else if constexpr (std::is_same_v<Tx, Segment2>)
          return segment_body_disjoint(x, HoleBody(y));
        else
          return segment_body_disjoint(y, HoleBody(x));
      },
      a, b);
}

bool segment_body_disjoint(const Segment2& S, const HoleBody& H) {
  if (const auto* t = std::get_if<Segment2>(&H)) {
    // segment holes may share endpoints; relative interiors must not meet
    return !segments_properly_cross(S.a, S.b, t->a, t->b);
  }
  if (const auto* d = std::get_if<Disc2>(&H))
    return point_segment_dist2({d->cx, d->cy}, S.a, S.b) > d->r2;
  const auto& p = std::get<Polygon2>(H);
  if (polygon_side(p, S.a) >= 0 || polygon_side(p, S.b) >= 0) return false;
  const size_t n = p.verts.size();
  for (size_t i = 0; i < n; ++i)
    if (segments_properly_cross(S.a, S.b, p.verts[i], p.verts[(i + 1) % n])) return false;
  return true;
}

std::vector<RatPt> hole_anchor_points(const HoleBody& h) {
  if (const auto* d = std::get_if<Disc2>(&h)) return {{d->cx, d->cy}};
  if (const auto* p = std::get_if<Polygon2>(&h)) return p->verts;
  const auto& s = std::get<Segment2>(h);
  return {s.a, s.b};
}

// strict containment of a hole in the interior of the outer body;
// one-dimensional segment holes only need closed containment (they may
// lie on the outer boundary, e.g. removed edges of a filled polygon)
bool hole_inside_outer(const OuterBody& outer, const HoleBody& hole) {
  auto points = hole_anchor_points(hole);
  if (std::holds_alternative<Segment2>(hole)) {
    return std::visit(
        [&](const auto& o) -> bool {
          using T = std::decay_t<decltype(o)>;
          for (const RatPt& p : points) {
            if constexpr (std::is_same_v<T, HalfPlane2>) {
              if (o.a * p.first + o.b * p.second > o.c) return false;
            } else if constexpr (std::is_same_v<T, Polygon2>) {
              if (polygon_side(o, p) < 0) return false;
            } else if constexpr (std::is_same_v<T, Disc2>) {
              Rat dx = p.first - o.cx, dy = p.second - o.cy;
              if (dx * dx + dy * dy > o.r2) return false;
            }
          }
          return true;
        },
        outer);
  }
  return std::visit(
      [&](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Plane2>) {
          return true;
        } else if constexpr (std::is_same_v<T, HalfPlane2>) {
          if (const auto* d = std::get_if<Disc2>(&hole)) {
            Rat slack = o.c - (o.a * d->cx + o.b * d->cy);
            return slack > 0 && slack * slack > (o.a * o.a + o.b * o.b) * d->r2;
          }
          for (const RatPt& p : points)
            if (o.a * p.first + o.b * p.second >= o.c) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Polygon2>) {
          if (const auto* d = std::get_if<Disc2>(&hole)) {
            if (polygon_side(o, {d->cx, d->cy}) <= 0) return false;
            const size_t n = o.verts.size();
            for (size_t i = 0; i < n; ++i)
              if (point_segment_dist2({d->cx, d->cy}, o.verts[i], o.verts[(i + 1) % n]) <= d->r2)
                return false;
            return true;
          }
          for (const RatPt& p : points)
            if (polygon_side(o, p) <= 0) return false;
          return true;
        } else {  // Disc2 outer
          if (const auto* d = std::get_if<Disc2>(&hole)) {
            if (o.r2 <= d->r2) return false;
            Rat dx = o.cx - d->cx, dy = o.cy - d->cy;
            Rat d2 = dx * dx + dy * dy;
            Rat a2 = o.r2 + d->r2 - d2;
            return a2 > 0 && a2 * a2 > 4 * o.r2 * d->r2;  // d + r < R
          }
          for (const RatPt& p : points) {
            Rat dx = p.first - o.cx, dy = p.second - o.cy;
            if (dx * dx + dy * dy >= o.r2) return false;
          }
          return true;
        }
      },
      outer);
}

// ---- exact-length plane geometry --------------------------------------

ExactLength el(const Rat& r) { return ExactLength(r); }

ExactLength elcross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
ExactLength eldot(const Point2& u, const Point2& v) { return u.x * v.x + u.y * v.y; }
Point2 elsub(const Point2& u, const Point2& v) { return {u.x - v.x, u.y - v.y}; }
Point2 eladd(const Point2& u, const Point2& v) { return {u.x + v.x, u.y + v.y}; }
Point2 elscale(const ExactLength& t, const Point2& u) { return {t * u.x, t * u.y}; }
Point2 to_el(const RatPt& p) { return {el(p.first), el(p.second)}; }

// q on the closed segment [p, r]
bool on_closed_segment(const Point2& p, const Point2& q, const Point2& r) {
  if (p == r) return q == p;  // degenerate segment is a single point
  Point2 pr = elsub(r, p), pq = elsub(q, p);
  if (!elcross(pr, pq).is_zero()) return false;
  ExactLength t = eldot(pq, pr);
  return t.sign() >= 0 && (eldot(pr, pr) - t).sign() >= 0;
}

bool in_open_hole(const HoleBody& h, const Point2& p) {
  if (const auto* d = std::get_if<Disc2>(&h)) {
    Point2 c = rational_point(d->cx, d->cy);
    Point2 v = elsub(p, c);
    return (eldot(v, v) - el(d->r2)).sign() < 0;
  }
  if (const auto* poly = std::get_if<Polygon2>(&h)) {
    const size_t n = poly->verts.size();
    for (size_t i = 0; i < n; ++i) {
      Point2 u = to_el(poly->verts[i]);
      Point2 v = to_el(poly->verts[(i + 1) % n]);
      if (elcross(elsub(v, u), elsub(p, u)).sign() <= 0) return false;
    }
    return true;
  }
  const auto& s = std::get<Segment2>(h);
  Point2 a = to_el(s.a), b = to_el(s.b);
  return p != a && p != b && on_closed_segment(a, p, b);
}

bool in_hole_closure(const HoleBody& h, const Point2& p) {
  if (const auto* d = std::get_if<Disc2>(&h)) {
    Point2 c = rational_point(d->cx, d->cy);
    Point2 v = elsub(p, c);
    return (eldot(v, v) - el(d->r2)).sign() <= 0;
  }
  if (const auto* poly = std::get_if<Polygon2>(&h)) {
    const size_t n = poly->verts.size();
    for (size_t i = 0; i < n; ++i) {
      Point2 u = to_el(poly->verts[i]);
      Point2 v = to_el(poly->verts[(i + 1) % n]);
      if (elcross(elsub(v, u), elsub(p, u)).sign() < 0) return false;
    }
    return true;
  }
  const auto& s = std::get<Segment2>(h);
  return on_closed_segment(to_el(s.a), p, to_el(s.b));
}

bool in_outer_closed(const OuterBody& o, const Point2& p) {
  return std::visit(
      [&](const auto& body) -> bool {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Plane2>) {
          return true;
        } else if constexpr (std::is_same_v<T, HalfPlane2>) {
          return (el(body.c) - el(body.a) * p.x - el(body.b) * p.y).sign() >= 0;
        } else if constexpr (std::is_same_v<T, Polygon2>) {
          const size_t n = body.verts.size();
          for (size_t i = 0; i < n; ++i) {
            Point2 u = to_el(body.verts[i]);
            Point2 v = to_el(body.verts[(i + 1) % n]);
            if (elcross(elsub(v, u), elsub(p, u)).sign() < 0) return false;
          }
          return true;
        } else {
          Point2 c = rational_point(body.cx, body.cy);
          Point2 v = elsub(p, c);
          return (eldot(v, v) - el(body.r2)).sign() <= 0;
        }
      },
      o);
}

}  // namespace

Point2 rational_point(const Rat& x, const Rat& y) { return {ExactLength(x), ExactLength(y)}; }

void Shape2D::validate() const {
  if (const auto* poly = std::get_if<Polygon2>(&outer)) {
    if (poly->verts.size() < 3) throw std::invalid_argument("outer polygon needs >= 3 vertices");
  }
  auto check_body = [](const HoleBody& h) {
    if (const auto* d = std::get_if<Disc2>(&h)) {
      if (d->r2 <= 0) throw std::invalid_argument("disc hole needs positive squared radius");
    } else if (const auto* p = std::get_if<Polygon2>(&h)) {
      const size_t n = p->verts.size();
      if (n < 3) throw std::invalid_argument("polygon hole needs >= 3 vertices");
      for (size_t i = 0; i < n; ++i) {
        Rat c = rcross(rsub(p->verts[(i + 1) % n], p->verts[i]),
                       rsub(p->verts[(i + 2) % n], p->verts[(i + 1) % n]));
        if (c <= 0)
          throw std::invalid_argument("polygon hole must be strictly convex counterclockwise");
      }
    } else {
      const auto& s = std::get<Segment2>(h);
      if (s.a == s.b) throw std::invalid_argument("degenerate segment hole");
    }
  };
  if (const auto* poly = std::get_if<Polygon2>(&outer)) {
    const size_t n = poly->verts.size();
    for (size_t i = 0; i < n; ++i) {
      Rat c = rcross(rsub(poly->verts[(i + 1) % n], poly->verts[i]),
                     rsub(poly->verts[(i + 2) % n], poly->verts[(i + 1) % n]));
      if (c <= 0)
        throw std::invalid_argument("outer polygon must be strictly convex counterclockwise");
    }
  }
  for (const auto& h : holes) {
    check_body(h);
    if (!hole_inside_outer(outer, h))
      throw std::invalid_argument("hole not interior to the outer body");
  }
  for (size_t i = 0; i < holes.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (!holes_disjoint(holes[i], holes[j]))
        throw std::invalid_argument("hole closures are not pairwise disjoint");
}

bool shape_member(const Shape2D& S, const Point2& p) {
  if (!in_outer_closed(S.outer, p)) return false;
  for (const auto& h : S.holes)
    if (in_open_hole(h, p)) return false;
  return true;
}

std::vector<HoleBody> shape_inner_boundary(const Shape2D& S) { return S.holes; }

CoreDescription shape_core(const Shape2D& S) { return CoreDescription{S.holes}; }

std::pair<Rat, Rat> RigidMotion2D::apply(const std::pair<Rat, Rat>& p) const {
  return {m00 * p.first + m01 * p.second + tx, m10 * p.first + m11 * p.second + ty};
}

namespace {

// hole invariant used to prune correspondences: (kind, r2 | sorted edge data)
std::vector<Rat> hole_invariant(const HoleBody& h) {
  if (const auto* d = std::get_if<Disc2>(&h)) return {Rat(0), d->r2};
  const auto& p = std::get<Polygon2>(h);
  std::vector<Rat> inv{Rat(1), Rat(static_cast<long>(p.verts.size()))};
  std::vector<Rat> e;
  const size_t n = p.verts.size();
  for (size_t i = 0; i < n; ++i) {
    RatPt d = rsub(p.verts[(i + 1) % n], p.verts[i]);
    e.push_back(rdot(d, d));
  }
  std::sort(e.begin(), e.end());
  inv.insert(inv.end(), e.begin(), e.end());
  return inv;
}

bool motion_maps_hole(const RigidMotion2D& M, const HoleBody& a, const HoleBody& b) {
  if (const auto* da = std::get_if<Disc2>(&a)) {
    const auto* db = std::get_if<Disc2>(&b);
    if (!db) return false;
    auto c = M.apply({da->cx, da->cy});
    return c.first == db->cx && c.second == db->cy && da->r2 == db->r2;
  }
  const auto* pa = std::get_if<Polygon2>(&a);
  const auto* pb = std::get_if<Polygon2>(&b);
  if (!pa || !pb || pa->verts.size() != pb->verts.size()) return false;
  std::vector<RatPt> img;
  for (const RatPt& v : pa->verts) img.push_back(M.apply(v));
  std::vector<RatPt> sa = img, sb = pb->verts;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

std::optional<RigidMotion2D> motion_from_pairs(const RatPt& p1, const RatPt& p2, const RatPt& q1,
                                               const RatPt& q2, bool reflect) {
  RatPt v = rsub(p2, p1), w = rsub(q2, q1);
  Rat len2 = rdot(v, v);
  if (len2 == 0 || len2 != rdot(w, w)) return std::nullopt;
  RigidMotion2D M;
  if (!reflect) {
    Rat c = rdot(v, w) / len2, s = rcross(v, w) / len2;
    M.m00 = c;
    M.m01 = -s;
    M.m10 = s;
    M.m11 = c;
  } else {
    Rat c = (v.first * w.first - v.second * w.second) / len2;
    Rat s = (v.first * w.second + v.second * w.first) / len2;
    M.m00 = c;
    M.m01 = s;
    M.m10 = s;
    M.m11 = -c;
  }
  auto r = [&](const RatPt& p) -> RatPt {
    return {M.m00 * p.first + M.m01 * p.second, M.m10 * p.first + M.m11 * p.second};
  };
  RatPt rp1 = r(p1);
  M.tx = q1.first - rp1.first;
  M.ty = q1.second - rp1.second;
  return M;
}

bool motion_maps_arrangement(const RigidMotion2D& M, const CoreDescription& A,
                             const CoreDescription& B) {
  std::vector<bool> used(B.features.size(), false);
  for (const auto& ha : A.features) {
    bool matched = false;
    for (size_t j = 0; j < B.features.size() && !matched; ++j) {
      if (used[j]) continue;
      if (motion_maps_hole(M, ha, B.features[j])) {
        used[j] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

std::optional<RigidMotion2D> shape_congruent(const CoreDescription& A, const CoreDescription& B) {
  for (const auto& f : A.features)
    if (std::holds_alternative<Segment2>(f))
      throw std::invalid_argument("congruence supports disc and polygon features only");
  for (const auto& f : B.features)
    if (std::holds_alternative<Segment2>(f))
      throw std::invalid_argument("congruence supports disc and polygon features only");
  if (A.features.size() != B.features.size()) return std::nullopt;
  if (A.features.empty()) return RigidMotion2D{1, 0, 0, 1, 0, 0};
  {
    // invariant multisets must match
    std::vector<std::vector<Rat>> ia, ib;
    for (const auto& f : A.features) ia.push_back(hole_invariant(f));
    for (const auto& f : B.features) ib.push_back(hole_invariant(f));
    std::sort(ia.begin(), ia.end());
    std::sort(ib.begin(), ib.end());
    if (ia != ib) return std::nullopt;
  }
  std::vector<RatPt> fa, fb;
  for (const auto& f : A.features)
    for (const RatPt& p : hole_anchor_points(f)) fa.push_back(p);
  for (const auto& f : B.features)
    for (const RatPt& p : hole_anchor_points(f)) fb.push_back(p);

  if (fa.size() == 1) {
    // single disc: translate center to center
    RigidMotion2D M{1, 0, 0, 1, fb[0].first - fa[0].first, fb[0].second - fa[0].second};
    if (motion_maps_arrangement(M, A, B)) return M;
    return std::nullopt;
  }
  const RatPt& p1 = fa[0];
  // second base point: any other distinct anchor
  size_t i2 = 1;
  while (i2 < fa.size() && fa[i2] == p1) ++i2;
  if (i2 == fa.size()) return std::nullopt;
  const RatPt& p2 = fa[i2];
  for (const RatPt& q1 : fb)
    for (const RatPt& q2 : fb) {
      if (q1 == q2) continue;
      for (bool reflect : {false, true}) {
        auto M = motion_from_pairs(p1, p2, q1, q2, reflect);
        if (M && motion_maps_arrangement(*M, A, B)) return M;
      }
    }
  return std::nullopt;
}

ShapeEquivalence shape_equivalent(const Shape2D& X, const Shape2D& Y) {
  X.validate();
  Y.validate();
  ShapeEquivalence res;
  if (X.holes.empty() && Y.holes.empty()) {
    res.equivalent = true;  // both convex
    return res;
  }
  if (X.holes.empty() != Y.holes.empty()) return res;
  auto m = shape_congruent(shape_core(X), shape_core(Y));
  if (m) {
    res.equivalent = true;
    res.motion = m;
  }
  return res;
}

// ---- oracle ------------------------------------------------------------

ExactLength ShapeOracle::distance(const Point2& p, const Point2& q) const {
  Point2 d = elsub(p, q);
  ExactLength d2 = eldot(d, d);
  auto root = d2.sqrt();
  if (!root)
    throw std::domain_error("distance not representable in the radical ring: sqrt(" + d2.str() +
                            ")");
  return *root;
}

bool ShapeOracle::is_between(const Point2& p, const Point2& q, const Point2& r) const {
  return on_closed_segment(p, q, r);
}

bool ShapeOracle::is_adjacent(const Point2& p, const Point2& q) const {
  if (p == q) return false;
  for (const auto& h : S_->holes) {
    if (const auto* d = std::get_if<Disc2>(&h)) {
      if (in_hole_closure(h, p) && in_hole_closure(h, q)) return true;
    } else if (const auto* poly = std::get_if<Polygon2>(&h)) {
      if (!in_hole_closure(h, p) || !in_hole_closure(h, q)) continue;
      // members lie on the boundary; the open chord is interior unless
      // both points share an edge
      const size_t n = poly->verts.size();
      bool same_edge = false;
      for (size_t i = 0; i < n && !same_edge; ++i) {
        Point2 u = to_el(poly->verts[i]);
        Point2 v = to_el(poly->verts[(i + 1) % n]);
        if (on_closed_segment(u, p, v) && on_closed_segment(u, q, v)) same_edge = true;
      }
      if (!same_edge) return true;
    } else {
      const auto& s = std::get<Segment2>(h);
      Point2 a = to_el(s.a), b = to_el(s.b);
      if ((p == a && q == b) || (p == b && q == a)) return true;
    }
  }
  return false;
}

namespace {

struct Blocked {
  ExactLength start, end;  // open blocked interval, or a single point when start == end
};

// blocked parameter set of the open segment p + t(r-p), t in (0,1),
// against one removed hole set
void blocked_params(const HoleBody& h, const Point2& p, const Point2& r,
                    std::vector<Blocked>& out) {
  Point2 dir = elsub(r, p);
  ExactLength len2 = eldot(dir, dir);
  ExactLength zero(0), one(1);
  auto clip_push = [&](ExactLength t0, ExactLength t1, bool point) {
    if (point) {
      if (t0.sign() > 0 && (one - t0).sign() > 0) out.push_back({t0, t0});
      return;
    }
    if (t0 < zero) t0 = zero;
    if (t1 > one) t1 = one;
    if ((t1 - t0).sign() > 0) out.push_back({t0, t1});
  };
  if (const auto* d = std::get_if<Disc2>(&h)) {
    Point2 c = rational_point(d->cx, d->cy);
    Point2 pc = elsub(p, c);
    ExactLength A = len2;
    ExactLength B = ExactLength(Rat(2)) * eldot(pc, dir);
    ExactLength C = eldot(pc, pc) - el(d->r2);
    ExactLength disc = B * B - ExactLength(Rat(4)) * A * C;
    if (disc.sign() <= 0) return;
    auto root = disc.sqrt();
    if (!root)
      throw std::domain_error("segment-disc crossing parameter leaves the radical ring");
    ExactLength inv2a = (ExactLength(Rat(2)) * A).inverse();
    clip_push((-B - *root) * inv2a, (-B + *root) * inv2a, false);
  } else if (const auto* poly = std::get_if<Polygon2>(&h)) {
    // intersect the parameter line with every edge halfplane
    ExactLength lo(0), hi(1);
    for (size_t i = 0; i < poly->verts.size(); ++i) {
      Point2 u = to_el(poly->verts[i]);
      Point2 v = to_el(poly->verts[(i + 1) % poly->verts.size()]);
      Point2 e = elsub(v, u);
      // cross(e, p + t dir - u) >= 0  <=>  alpha + beta t >= 0
      ExactLength alpha = elcross(e, elsub(p, u));
      ExactLength beta = elcross(e, dir);
      int bs = beta.sign();
      if (bs == 0) {
        if (alpha.sign() < 0) return;  // line misses the polygon
        continue;
      }
      ExactLength bound = -alpha * beta.inverse();
      if (bs > 0) {
        if (bound > lo) lo = bound;
      } else {
        if (bound < hi) hi = bound;
      }
    }
    if ((hi - lo).sign() > 0) clip_push(lo, hi, false);
  } else {
    const auto& s = std::get<Segment2>(h);
    Point2 a = to_el(s.a), b = to_el(s.b);
    Point2 ab = elsub(b, a);
    ExactLength den = elcross(dir, ab);
    if (den.is_zero()) {
      if (!elcross(elsub(a, p), dir).is_zero()) return;  // parallel, off the line
      ExactLength ta = eldot(elsub(a, p), dir) * len2.inverse();
      ExactLength tb = eldot(elsub(b, p), dir) * len2.inverse();
      if (ta > tb) std::swap(ta, tb);
      clip_push(ta, tb, false);
    } else {
      ExactLength t = elcross(elsub(a, p), ab) * den.inverse();
      ExactLength sp = elcross(elsub(a, p), dir) * den.inverse();
      if (sp.sign() > 0 && (ExactLength(1) - sp).sign() > 0)  // crosses the open hole segment
        clip_push(t, t, true);
    }
  }
}

}  // namespace

Point2 ShapeOracle::choose_between(const Point2& p, const Point2& r) const {
  if (p == r) throw std::invalid_argument("choose_between needs distinct points");
  ExactLength half(Rat(1, 2));
  auto at = [&](const ExactLength& t) { return eladd(p, elscale(t, elsub(r, p))); };
  Point2 mid = at(half);
  if (member(mid)) return mid;

  std::vector<Blocked> blocks;
  for (const auto& h : S_->holes) blocked_params(h, p, r, blocks);
  std::sort(blocks.begin(), blocks.end(),
            [](const Blocked& a, const Blocked& b) { return a.start < b.start; });
  ExactLength cur(0), one(1);
  for (const auto& blk : blocks) {
    if (blk.start > cur) return at((cur + blk.start) * half);
    if (cur.sign() > 0 && cur < one) {
      Point2 q = at(cur);
      if (member(q)) return q;  // touching point between blocked stretches
    }
    if (blk.end > cur) cur = blk.end;
  }
  if (cur < one) return at((cur + one) * half);
  throw std::logic_error("no member point strictly between (points are adjacent?)");
}

// ---- hull of the inner boundary ---------------------------------------

namespace {

// minimum of the rational quadratic A t^2 + B t + C over [0,1]
Rat quad_min_unit(const Rat& A, const Rat& B, const Rat& C) {
  Rat best = C;  // t = 0
  Rat at1 = A + B + C;
  if (at1 < best) best = at1;
  if (A > 0) {
    Rat t = -B / (2 * A);
    if (t > 0 && t < 1) {
      Rat v = A * t * t + B * t + C;
      if (v < best) best = v;
    }
  }
  return best;
}

// membership of rational a in conv(D union {v}) for a disc D
bool in_hull_disc_point(const Disc2& D, const RatPt& v, const RatPt& a) {
  // |a - t c - (1-t) v|^2 <= t^2 r2 for some t in [0,1]
  RatPt u = rsub(a, v);
  RatPt w = rsub({D.cx, D.cy}, v);
  Rat A = rdot(w, w) - D.r2;
  Rat B = -2 * rdot(u, w);
  Rat C = rdot(u, u);
  return quad_min_unit(A, B, C) <= 0;
}

// membership of rational a in conv(D1 union D2)
bool in_hull_disc_disc(const Disc2& D1, const Disc2& D2, const RatPt& a) {
  // f(t) = |a - c(t)|^2 - r(t)^2 with c(t) = (1-t)c1 + t c2 and
  // r(t) = (1-t) r1 + t r2; the cross term makes f ExactLength-valued.
  Point2 pa = rational_point(a.first, a.second);
  Point2 c1 = rational_point(D1.cx, D1.cy), c2 = rational_point(D2.cx, D2.cy);
  Point2 dc = elsub(c2, c1), v = elsub(pa, c1);
  ExactLength r1 = ExactLength::sqrt_rational(D1.r2);
  ExactLength r2 = ExactLength::sqrt_rational(D2.r2);
  ExactLength dr = r2 - r1;
  ExactLength A = eldot(dc, dc) - dr * dr;
  ExactLength B = ExactLength(Rat(-2)) * eldot(v, dc) - ExactLength(Rat(2)) * r1 * dr;
  ExactLength C = eldot(v, v) - r1 * r1;
  ExactLength best = C;
  ExactLength at1 = A + B + C;
  if (at1 < best) best = at1;
  if (A.sign() > 0) {
    ExactLength t = -B * (ExactLength(Rat(2)) * A).inverse();
    if (t.sign() > 0 && (ExactLength(1) - t).sign() > 0) {
      ExactLength val = (A * t + B) * t + C;
      if (val < best) best = val;
    }
  }
  return best.sign() <= 0;
}

// membership of rational a in conv(D union {v1, v2})
bool in_hull_disc_two_points(const Disc2& D, const RatPt& v1, const RatPt& v2, const RatPt& a) {
  // a = l1 v1 + l2 v2 + (1 - l1 - l2) d, d in D; feasibility of
  // F(l1,l2) = |a - l1 v1 - l2 v2 - (1-l1-l2) c|^2 - (1-l1-l2)^2 r2 <= 0
  // over the triangle l1, l2 >= 0, l1 + l2 <= 1.
  RatPt c{D.cx, D.cy};
  RatPt u = rsub(a, c);
  RatPt e1 = rsub(v1, c), e2 = rsub(v2, c);
  auto F = [&](const Rat& l1, const Rat& l2) -> Rat {
    Rat px = u.first - l1 * e1.first - l2 * e2.first;
    Rat py = u.second - l1 * e1.second - l2 * e2.second;
    Rat s = 1 - l1 - l2;
    return px * px + py * py - s * s * D.r2;
  };
  // triangle vertices
  for (auto [l1, l2] : {std::pair<Rat, Rat>{0, 0}, {1, 0}, {0, 1}})
    if (F(l1, l2) <= 0) return true;
  // edges: the restriction is an exact 1-variable quadratic, recovered
  // from three samples
  auto edge_min = [](auto eval) -> Rat {
    Rat f0 = eval(Rat(0)), f1 = eval(Rat(1)), fh = eval(Rat(1, 2));
    Rat best = f1 < f0 ? f1 : f0;
    Rat A = 2 * (f0 + f1 - 2 * fh);
    Rat B = f1 - f0 - A;
    if (A > 0) {
      Rat t = -B / (2 * A);
      if (t > 0 && t < 1) {
        Rat v = eval(t);
        if (v < best) best = v;
      }
    }
    return best;
  };
  if (edge_min([&](const Rat& t) -> Rat { return F(t, Rat(0)); }) <= 0) return true;
  if (edge_min([&](const Rat& t) -> Rat { return F(Rat(0), t); }) <= 0) return true;
  if (edge_min([&](const Rat& t) -> Rat { return F(t, 1 - t); }) <= 0) return true;
  // interior critical point of F = l^T H l + G^T l + c0
  Rat H11 = rdot(e1, e1) - D.r2, H12 = rdot(e1, e2) - D.r2, H22 = rdot(e2, e2) - D.r2;
  Rat G1 = -2 * rdot(u, e1) + 2 * D.r2, G2 = -2 * rdot(u, e2) + 2 * D.r2;
  RatMat M{{2 * H11, 2 * H12}, {2 * H12, 2 * H22}};
  RatVec rhs{-G1, -G2};
  auto sol = rat_solve(M, rhs);
  if (sol) {
    Rat l1 = (*sol)[0], l2 = (*sol)[1];
    if (l1 >= 0 && l2 >= 0 && l1 + l2 <= 1 && F(l1, l2) <= 0) return true;
  }
  return false;
}

std::optional<Disc2> hole_disc(const HoleBody& h) {
  if (const auto* d = std::get_if<Disc2>(&h)) return *d;
  return std::nullopt;
}

std::vector<RatPt> hole_vertices(const HoleBody& h) {
  if (const auto* p = std::get_if<Polygon2>(&h)) return p->verts;
  if (const auto* s = std::get_if<Segment2>(&h)) return {s->a, s->b};
  return {};
}

bool in_pair_hull(const HoleBody& x, const HoleBody& y, const RatPt& a) {
  auto dx = hole_disc(x), dy = hole_disc(y);
  auto vx = hole_vertices(x), vy = hole_vertices(y);
  if (dx && dy) return in_hull_disc_disc(*dx, *dy, a);
  if (!dx && !dy) {
    std::vector<Vec> gens;
    for (const RatPt& v : vx) gens.push_back({v.first, v.second});
    for (const RatPt& v : vy) gens.push_back({v.first, v.second});
    return conv_contains(gens, {a.first, a.second}).has_value();
  }
  const Disc2& d = dx ? *dx : *dy;
  const auto& vs = dx ? vy : vx;
  for (const RatPt& v : vs)
    if (in_hull_disc_point(d, v, a)) return true;
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (in_hull_disc_two_points(d, vs[j], vs[i], a)) return true;
  return false;
}

}  // namespace

bool conv_inner_boundary_contains(const Shape2D& S, const Rat& x, const Rat& y) {
  RatPt a{x, y};
  Point2 pa = rational_point(x, y);
  for (const auto& h : S.holes)
    if (in_hole_closure(h, pa)) return true;
  for (size_t i = 0; i < S.holes.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (in_pair_hull(S.holes[i], S.holes[j], a)) return true;
  if (S.holes.size() > 2) {
    // hull of the flat anchor points; sufficient extra coverage
    std::vector<Vec> gens;
    for (const auto& h : S.holes)
      for (const RatPt& v : hole_vertices(h)) gens.push_back({v.first, v.second});
    if (!gens.empty() && conv_contains(gens, {x, y})) return true;
  }
  return false;
}

}  // namespace mag
