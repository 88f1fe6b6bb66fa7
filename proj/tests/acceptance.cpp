// Acceptance gate: one pass/fail line per criterion, nonzero exit when
// anything fails. Each criterion re-derives its expected values from
// first principles (brute force, re-multiplication, exhaustive search)
// rather than trusting the library under test.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mag/euclid.hpp"
#include "mag/homology.hpp"
#include "mag/shape2d.hpp"

using namespace mag;

namespace {

int failures = 0;

void report(int k, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", k, ok ? "PASS" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

FiniteMetricSpace line(std::vector<Rat> xs) {
  std::vector<Vec> pts;
  for (auto& x : xs) pts.push_back({x});
  return metric_space_of(PointSet(1, std::move(pts)));
}

FiniteMetricSpace int_line(int n) {
  std::vector<Rat> xs;
  for (int i = 0; i < n; ++i) xs.push_back(Rat(i));
  return line(xs);
}

Shape2D triangle_minus_edges() {
  Shape2D S;
  S.outer = Polygon2{{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}}};
  S.holes = {Segment2{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}},
             Segment2{{Rat(1), Rat(0)}, {Rat(1), Rat(1)}}};
  return S;
}

PointSet random_plane_set(std::mt19937& rng, size_t n, int lo = 0, int hi = 10, int dmax = 3) {
  std::uniform_int_distribution<int> coord(lo, hi), den(1, dmax);
  std::set<Vec> uniq;
  while (uniq.size() < n)
    uniq.insert({Rat(coord(rng), den(rng)), Rat(coord(rng), den(rng))});
  return PointSet(2, {uniq.begin(), uniq.end()});
}

FiniteMetricSpace random_rational_subset(std::mt19937& rng, size_t n, size_t dim) {
  std::uniform_int_distribution<int> coord(0, 12), den(1, 2);
  std::set<std::vector<Rat>> uniq;
  while (uniq.size() < n) {
    std::vector<Rat> p;
    for (size_t k = 0; k < dim; ++k) p.push_back(Rat(coord(rng), den(rng)));
    uniq.insert(p);
  }
  return metric_space_of(PointSet(dim, {uniq.begin(), uniq.end()}));
}

// ---------------------------------------------------------------------
// 1. MH_{1,1} of the four-point and three-point arithmetic progressions.
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  auto tx = magnitude_homology(int_line(4), 2, ExactLength(2));
  auto ty = magnitude_homology(int_line(3), 2, ExactLength(2));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = tx.at(1, ExactLength(1)) == HomologyGroup{6, {}} &&
            ty.at(1, ExactLength(1)) == HomologyGroup{4, {}} && secs < 1.0;
  std::ostringstream os;
  os << "MH_{1,1}({0,1,2,3}) = " << tx.at(1, ExactLength(1)).str() << ", MH_{1,1}({0,1,2}) = "
     << ty.at(1, ExactLength(1)).str() << " (" << secs << " s)";
  report(1, ok, os.str());
}

// ---------------------------------------------------------------------
// 2. Degree-2 fixture: Z^4 for {0,1,2} at the grading its listed chains
// occupy, the six thin degree-2 chains of the triangle shape, and the
// injective-but-not-surjective induced map under f(i) = v_i.
void criterion2() {
  auto X = int_line(3);
  auto t = magnitude_homology(X, 2, ExactLength(2));
  // the listed degree-2 chains (0,1,0) etc. each have length 2, so the
  // group they generate sits at (n, l) = (2, 2)
  bool ok = t.at(2, ExactLength(2)) == HomologyGroup{4, {}};

  auto S = triangle_minus_edges();
  ShapeOracle O(S);
  Point2 v0 = rational_point(Rat(0), Rat(0));
  Point2 v1 = rational_point(Rat(1), Rat(0));
  Point2 v2 = rational_point(Rat(1), Rat(1));
  std::vector<Point2> v = {v0, v1, v2};
  std::vector<std::vector<Point2>> six = {{v0, v1, v0}, {v0, v1, v2}, {v1, v0, v1},
                                          {v1, v2, v1}, {v2, v1, v0}, {v2, v1, v2}};
  for (const auto& c : six) ok = ok && is_thin(O, c);

  // push the four thin degree-2 chains of X = {0,1,2}
  FiniteOracle OX(X);
  auto f = [&](size_t i) { return v[i]; };
  auto thin2 = thin_chain_basis(X, 2, ExactLength(2));
  ok = ok && thin2.size() == 4;
  std::set<std::vector<Point2>> images2;
  for (const auto& c : thin2) {
    auto img = push_thin(OX, O, f, c);
    if (!img) ok = false;
    else images2.insert(*img);
  }
  ok = ok && images2.size() == 4;  // injective on the thin basis
  // the images are among the six, and exactly two listed chains are missed
  size_t hit = 0;
  for (const auto& c : six)
    if (images2.count(c)) ++hit;
  ok = ok && hit == 4;

  // degree 1: all four thin chains of X map to distinct thin chains
  auto thin1 = thin_chain_basis(X, 1, ExactLength(1));
  std::set<std::vector<Point2>> images1;
  for (const auto& c : thin1) {
    auto img = push_thin(OX, O, f, c);
    if (!img) ok = false;
    else images1.insert(*img);
  }
  ok = ok && thin1.size() == 4 && images1.size() == 4;

  report(2, ok,
         "MH_{2,l}({0,1,2}) = Z^4 at the listed chains' grading; 6 thin shape chains; "
         "f* injective, rank 4 vs 6");
}

// ---------------------------------------------------------------------
// 3. Alignedness witnesses for the three graphs, and all trees <= 9.
std::string tree_canon(size_t root, size_t parent,
                       const std::vector<std::vector<size_t>>& adj) {
  std::vector<std::string> kids;
  for (size_t k : adj[root])
    if (k != parent) kids.push_back(tree_canon(k, root, adj));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

std::string free_tree_canon(const std::vector<std::pair<size_t, size_t>>& edges, size_t n) {
  std::vector<std::vector<size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // peel leaves to find the one or two centers
  std::vector<size_t> deg(n);
  for (size_t i = 0; i < n; ++i) deg[i] = adj[i].size();
  std::vector<size_t> layer;
  std::vector<bool> gone(n, false);
  for (size_t i = 0; i < n; ++i)
    if (deg[i] <= 1) layer.push_back(i);
  size_t remaining = n;
  while (remaining > 2) {
    std::vector<size_t> next;
    for (size_t l : layer) {
      gone[l] = true;
      --remaining;
      for (size_t k : adj[l])
        if (!gone[k] && --deg[k] == 1) next.push_back(k);
    }
    layer = next;
  }
  std::string best;
  for (size_t c : layer) {
    std::string s = tree_canon(c, n, adj);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

void criterion3() {
  bool ok = true;
  // 5-cycle v-w-x-y-z
  auto g1 = FiniteMetricSpace::from_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}},
                                          {"v", "w", "x", "y", "z"});
  auto r1 = alignedness(g1);
  ok = ok && !r1.aligned && r1.four_cut &&
       *r1.four_cut == std::array<size_t, 4>{0, 1, 2, 3};  // (v,w,x,y)

  // square w-x-y-z with diagonal w-y
  auto g2 = FiniteMetricSpace::from_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}},
                                          {"w", "x", "y", "z"});
  auto r2 = alignedness(g2);
  ok = ok && !r2.aligned && !r2.four_cut && r2.geodetic_violation;
  if (r2.geodetic_violation) {
    auto [a, b, p, q] = *r2.geodetic_violation;
    // w, y incomparable inside [x, z]
    ok = ok && g2.label(a) == "x" && g2.label(b) == "z" && g2.label(p) == "w" &&
         g2.label(q) == "y";
  }

  // square w-x-y-z with centre v joined to w and y
  auto g3 = FiniteMetricSpace::from_graph(
      5, {{1, 0}, {0, 3}, {3, 4}, {4, 1}, {1, 2}, {2, 3}},
      {"x", "w", "v", "y", "z"});  // indices: x=0, w=1, v=2, y=3, z=4
  auto r3 = alignedness(g3);
  ok = ok && !r3.aligned && r3.four_cut;
  if (r3.four_cut) {
    auto [a, p, q, b] = *r3.four_cut;
    ok = ok && g3.label(a) == "x" && g3.label(p) == "w" && g3.label(q) == "v" &&
         g3.label(b) == "y";
  }

  // every free tree with at most 9 vertices is aligned; generated by leaf
  // attachment with canonical-form deduplication
  std::map<size_t, std::vector<std::vector<std::pair<size_t, size_t>>>> trees;
  trees[1] = {{}};
  std::vector<size_t> counts = {1};
  for (size_t n = 2; n <= 9; ++n) {
    std::set<std::string> seen;
    for (const auto& t : trees[n - 1]) {
      for (size_t attach = 0; attach < n - 1; ++attach) {
        auto e = t;
        e.push_back({attach, n - 1});
        auto key = free_tree_canon(e, n);
        if (seen.insert(key).second) trees[n].push_back(e);
      }
    }
    counts.push_back(trees[n].size());
  }
  // number of unlabelled free trees on 1..9 vertices
  ok = ok && counts == std::vector<size_t>{1, 1, 1, 2, 3, 6, 11, 23, 47};
  size_t total = 0;
  for (size_t n = 2; n <= 9; ++n)
    for (const auto& t : trees[n]) {
      ++total;
      if (!alignedness(FiniteMetricSpace::from_graph(n, t)).aligned) ok = false;
    }
  std::ostringstream os;
  os << "graph witnesses (v,w,x,y) / (x,z;w,y) / (x,w,v,y); " << total
     << " trees (<= 9 vertices) all aligned";
  report(3, ok, os.str());
}

// ---------------------------------------------------------------------
// 4. Thin-chain cross-validation on 100 random Euclidean subsets.
void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(101);
  bool ok = true;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    size_t dim = trial < 50 ? 1 : 2;
    std::uniform_int_distribution<size_t> sz(2, dim == 1 ? 7 : 6);
    auto X = random_rational_subset(rng, sz(rng), dim);
    ExactLength diam(0);
    for (size_t i = 0; i < X.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (X.d(i, j) > diam) diam = X.d(i, j);
    auto r = ky_compare(X, 4, diam * ExactLength(4) + ExactLength(1));
    if (r.refused || !r.match) ok = false;
    ++checked;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 300.0;
  std::ostringstream os;
  os << checked << " spaces, all blocks n <= 4 torsion-free with rank = thin count ("
     << secs << " s)";
  report(4, ok, os.str());
}

// ---------------------------------------------------------------------
// 5. Graded Euler characteristic vs magnitude series.
void criterion5() {
  bool ok = true;
  std::vector<std::pair<std::string, FiniteMetricSpace>> fixtures;
  fixtures.emplace_back("K2", FiniteMetricSpace::from_graph(2, {{0, 1}}));
  fixtures.emplace_back("P3", FiniteMetricSpace::from_graph(3, {{0, 1}, {1, 2}}));
  fixtures.emplace_back("P4", FiniteMetricSpace::from_graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  fixtures.emplace_back(
      "C5", FiniteMetricSpace::from_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
  for (const auto& [name, G] : fixtures) {
    auto r = euler_magnitude_check(G, 6);
    if (!r.match || r.series != r.chi) ok = false;
  }
  report(5, ok, "chi_l = magnitude series coefficient for l <= 6 on K2, P3, P4, C5");
}

// ---------------------------------------------------------------------
// 6. Closed Caratheodory vs a brute-force all-subsets oracle.
bool brute_force_caratheodory(const PointSet& X, const Vec& a) {
  const size_t n = X.size();
  // affinely independent subsets of the plane have at most 3 points
  std::vector<size_t> idx;
  std::function<bool(size_t)> go = [&](size_t from) -> bool {
    if (!idx.empty()) {
      std::vector<Vec> pts;
      for (size_t i : idx) pts.push_back(X.pts[i]);
      if (affinely_independent(pts) && conv_contains(pts, a)) {
        bool closed = true;
        for (size_t m = 0; m < n && closed; ++m) {
          if (std::find(idx.begin(), idx.end(), m) != idx.end()) continue;
          if (conv_contains(pts, X.pts[m])) closed = false;
        }
        if (closed) return true;
      }
    }
    if (idx.size() == 3) return false;
    for (size_t i = from; i < n; ++i) {
      idx.push_back(i);
      if (go(i + 1)) {
        idx.pop_back();
        return true;
      }
      idx.pop_back();
    }
    return false;
  };
  return go(0);
}

void criterion6() {
  std::mt19937 rng(67);
  std::uniform_int_distribution<size_t> sz(1, 10);
  std::uniform_int_distribution<int> wnum(0, 5), pick_out(0, 4);
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    auto X = random_plane_set(rng, sz(rng));
    Vec a(2, Rat(0));
    if (pick_out(rng) == 0) {
      a = {Rat(100), Rat(100)};  // far outside conv(X)
    } else {
      // random rational convex combination of the members
      Rat total(0);
      std::vector<Rat> w(X.size());
      for (auto& wi : w) {
        wi = Rat(wnum(rng));
        total += wi;
      }
      if (total == 0) w[0] = total = Rat(1);
      for (size_t i = 0; i < X.size(); ++i)
        for (size_t k = 0; k < 2; ++k) a[k] += w[i] / total * X.pts[i][k];
    }
    auto cert = closed_caratheodory(X, a);
    bool brute = brute_force_caratheodory(X, a);
    if (cert.has_value() != brute) ok = false;
    if (cert) {
      // verify both theorem conditions from scratch
      std::vector<Vec> pts;
      for (size_t i : cert->subset) pts.push_back(X.pts[i]);
      if (!affinely_independent(pts)) ok = false;
      Rat sum(0);
      Vec rec(2, Rat(0));
      for (size_t t = 0; t < pts.size(); ++t) {
        if (cert->barycentric[t] < 0) ok = false;
        sum += cert->barycentric[t];
        for (size_t k = 0; k < 2; ++k) rec[k] += cert->barycentric[t] * pts[t][k];
      }
      if (sum != 1 || rec != a) ok = false;
      for (size_t m = 0; m < X.size(); ++m) {
        if (std::find(cert->subset.begin(), cert->subset.end(), m) != cert->subset.end())
          continue;
        if (conv_contains(pts, X.pts[m])) ok = false;  // hull must meet X only in S
      }
    }
  }
  report(6, ok, "200 random planar sets: certificates verified, validity matches brute force");
}

// ---------------------------------------------------------------------
// 7. Main theorem end-to-end with an exhaustive map-pair oracle.
std::vector<MetricMap> all_lipschitz_maps(const FiniteMetricSpace& X,
                                          const FiniteMetricSpace& Y) {
  std::vector<MetricMap> out;
  std::vector<size_t> t(X.size(), 0);
  while (true) {
    bool lip = true;
    for (size_t i = 0; i < X.size() && lip; ++i)
      for (size_t j = 0; j < i && lip; ++j)
        if (Y.d(t[i], t[j]) > X.d(i, j)) lip = false;
    if (lip) out.push_back(MetricMap{t});
    size_t k = 0;
    while (k < t.size() && ++t[k] == Y.size()) t[k++] = 0;
    if (k == t.size()) break;
  }
  return out;
}

bool exhaustive_equivalent(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  auto fs = all_lipschitz_maps(X, Y);
  auto gs = all_lipschitz_maps(Y, X);
  for (const auto& f : fs)
    for (const auto& g : gs)
      if (mutually_inverse_check(X, Y, f, g, 1).mutually_inverse) return true;
  return false;
}

void criterion7() {
  bool ok = true;
  PointSet A(1, {{Rat(0)}, {Rat(1)}, {Rat(2)}, {Rat(3)}});
  std::vector<Vec> img;
  for (int i = 0; i < 4; ++i) img.push_back({Rat(3 * i, 5) + 2, Rat(4 * i, 5) - 1});
  PointSet B(2, img);  // rigid-motion image of A in the plane
  auto r = equivalence_decision_finite(A, B);
  ok = ok && r.equivalent && r.f && r.g;
  auto MA = metric_space_of(A), MB = metric_space_of(B);
  if (r.f && r.g) {
    try {
      validate_metric_map(MA, MB, MetricMap{*r.f});
      validate_metric_map(MB, MA, MetricMap{*r.g});
    } catch (const std::exception&) {
      ok = false;
    }
  }
  PointSet C(1, {{Rat(0)}, {Rat(1)}, {Rat(2)}});
  ok = ok && !equivalence_decision_finite(A, C).equivalent;

  // exhaustive oracle over every 1-Lipschitz map pair
  ok = ok && exhaustive_equivalent(MA, MB);
  ok = ok && !exhaustive_equivalent(MA, metric_space_of(C));
  report(7, ok,
         "{0,1,2,3} ~ rigid image (verified witnesses), !~ {0,1,2}; matches exhaustive "
         "map-pair search");
}

// ---------------------------------------------------------------------
// 8. Shape pipeline: three outer bodies over identical holes.
void criterion8() {
  bool ok = true;
  std::vector<HoleBody> holes = {
      Disc2{Rat(-3), Rat(0), Rat(2)},
      Polygon2{{{Rat(2), Rat(-1)}, {Rat(4), Rat(-1)}, {Rat(4), Rat(1)}, {Rat(2), Rat(1)}}}};
  Shape2D a, b, c;
  a.outer = Polygon2{
      {{Rat(-9), Rat(-9)}, {Rat(9), Rat(-9)}, {Rat(9), Rat(9)}, {Rat(-9), Rat(9)}}};
  b.outer = Disc2{Rat(0), Rat(0), Rat(400)};
  c.outer = Plane2{};
  a.holes = b.holes = c.holes = holes;
  for (auto* s : {&a, &b, &c}) s->validate();
  ok = ok && shape_equivalent(a, b).equivalent && shape_equivalent(b, c).equivalent &&
       shape_equivalent(a, c).equivalent;

  // annulus: the core is the inner circle
  Shape2D ann;
  ann.outer = Disc2{Rat(0), Rat(0), Rat(25)};
  ann.holes = {Disc2{Rat(0), Rat(0), Rat(1)}};
  auto core = shape_core(ann);
  ok = ok && core.features.size() == 1;
  if (core.features.size() == 1) {
    const auto* d = std::get_if<Disc2>(&core.features[0]);
    ok = ok && d && d->cx == 0 && d->cy == 0 && d->r2 == 1;
  }

  // annulus vs a two-hole shape: different hole counts, not equivalent
  ok = ok && !shape_equivalent(ann, a).equivalent;
  report(8, ok, "identical holes under 3 outer bodies pairwise equivalent; annulus core = "
                "inner circle; annulus !~ two-hole shape");
}

// ---------------------------------------------------------------------
// 9. Property suites: boundary^2, SNF re-multiplication, the structural
// relations of the chain homotopy, and the homotopy identity.
template <class O>
std::optional<std::vector<typename O::Point>> face_at(const O& Y,
                                                      const std::vector<typename O::Point>& c,
                                                      size_t j) {
  if (!chain_smooth_at(Y, c, j)) return std::nullopt;
  auto f = c;
  f.erase(f.begin() + static_cast<long>(j));
  return f;
}

void criterion9() {
  bool ok = true;
  std::mt19937 rng(211);

  // boundary^2 = 0 on every generated block of a mixed space family
  std::vector<FiniteMetricSpace> spaces = {
      int_line(4), FiniteMetricSpace::from_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}),
      random_rational_subset(rng, 5, 2)};
  for (const auto& X : spaces) {
    auto C = enumerate_chains(X, 3, ExactLength(4));
    for (const auto& [key, blk] : C.blocks) {
      if (key.n < 2) continue;
      if (!(boundary_matrix(X, C, key.n - 1, key.len) * boundary_matrix(X, C, key.n, key.len))
               .is_zero())
        ok = false;
    }
  }

  // Smith form re-multiplication on 500 random matrices
  std::uniform_int_distribution<int> ent(-9, 9);
  std::uniform_int_distribution<size_t> dim(1, 8);
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (auto& v : m.a) v = ent(rng);
    auto s = smith_normal_form(m, true);
    if (!s.U || !s.V || !(*s.U * m * *s.V == s.S)) ok = false;
    if (s.rank != rank_rational(m)) ok = false;
  }

  // structural relations of the homotopy extension: for a chain x with
  // nonzero extension at slot h and any nonzero smooth face d^j x,
  //   phi(d^j x) = -d^j phi(x)      if j < h
  //   phi(d^j x) = +d^{j+1} phi(x)  otherwise
  std::uniform_int_distribution<size_t> npts(4, 6);
  int tested = 0;
  while (tested < 200) {
    size_t dimn = tested % 2 ? 2 : 1;
    auto X = random_rational_subset(rng, npts(rng), dimn);
    if (!alignedness(X).aligned) continue;
    FiniteOracle O(X);
    // two random 1-Lipschitz self-maps
    auto maps = [&]() {
      std::uniform_int_distribution<size_t> pt(0, X.size() - 1);
      while (true) {
        MetricMap m{std::vector<size_t>(X.size())};
        for (auto& v : m.table) v = pt(rng);
        try {
          validate_metric_map(X, X, m);
          return m;
        } catch (const std::invalid_argument&) {
        }
      }
    };
    MetricMap f = maps(), g = maps();
    auto fw = [&](size_t p) { return f(p); };
    auto gw = [&](size_t p) { return g(p); };
    auto C = enumerate_chains(X, 3, ExactLength(20));
    for (const auto& [key, blk] : C.blocks) {
      if (key.n < 2 || tested >= 200) continue;
      for (const auto& x : blk.basis) {
        if (tested >= 200) break;
        auto ext = phi_extend(O, x);
        if (!ext) continue;
        size_t h = ext->first;
        FormalSum<size_t> phix = homotopy_phi_chain(O, O, fw, gw, x);
        for (size_t j = 1; j + 1 < x.size(); ++j) {
          auto fj = face_at(O, x, j);
          if (!fj) continue;
          FormalSum<size_t> lhs = homotopy_phi_chain(O, O, fw, gw, *fj);
          FormalSum<size_t> rhs;
          size_t jj = j < h ? j : j + 1;
          Int sgn = j < h ? -1 : 1;
          for (const auto& [c, k] : phix)
            if (auto fc = face_at(O, c, jj)) formal_add(rhs, *fc, k * sgn);
          if (lhs != rhs) ok = false;
        }
        ++tested;
      }
    }
  }

  // homotopy identity: with f = g both sides vanish chainwise; with a
  // pair differing on the inner boundary some chain violates it
  auto X = int_line(3);
  FiniteOracle O(X);
  auto idm = [](size_t p) { return p; };
  auto zero = [](size_t) { return size_t(0); };
  auto C = enumerate_chains(X, 2, ExactLength(2));
  bool control_failed = false;
  for (const auto& [key, blk] : C.blocks) {
    if (key.n == 0) continue;
    for (const auto& c : blk.basis) {
      auto run = [&](auto&& fm, auto&& gm) {
        FormalSum<size_t> lhs;
        for (const auto& [b, k] : chain_boundary(O, c))
          formal_add_sum(lhs, homotopy_phi_chain(O, O, fm, gm, b), k);
        for (const auto& [p, k] : homotopy_phi_chain(O, O, fm, gm, c))
          formal_add_sum(lhs, chain_boundary(O, p), k);
        FormalSum<size_t> rhs;
        if (auto img = push_chain(O, O, gm, c)) formal_add(rhs, *img, Int(1));
        if (auto img = push_chain(O, O, fm, c)) formal_add(rhs, *img, Int(-1));
        return lhs == rhs;
      };
      if (!run(idm, idm)) ok = false;
      if (!run(idm, zero)) control_failed = true;
    }
  }
  ok = ok && control_failed;
  report(9, ok, "boundary^2 = 0; 500 SNF re-multiplications; homotopy face relations on 200 "
                "chains; identity holds for f = g, fails for the control pair");
}

// ---------------------------------------------------------------------
// 10. conv(X) = X u conv(rho X) on a two-hole shape, sampled.
void criterion10() {
  Shape2D S;
  S.outer = Polygon2{
      {{Rat(-6), Rat(-6)}, {Rat(6), Rat(-6)}, {Rat(6), Rat(6)}, {Rat(-6), Rat(6)}}};
  S.holes = {Disc2{Rat(-3), Rat(0), Rat(1)}, Disc2{Rat(3), Rat(0), Rat(1)}};
  S.validate();
  std::mt19937 rng(997);
  std::uniform_int_distribution<int> num(-24, 24), hx(-14, -10), hy(-2, 2);
  bool ok = true;
  int nonmembers = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rat x, y;
    if (trial % 4 == 0) {
      // bias a quarter of the samples into the left hole
      x = Rat(hx(rng), 4);
      y = Rat(hy(rng), 4);
    } else {
      x = Rat(num(rng), 4);
      y = Rat(num(rng), 4);
    }
    // every sample lies in the outer square = conv(X)
    bool in_x = shape_member(S, rational_point(x, y));
    bool in_hull = conv_inner_boundary_contains(S, x, y);
    if (!in_x) ++nonmembers;
    if (!in_x && !in_hull) ok = false;  // the union must cover conv(X)
  }
  ok = ok && nonmembers > 0;  // the sample actually exercised the hole case
  std::ostringstream os;
  os << "100 rational points of conv(X) all in X u conv(rhoX) (" << nonmembers
     << " via the hull side)";
  report(10, ok, os.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
