#include "mag/euclid.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mag {

PointSet::PointSet(size_t d, std::vector<Vec> p) : dim(d), pts(std::move(p)) {
  for (const auto& v : pts)
    if (v.size() != dim) throw std::invalid_argument("point dimension mismatch");
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (pts[i] == pts[j]) throw std::invalid_argument("duplicate point in point set");
}

Rat dist2(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) {
    Rat d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

FiniteMetricSpace metric_space_of(const PointSet& X) {
  const size_t n = X.size();
  std::vector<std::string> labels;
  std::vector<std::vector<ExactLength>> dist(n, std::vector<ExactLength>(n));
  for (size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (size_t j = 0; j < i; ++j)
      dist[i][j] = dist[j][i] = ExactLength::sqrt_rational(dist2(X.pts[i], X.pts[j]));
  }
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

bool affinely_independent(const std::vector<Vec>& points) {
  if (points.empty()) return true;
  const size_t d = points[0].size();
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("dimension mismatch");
  if (points.size() == 1) return true;
  RatMat diff(points.size() - 1, RatVec(d));
  for (size_t i = 1; i < points.size(); ++i)
    for (size_t j = 0; j < d; ++j) diff[i - 1][j] = points[i][j] - points[0][j];
  return rat_rank(std::move(diff)) == points.size() - 1;
}

// --- exact phase-1 simplex ---------------------------------------------

std::optional<Vec> conv_contains(const std::vector<Vec>& generators, const Vec& a) {
  if (generators.empty()) return std::nullopt;
  const size_t d = a.size();
  for (const auto& g : generators)
    if (g.size() != d) throw std::invalid_argument("dimension mismatch");
  const size_t m = d + 1;               // equality constraints
  const size_t n = generators.size();   // lambda variables
  // tableau: columns [lambda | artificials | rhs]
  RatMat T(m, RatVec(n + m + 1, Rat(0)));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < n; ++j) T[i][j] = generators[j][i];
    T[i][n + m] = a[i];
  }
  for (size_t j = 0; j < n; ++j) T[d][j] = 1;
  T[d][n + m] = 1;
  for (size_t i = 0; i < m; ++i) {
    if (T[i][n + m] < 0)
      for (auto& v : T[i]) v = -v;
    T[i][n + i] = 1;
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;
  // phase-1 objective: minimize sum of artificials
  RatVec cost(n + m + 1, Rat(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= n + m; ++j) cost[j] -= T[i][j];
  for (size_t i = 0; i < m; ++i) cost[n + i] = 0;

  while (true) {
    // Bland's rule: lowest-index column with negative reduced cost
    size_t enter = n + m;
    for (size_t j = 0; j < n + m; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == n + m) break;
    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      if (leave == m) {
        leave = i;
        continue;
      }
      Rat cur = T[i][n + m] / T[i][enter];
      Rat best = T[leave][n + m] / T[leave][enter];
      if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
    }
    if (leave == m) throw std::logic_error("phase-1 LP unbounded");
    Rat piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (size_t j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
    }
    if (cost[enter] != 0) {
      Rat f = cost[enter];
      for (size_t j = 0; j <= n + m; ++j) cost[j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  if (cost[n + m] != 0) return std::nullopt;  // infeasible: objective > 0
  Vec lambda(n, Rat(0));
  for (size_t i = 0; i < m; ++i) {
    if (basis[i] < n)
      lambda[basis[i]] = T[i][n + m];
    else if (T[i][n + m] != 0)
      return std::nullopt;  // degenerate artificial left at nonzero level
  }
  return lambda;
}

namespace {

// Squared k-volume scale of the simplex on pts (Gram determinant of the
// difference vectors); comparable within a fixed affine dimension.
Rat gram_det(const std::vector<Vec>& pts) {
  const size_t k = pts.size() - 1;
  RatMat g(k, RatVec(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      Rat s(0);
      for (size_t c = 0; c < pts[0].size(); ++c)
        s += (pts[i + 1][c] - pts[0][c]) * (pts[j + 1][c] - pts[0][c]);
      g[i][j] = s;
    }
  // determinant by fraction-free-ish elimination
  Rat det(1);
  for (size_t c = 0; c < k; ++c) {
    size_t piv = c;
    while (piv < k && g[piv][c] == 0) ++piv;
    if (piv == k) return Rat(0);
    if (piv != c) {
      std::swap(g[piv], g[c]);
      det = -det;
    }
    det *= g[c][c];
    for (size_t i = c + 1; i < k; ++i) {
      Rat f = g[i][c] / g[c][c];
      for (size_t j = c; j < k; ++j) g[i][j] -= f * g[c][j];
    }
  }
  return det;
}

void subsets_of_size(size_t n, size_t k, const std::function<void(const std::vector<size_t>&)>& fn) {
  std::vector<size_t> idx(k);
  std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

std::vector<Vec> gather(const PointSet& X, const std::vector<size_t>& idx) {
  std::vector<Vec> out;
  for (size_t i : idx) out.push_back(X.pts[i]);
  return out;
}

/// Unique barycentric coordinates of a over an affinely independent set,
/// if a lies in the affine hull; nonnegativity is not checked here.
std::optional<Vec> barycentric(const std::vector<Vec>& pts, const Vec& a) {
  const size_t d = a.size();
  RatMat A(d + 1, RatVec(pts.size()));
  RatVec b(d + 1);
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < pts.size(); ++j) A[i][j] = pts[j][i];
    b[i] = a[i];
  }
  for (size_t j = 0; j < pts.size(); ++j) A[d][j] = 1;
  b[d] = 1;
  return rat_solve(std::move(A), std::move(b));
}

}  // namespace

std::optional<CaratheodoryCertificate> closed_caratheodory(const PointSet& X, const Vec& a) {
  std::vector<Vec> all = X.pts;
  if (!conv_contains(all, a)) return std::nullopt;

  struct Candidate {
    std::vector<size_t> idx;
    Rat vol2;
    Vec bary;
  };
  // Candidates ordered by (affine dimension, squared volume, index order);
  // the sweep mirrors the volume-minimizing argument of the closed
  // Caratheodory theorem while guaranteeing termination.
  const size_t kmax = std::min(X.size(), X.dim + 1);
  for (size_t k = 1; k <= kmax; ++k) {
    std::vector<Candidate> cands;
    subsets_of_size(X.size(), k, [&](const std::vector<size_t>& idx) {
      auto pts = gather(X, idx);
      if (!affinely_independent(pts)) return;
      auto bc = barycentric(pts, a);
      if (!bc) return;
      for (const Rat& c : *bc)
        if (c < 0) return;
      cands.push_back({idx, k > 1 ? gram_det(pts) : Rat(0), *bc});
    });
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& x, const Candidate& y) { return x.vol2 < y.vol2; });
    for (const auto& c : cands) {
      // verify conv(subset) cap X = subset
      bool clean = true;
      auto pts = gather(X, c.idx);
      for (size_t p = 0; p < X.size() && clean; ++p) {
        if (std::find(c.idx.begin(), c.idx.end(), p) != c.idx.end()) continue;
        if (barycentric(pts, X.pts[p]).has_value()) {
          auto bc = barycentric(pts, X.pts[p]);
          bool inside = true;
          for (const Rat& v : *bc)
            if (v < 0) inside = false;
          if (inside) clean = false;
        }
      }
      if (clean) return CaratheodoryCertificate{c.idx, c.bary};
    }
  }
  throw std::logic_error("closed Caratheodory search exhausted unexpectedly");
}

bool strictly_on_segment(const Vec& x, const Vec& p, const Vec& y) {
  if (x == y || p == x || p == y) return false;
  // p = x + t (y - x) with t in (0,1), componentwise exact
  std::optional<Rat> t;
  for (size_t i = 0; i < x.size(); ++i) {
    Rat dy = y[i] - x[i], dp = p[i] - x[i];
    if (dy == 0) {
      if (dp != 0) return false;
      continue;
    }
    Rat ti = dp / dy;
    if (t && *t != ti) return false;
    t = ti;
  }
  return t && *t > 0 && *t < 1;
}

std::vector<size_t> inner_boundary_euclidean(const PointSet& X) {
  std::vector<size_t> out;
  for (size_t i = 0; i < X.size(); ++i) {
    bool adj = false;
    for (size_t j = 0; j < X.size() && !adj; ++j) {
      if (i == j) continue;
      bool blocked = false;
      for (size_t p = 0; p < X.size() && !blocked; ++p)
        if (p != i && p != j && strictly_on_segment(X.pts[i], X.pts[p], X.pts[j]))
          blocked = true;
      adj = !blocked;
    }
    if (adj) out.push_back(i);
  }
  return out;
}

std::vector<size_t> core_finite_indices(const PointSet& X) {
  auto rho = inner_boundary_euclidean(X);
  if (rho.empty()) return {};
  auto rho_pts = gather(X, rho);
  std::vector<size_t> out;
  for (size_t i = 0; i < X.size(); ++i)
    if (conv_contains(rho_pts, X.pts[i])) out.push_back(i);
  return out;
}

PointSet core_finite(const PointSet& X) {
  auto idx = core_finite_indices(X);
  return PointSet(X.dim, gather(X, idx));
}

Vec metric_projection(const Vec& a, const std::vector<Vec>& generators) {
  if (generators.empty()) throw std::invalid_argument("empty generator list");
  const size_t d = a.size();
  for (size_t k = 1; k <= generators.size(); ++k) {
    std::optional<Vec> result;
    subsets_of_size(generators.size(), k, [&](const std::vector<size_t>& idx) {
      if (result) return;
      std::vector<Vec> pts;
      for (size_t i : idx) pts.push_back(generators[i]);
      if (!affinely_independent(pts)) return;
      // project a onto the affine hull: normal equations over differences
      const size_t m = k - 1;
      RatMat G(m, RatVec(m));
      RatVec rhs(m);
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
          Rat s(0);
          for (size_t c = 0; c < d; ++c)
            s += (pts[i + 1][c] - pts[0][c]) * (pts[j + 1][c] - pts[0][c]);
          G[i][j] = s;
        }
        Rat s(0);
        for (size_t c = 0; c < d; ++c) s += (pts[i + 1][c] - pts[0][c]) * (a[c] - pts[0][c]);
        rhs[i] = s;
      }
      auto t = rat_solve(std::move(G), std::move(rhs));
      if (!t) return;
      Rat lam0(1);
      for (const Rat& v : *t) lam0 -= v;
      if (lam0 < 0) return;
      for (const Rat& v : *t)
        if (v < 0) return;
      Vec p = pts[0];
      for (size_t c = 0; c < d; ++c)
        for (size_t i = 0; i < m; ++i) p[c] += (*t)[i] * (pts[i + 1][c] - pts[0][c]);
      // variational inequality <a - p, g - p> <= 0 for every generator
      for (const Vec& g : generators) {
        Rat s(0);
        for (size_t c = 0; c < d; ++c) s += (a[c] - p[c]) * (g[c] - p[c]);
        if (s > 0) return;
      }
      result = std::move(p);
    });
    if (result) return *result;
  }
  throw std::logic_error("metric projection search exhausted unexpectedly");
}

Dichotomy dichotomy_check(const PointSet& X, const std::vector<size_t>& simplex) {
  auto pts = gather(X, simplex);
  if (!affinely_independent(pts)) return Dichotomy::precondition_failed;
  auto rho = inner_boundary_euclidean(X);
  auto in_simplex = [&](size_t p) {
    return std::find(simplex.begin(), simplex.end(), p) != simplex.end();
  };
  for (size_t p : rho) {
    if (in_simplex(p)) continue;
    if (conv_contains(pts, X.pts[p])) return Dichotomy::precondition_failed;
  }
  bool extra = false;
  for (size_t p = 0; p < X.size(); ++p) {
    if (in_simplex(p)) continue;
    if (conv_contains(pts, X.pts[p])) extra = true;
  }
  if (extra) return Dichotomy::violated;
  return simplex.size() == 1 ? Dichotomy::inside : Dichotomy::vertices_only;
}

FiniteEquivalence equivalence_decision_finite(const PointSet& X, const PointSet& Y) {
  FiniteEquivalence res;
  auto cx = core_finite_indices(X);
  auto cy = core_finite_indices(Y);
  if (cx.empty() && cy.empty()) {
    // both convex (at most one point each)
    if (X.size() == 0 || Y.size() == 0) {
      res.equivalent = (X.size() == Y.size());
      return res;
    }
    res.equivalent = true;
    res.f = std::vector<size_t>(X.size(), 0);
    res.g = std::vector<size_t>(Y.size(), 0);
    return res;
  }
  if (cx.empty() != cy.empty()) return res;
  auto mx = metric_space_of(X).restrict(cx);
  auto my = metric_space_of(Y).restrict(cy);
  auto iso = isometry_witness(mx, my);
  if (!iso) return res;
  res.equivalent = true;

  auto core_pts_x = gather(X, cx);
  auto core_pts_y = gather(Y, cy);
  auto build = [](const PointSet& src, const std::vector<size_t>& core_src,
                  const std::vector<Vec>& core_src_pts, const std::vector<size_t>& core_dst,
                  const std::vector<size_t>& map_on_core) {
    std::vector<size_t> table(src.size());
    for (size_t i = 0; i < src.size(); ++i) {
      auto it = std::find(core_src.begin(), core_src.end(), i);
      size_t pos;
      if (it != core_src.end()) {
        pos = static_cast<size_t>(it - core_src.begin());
      } else {
        // retract to the nearest core point first
        Vec p = metric_projection(src.pts[i], core_src_pts);
        auto pit = std::find(core_src_pts.begin(), core_src_pts.end(), p);
        if (pit == core_src_pts.end())
          throw std::logic_error("projection left the core on a finite set");
        pos = static_cast<size_t>(pit - core_src_pts.begin());
      }
      table[i] = core_dst[map_on_core[pos]];
    }
    return table;
  };
  std::vector<size_t> iso_inv(iso->size());
  for (size_t i = 0; i < iso->size(); ++i) iso_inv[(*iso)[i]] = i;
  res.f = build(X, cx, core_pts_x, cy, *iso);
  res.g = build(Y, cy, core_pts_y, cx, iso_inv);

  // verify the witnesses are 1-Lipschitz on all pairs
  auto check = [](const PointSet& A, const PointSet& B, const std::vector<size_t>& t) {
    for (size_t i = 0; i < A.size(); ++i)
      for (size_t j = 0; j < A.size(); ++j)
        if (dist2(B.pts[t[i]], B.pts[t[j]]) > dist2(A.pts[i], A.pts[j]))
          throw std::logic_error("witness map is not 1-Lipschitz");
  };
  check(X, Y, *res.f);
  check(Y, X, *res.g);
  return res;
}

}  // namespace mag
