#include "mag/metspace.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace mag {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<std::vector<ExactLength>> dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  const size_t n = labels_.size();
  if (dist_.size() != n) throw std::invalid_argument("distance matrix size mismatch");
  for (size_t i = 0; i < n; ++i) {
    if (dist_[i].size() != n) throw std::invalid_argument("distance matrix not square");
    if (!dist_[i][i].is_zero()) throw std::invalid_argument("nonzero diagonal distance");
    for (size_t j = 0; j < i; ++j) {
      if (dist_[i][j] != dist_[j][i]) throw std::invalid_argument("asymmetric distance matrix");
      if (dist_[i][j].sign() <= 0)
        throw std::invalid_argument("nonpositive distance between distinct points");
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if ((dist_[i][j] + dist_[j][k] - dist_[i][k]).sign() < 0)
          throw std::invalid_argument("triangle inequality violated");
}

FiniteMetricSpace FiniteMetricSpace::from_graph(
    size_t n, const std::vector<std::pair<size_t, size_t>>& edges,
    std::vector<std::string> labels) {
  std::vector<std::vector<size_t>> adj(n);
  for (auto [i, j] : edges) {
    if (i >= n || j >= n || i == j) throw std::invalid_argument("bad edge");
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<std::vector<ExactLength>> dist(n, std::vector<ExactLength>(n));
  for (size_t s = 0; s < n; ++s) {
    std::vector<long> d(n, -1);
    std::deque<size_t> q{s};
    d[s] = 0;
    while (!q.empty()) {
      size_t v = q.front();
      q.pop_front();
      for (size_t w : adj[v])
        if (d[w] < 0) {
          d[w] = d[v] + 1;
          q.push_back(w);
        }
    }
    for (size_t t = 0; t < n; ++t) {
      if (d[t] < 0) throw std::invalid_argument("graph is disconnected");
      dist[s][t] = ExactLength(d[t]);
    }
  }
  if (labels.empty())
    for (size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

FiniteMetricSpace FiniteMetricSpace::restrict(const std::vector<size_t>& points) const {
  std::vector<std::string> labels;
  std::vector<std::vector<ExactLength>> dist(points.size(),
                                             std::vector<ExactLength>(points.size()));
  for (size_t i = 0; i < points.size(); ++i) {
    labels.push_back(labels_.at(points[i]));
    for (size_t j = 0; j < points.size(); ++j) dist[i][j] = dist_[points[i]][points[j]];
  }
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

static void check_index(const FiniteMetricSpace& X, size_t i) {
  if (i >= X.size()) throw std::out_of_range("point index out of range");
}

bool is_between(const FiniteMetricSpace& X, size_t x, size_t y, size_t z) {
  check_index(X, x);
  check_index(X, y);
  check_index(X, z);
  return X.d(x, z) == X.d(x, y) + X.d(y, z);
}

bool is_strictly_between(const FiniteMetricSpace& X, size_t x, size_t y, size_t z) {
  return x != y && y != z && is_between(X, x, y, z);
}

std::vector<size_t> interval(const FiniteMetricSpace& X, size_t a, size_t b) {
  check_index(X, a);
  check_index(X, b);
  std::vector<size_t> out;
  for (size_t p = 0; p < X.size(); ++p)
    if (is_between(X, a, p, b)) out.push_back(p);
  return out;
}

bool is_adjacent(const FiniteMetricSpace& X, size_t x, size_t y) {
  check_index(X, x);
  check_index(X, y);
  if (x == y) return false;
  for (size_t p = 0; p < X.size(); ++p)
    if (is_strictly_between(X, x, p, y)) return false;
  return true;
}

std::vector<size_t> inner_boundary(const FiniteMetricSpace& X) {
  std::vector<size_t> out;
  for (size_t x = 0; x < X.size(); ++x)
    for (size_t y = 0; y < X.size(); ++y)
      if (is_adjacent(X, x, y)) {
        out.push_back(x);
        break;
      }
  return out;
}

AlignednessReport alignedness(const FiniteMetricSpace& X) {
  AlignednessReport rep;
  const size_t n = X.size();
  // geodetic: all pairs within an interval are comparable along it
  for (size_t a = 0; a < n && !rep.geodetic_violation; ++a)
    for (size_t b = 0; b < n && !rep.geodetic_violation; ++b) {
      auto iv = interval(X, a, b);
      for (size_t xi = 0; xi < iv.size() && !rep.geodetic_violation; ++xi)
        for (size_t yi = xi + 1; yi < iv.size(); ++yi) {
          size_t x = iv[xi], y = iv[yi];
          bool fwd = is_between(X, a, x, y) && is_between(X, x, y, b);
          bool bwd = is_between(X, a, y, x) && is_between(X, y, x, b);
          if (!fwd && !bwd) {
            rep.geodetic_violation = {a, b, x, y};
            break;
          }
        }
    }
  // 4-cut (a, x, y, b)
  for (size_t a = 0; a < n && !rep.four_cut; ++a)
    for (size_t x = 0; x < n && !rep.four_cut; ++x)
      for (size_t y = 0; y < n && !rep.four_cut; ++y)
        for (size_t b = 0; b < n; ++b) {
          if (!is_strictly_between(X, a, x, y) || !is_strictly_between(X, x, y, b)) continue;
          if (!is_between(X, a, x, b) || !is_between(X, a, y, b)) {
            rep.four_cut = {a, x, y, b};
            break;
          }
        }
  rep.aligned = !rep.geodetic_violation && !rep.four_cut;
  return rep;
}

std::vector<size_t> metric_convex_hull(const FiniteMetricSpace& X, std::vector<size_t> A) {
  std::vector<bool> in(X.size(), false);
  for (size_t p : A) {
    check_index(X, p);
    in[p] = true;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t x = 0; x < X.size(); ++x) {
      if (!in[x]) continue;
      for (size_t y = 0; y < X.size(); ++y) {
        if (!in[y]) continue;
        for (size_t p = 0; p < X.size(); ++p)
          if (!in[p] && is_between(X, x, p, y)) {
            in[p] = true;
            grew = true;
          }
      }
    }
  }
  std::vector<size_t> out;
  for (size_t p = 0; p < X.size(); ++p)
    if (in[p]) out.push_back(p);
  return out;
}

namespace {

// Sorted multiset of distances from a point, used as a backtracking
// invariant: matched points must have equal distance spectra.
std::vector<ExactLength> spectrum(const FiniteMetricSpace& X, size_t p) {
  std::vector<ExactLength> s;
  for (size_t q = 0; q < X.size(); ++q)
    if (q != p) s.push_back(X.d(p, q));
  std::sort(s.begin(), s.end());
  return s;
}

bool extend(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
            const std::vector<std::vector<ExactLength>>& spec_y, std::vector<size_t>& map,
            std::vector<bool>& used, size_t i, const std::vector<ExactLength>& spec_xi) {
  if (i == X.size()) return true;
  for (size_t j = 0; j < Y.size(); ++j) {
    if (used[j] || spec_y[j] != spec_xi) continue;
    bool ok = true;
    for (size_t k = 0; k < i; ++k)
      if (X.d(i, k) != Y.d(j, map[k])) {
        ok = false;
        break;
      }
    if (!ok) continue;
    map[i] = j;
    used[j] = true;
    if (i + 1 == X.size() || extend(X, Y, spec_y, map, used, i + 1, spectrum(X, i + 1)))
      return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<size_t>> isometry_witness(const FiniteMetricSpace& X,
                                                    const FiniteMetricSpace& Y) {
  if (X.size() != Y.size()) return std::nullopt;
  if (X.size() == 0) return std::vector<size_t>{};
  std::vector<std::vector<ExactLength>> spec_y(Y.size());
  for (size_t j = 0; j < Y.size(); ++j) spec_y[j] = spectrum(Y, j);
  std::vector<size_t> map(X.size());
  std::vector<bool> used(Y.size(), false);
  if (!extend(X, Y, spec_y, map, used, 0, spectrum(X, 0))) return std::nullopt;
  // full verification before returning
  for (size_t i = 0; i < X.size(); ++i)
    for (size_t j = 0; j < X.size(); ++j)
      if (X.d(i, j) != Y.d(map[i], map[j])) throw std::logic_error("isometry search defect");
  return map;
}

}  // namespace mag
