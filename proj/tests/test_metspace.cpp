#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "mag/euclid.hpp"
#include "mag/metspace.hpp"

using namespace mag;

namespace {

FiniteMetricSpace five_cycle() {
  // v, w, x, y, z around the cycle
  return FiniteMetricSpace::from_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}},
                                       {"v", "w", "x", "y", "z"});
}

FiniteMetricSpace diamond() {
  // 4-cycle w-x-y-z with chord w-y
  return FiniteMetricSpace::from_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}},
                                       {"w", "x", "y", "z"});
}

FiniteMetricSpace reals(std::vector<Rat> xs) {
  std::vector<Vec> pts;
  for (auto& x : xs) pts.push_back({x});
  return metric_space_of(PointSet(1, std::move(pts)));
}

// literal transcription of the alignedness definition: for every chain
// x_0..x_n (n >= 1) with consecutive strict betweenness in the interior,
// the interval [x_0, x_n] is the union of the consecutive subintervals
bool aligned_brute_force(const FiniteMetricSpace& X) {
  const size_t N = X.size();
  std::vector<size_t> chain;
  std::function<bool()> check = [&]() -> bool {
    size_t n = chain.size() - 1;
    if (n >= 1) {
      std::set<size_t> uni;
      for (size_t i = 0; i + 1 < chain.size(); ++i)
        for (size_t p : interval(X, chain[i], chain[i + 1])) uni.insert(p);
      for (size_t p : interval(X, chain.front(), chain.back()))
        if (!uni.count(p)) return false;
    }
    if (chain.size() > N) return true;  // strict chains cannot be longer
    for (size_t p = 0; p < N; ++p) {
      if (chain.size() >= 2 &&
          !is_strictly_between(X, chain[chain.size() - 2], chain.back(), p))
        continue;
      chain.push_back(p);
      bool ok = check();
      chain.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (size_t p = 0; p < N; ++p) {
    chain = {p};
    if (!check()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("constructor validation") {
  auto z = ExactLength(0), one = ExactLength(1);
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {{z, one}, {ExactLength(2), z}}),
                  std::invalid_argument);  // asymmetric
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {{one, one}, {one, z}}),
                  std::invalid_argument);  // nonzero diagonal
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, {{z, z}, {z, z}}),
                  std::invalid_argument);  // zero off-diagonal
  auto ten = ExactLength(10);
  CHECK_THROWS_AS(
      FiniteMetricSpace({"a", "b", "c"}, {{z, one, ten}, {one, z, one}, {ten, one, z}}),
      std::invalid_argument);  // triangle inequality
  CHECK_THROWS_AS(FiniteMetricSpace::from_graph(4, {{0, 1}, {2, 3}}), std::invalid_argument);
  CHECK_NOTHROW(five_cycle());
}

TEST_CASE("betweenness and intervals in the 5-cycle") {
  auto X = five_cycle();
  // v=0 w=1 x=2 y=3 z=4
  CHECK(is_between(X, 0, 4, 3));  // z between v and y
  CHECK(is_between(X, 0, 0, 2));  // degenerate endpoint
  auto iv = interval(X, 0, 3);    // [v, y] = {v, z, y}
  CHECK(iv == std::vector<size_t>{0, 3, 4});
  CHECK(is_adjacent(X, 0, 1));
  CHECK(!is_adjacent(X, 0, 2));
  CHECK(!is_adjacent(X, 2, 2));
}

TEST_CASE("betweenness on the line") {
  auto X = reals({0, 1, 3});
  CHECK(is_between(X, 0, 1, 2));
  CHECK(!is_between(X, 1, 0, 2));
  auto Y = reals({0, 1, 2});
  CHECK(interval(Y, 0, 2) == std::vector<size_t>{0, 1, 2});
}

TEST_CASE("inner boundary") {
  auto X = reals({0, 1, 2, 3});
  CHECK(inner_boundary(X) == std::vector<size_t>{0, 1, 2, 3});
  auto S = reals({5});
  CHECK(inner_boundary(S).empty());
  auto T = reals({0, 7});
  CHECK(inner_boundary(T) == std::vector<size_t>{0, 1});
}

TEST_CASE("alignedness verdicts and witnesses") {
  auto p4 = FiniteMetricSpace::from_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(alignedness(p4).aligned);

  auto c5 = five_cycle();
  auto rep = alignedness(c5);
  CHECK(!rep.aligned);
  REQUIRE(rep.four_cut);
  CHECK(*rep.four_cut == std::array<size_t, 4>{0, 1, 2, 3});  // (v, w, x, y)
  // witness verifies against the definition
  auto [a, x, y, b] = *rep.four_cut;
  CHECK(is_strictly_between(c5, a, x, y));
  CHECK(is_strictly_between(c5, x, y, b));
  CHECK(!(is_between(c5, a, x, b) && is_between(c5, a, y, b)));

  auto d = diamond();
  auto drep = alignedness(d);
  CHECK(!drep.aligned);
  CHECK(!drep.four_cut);
  REQUIRE(drep.geodetic_violation);
  auto [ga, gb, gx, gy] = *drep.geodetic_violation;
  // w and y are incomparable inside [x, z]
  CHECK(d.label(gx) == "w");
  CHECK(d.label(gy) == "y");
  CHECK(d.label(ga) == "x");
  CHECK(d.label(gb) == "z");
}

TEST_CASE("alignedness matches the brute-force definition") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(0, 12), den(1, 3), sz(2, 6);
  for (int trial = 0; trial < 40; ++trial) {
    size_t n = static_cast<size_t>(sz(rng));
    std::set<std::vector<Rat>> uniq;
    size_t dim = trial % 2 ? 2 : 1;
    while (uniq.size() < n) {
      std::vector<Rat> p;
      for (size_t k = 0; k < dim; ++k) p.push_back(Rat(coord(rng), den(rng)));
      uniq.insert(p);
    }
    auto X = metric_space_of(PointSet(dim, {uniq.begin(), uniq.end()}));
    CHECK(alignedness(X).aligned == aligned_brute_force(X));
    CHECK(aligned_brute_force(X));  // subsets of Euclidean space are aligned
  }
  // non-aligned controls
  CHECK(alignedness(five_cycle()).aligned == aligned_brute_force(five_cycle()));
  CHECK(alignedness(diamond()).aligned == aligned_brute_force(diamond()));
}

TEST_CASE("interval embedding, convexity and splitting in aligned spaces") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coord(0, 15), den(1, 4), sz(3, 6);
  for (int trial = 0; trial < 25; ++trial) {
    size_t n = static_cast<size_t>(sz(rng));
    std::set<std::vector<Rat>> uniq;
    size_t dim = trial % 2 ? 2 : 1;
    while (uniq.size() < n) {
      std::vector<Rat> p;
      for (size_t k = 0; k < dim; ++k) p.push_back(Rat(coord(rng), den(rng)));
      uniq.insert(p);
    }
    auto X = metric_space_of(PointSet(dim, {uniq.begin(), uniq.end()}));
    REQUIRE(alignedness(X).aligned);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        auto iv = interval(X, a, b);
        // distance-from-a determines all pairwise distances on [a, b]
        for (size_t i : iv)
          for (size_t j : iv) {
            ExactLength diff = X.d(a, i) - X.d(a, j);
            if (diff.sign() < 0) diff = -diff;
            CHECK(diff == X.d(i, j));
          }
        // interval convexity
        for (size_t i : iv)
          for (size_t j : iv)
            for (size_t p : interval(X, i, j))
              CHECK(std::find(iv.begin(), iv.end(), p) != iv.end());
        // splitting across a middle point
        for (size_t m : iv) {
          std::set<size_t> uni;
          for (size_t p : interval(X, a, m)) uni.insert(p);
          for (size_t p : interval(X, m, b)) uni.insert(p);
          CHECK(uni == std::set<size_t>(iv.begin(), iv.end()));
        }
      }
  }
}

TEST_CASE("inner boundary is idempotent") {
  for (const auto& X : {five_cycle(), diamond(), reals({0, 1, 5, 7})}) {
    auto rho = inner_boundary(X);
    auto sub = X.restrict(rho);
    auto rho2 = inner_boundary(sub);
    std::vector<size_t> expect(rho.size());
    for (size_t i = 0; i < rho.size(); ++i) expect[i] = i;
    CHECK(rho2 == expect);
  }
}

TEST_CASE("metric convex hull") {
  auto d = diamond();
  CHECK(metric_convex_hull(d, {1, 3}) == std::vector<size_t>{0, 1, 2, 3});  // {x, z}
  auto X = reals({0, 1, 2, 3});
  CHECK(metric_convex_hull(X, {0, 3}) == std::vector<size_t>{0, 1, 2, 3});
  CHECK(metric_convex_hull(X, {0, 1}) == std::vector<size_t>{0, 1});  // already convex
  // idempotence and monotonicity
  auto h = metric_convex_hull(d, {1, 3});
  CHECK(metric_convex_hull(d, h) == h);
  auto h2 = metric_convex_hull(d, {1});
  CHECK(std::includes(h.begin(), h.end(), h2.begin(), h2.end()));
}

TEST_CASE("isometry witness") {
  auto X = reals({0, 1, 2, 3});
  // same space with permuted points
  auto Y = reals({3, 2, 1, 0});
  auto w = isometry_witness(X, Y);
  REQUIRE(w);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) CHECK(X.d(i, j) == Y.d((*w)[i], (*w)[j]));

  CHECK(!isometry_witness(X, reals({0, 1, 2})));
  // rotated image in the plane: i * (3/5, 4/5) has the metric of {0,1,2,3}
  std::vector<Vec> pts;
  for (int i = 0; i < 4; ++i) pts.push_back({Rat(3 * i, 5), Rat(4 * i, 5)});
  auto Z = metric_space_of(PointSet(2, pts));
  CHECK(isometry_witness(X, Z));
  CHECK(!isometry_witness(X, five_cycle()));
}
