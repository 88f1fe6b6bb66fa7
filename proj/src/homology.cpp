#include "mag/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mag {

std::string HomologyGroup::str() const {
  if (is_zero()) return "0";
  std::string s;
  if (free_rank == 1) s = "Z";
  else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
  for (const Int& t : torsion) {
    if (!s.empty()) s += " ⊕ ";
    s += "Z/" + t.str();
  }
  return s;
}

HomologyGroup HomologyTable::at(size_t n, const ExactLength& l) const {
  if (n > computed_to_degree)
    throw std::out_of_range("degree beyond the computed range (basis cap reached)");
  auto it = groups.find(GradedKey{n, l});
  return it == groups.end() ? HomologyGroup{} : it->second;
}

HomologyTable magnitude_homology(const FiniteMetricSpace& X, size_t n_max,
                                 const ExactLength& l_max, size_t cap) {
  ChainComplex C = enumerate_chains(X, n_max + 1, l_max, cap);
  if (C.complete_to_degree == 0)
    throw std::runtime_error("basis cap too small to compute any homology");
  HomologyTable T;
  T.n_max = n_max;
  T.l_max = l_max;
  T.computed_to_degree = C.complete_to_degree >= n_max + 1 ? n_max : C.complete_to_degree - 1;

  // one reduction per boundary matrix: key = source block (n, l)
  std::map<GradedKey, std::pair<size_t, std::vector<Int>>> red;
  for (const auto& [key, block] : C.blocks) {
    if (key.n == 0 || key.n > T.computed_to_degree + 1) continue;
    IntMatrix M = boundary_matrix(X, C, key.n, key.len);
    SnfResult snf = smith_normal_form(M);
    if (snf.rank != rank_rational(M))
      throw std::logic_error("rank disagreement between Smith form and rational elimination");
    red.emplace(key, std::make_pair(snf.rank, snf.invariant_factors));
  }

  for (const auto& [key, block] : C.blocks) {
    if (key.n > T.computed_to_degree) continue;
    size_t dim = block.basis.size();
    size_t rank_out = 0;
    if (key.n > 0) {
      auto it = red.find(key);
      if (it != red.end()) rank_out = it->second.first;
    }
    size_t rank_in = 0;
    std::vector<Int> torsion;
    auto up = red.find(GradedKey{key.n + 1, key.len});
    if (up != red.end()) {
      rank_in = up->second.first;
      for (const Int& f : up->second.second)
        if (f > 1) torsion.push_back(f);
    }
    HomologyGroup g{dim - rank_out - rank_in, std::move(torsion)};
    if (!g.is_zero()) T.groups.emplace(key, std::move(g));
  }
  return T;
}

std::string render_table(const HomologyTable& t) {
  std::vector<ExactLength> lengths;
  for (const auto& [key, g] : t.groups)
    if (std::find(lengths.begin(), lengths.end(), key.len) == lengths.end())
      lengths.push_back(key.len);
  std::sort(lengths.begin(), lengths.end());
  std::ostringstream os;
  os << "n\\l";
  for (const auto& l : lengths) os << "\t" << l.str();
  os << "\n";
  for (size_t n = 0; n <= t.n_max; ++n) {
    os << n;
    if (n > t.computed_to_degree) {
      os << "\t(uncomputed: basis cap reached)\n";
      continue;
    }
    for (const auto& l : lengths) os << "\t" << t.at(n, l).str();
    os << "\n";
  }
  return os.str();
}

KyReport ky_compare(const FiniteMetricSpace& X, size_t n_max, const ExactLength& l_max,
                    size_t cap) {
  KyReport rep;
  rep.alignment = alignedness(X);
  if (!rep.alignment.aligned) {
    rep.refused = true;
    return rep;
  }
  HomologyTable T = magnitude_homology(X, n_max, l_max, cap);
  ChainComplex C = enumerate_chains(X, T.computed_to_degree, l_max);
  rep.match = true;
  FiniteOracle O(X);
  for (const auto& [key, block] : C.blocks) {
    // the block already holds every proper chain of this grading, so the
    // thin count is a filter rather than a fresh length-bounded search
    size_t thin = 0;
    for (const auto& c : block.basis)
      if (is_thin(O, c)) ++thin;
    HomologyGroup g = T.at(key.n, key.len);
    if (!g.torsion.empty() || g.free_rank != thin) {
      rep.match = false;
      std::ostringstream os;
      os << "block (n=" << key.n << ", l=" << key.len.str() << "): homology " << g.str()
         << " vs thin-chain count " << thin;
      rep.mismatches.push_back(os.str());
    }
  }
  return rep;
}

namespace {

// truncated power series with integer coefficients
using Poly = std::vector<Int>;

Poly poly_mul(const Poly& a, const Poly& b, size_t terms) {
  Poly out(terms);
  for (size_t i = 0; i < a.size() && i < terms; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < terms; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

EulerReport euler_magnitude_check(const FiniteMetricSpace& G, long l_max) {
  if (l_max < 0) throw std::invalid_argument("negative length bound");
  const size_t n = G.size();
  const size_t terms = static_cast<size_t>(l_max) + 1;
  // integer distance check
  std::vector<std::vector<size_t>> d(n, std::vector<size_t>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const ExactLength& e = G.d(i, j);
      if (!e.is_rational() || rat_den(e.as_rational()) != 1 || e.sign() < 0)
        throw std::invalid_argument("euler check needs a graph metric (integer distances)");
      d[i][j] = static_cast<size_t>(rat_num(e.as_rational()));
    }
  // Z = I + N with N[i][j] = q^d(i,j) off the diagonal; the inverse is
  // the truncated Neumann series sum (-N)^k since N has valuation >= 1
  std::vector<std::vector<Poly>> N(n, std::vector<Poly>(n, Poly(terms)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && d[i][j] < terms) N[i][j][d[i][j]] = 1;
  std::vector<std::vector<Poly>> acc(n, std::vector<Poly>(n, Poly(terms)));
  std::vector<std::vector<Poly>> term = acc;
  for (size_t i = 0; i < n; ++i) {
    acc[i][i][0] = 1;
    term[i][i][0] = 1;
  }
  for (long k = 1; k <= l_max; ++k) {
    std::vector<std::vector<Poly>> next(n, std::vector<Poly>(n, Poly(terms)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Poly sum(terms);
        for (size_t m = 0; m < n; ++m) {
          Poly prod = poly_mul(term[i][m], N[m][j], terms);
          for (size_t t = 0; t < terms; ++t) sum[t] -= prod[t];
        }
        next[i][j] = std::move(sum);
      }
    term = std::move(next);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t t = 0; t < terms; ++t) acc[i][j][t] += term[i][j][t];
  }

  EulerReport rep;
  rep.l_max = l_max;
  rep.series.assign(terms, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t t = 0; t < terms; ++t) rep.series[t] += acc[i][j][t];

  size_t nm = static_cast<size_t>(l_max);
  HomologyTable T = magnitude_homology(G, nm, ExactLength(l_max));
  rep.chi.assign(terms, 0);
  for (long l = 0; l <= l_max; ++l) {
    Int chi = 0;
    for (size_t deg = 0; deg <= nm; ++deg) {
      HomologyGroup g = T.at(deg, ExactLength(l));
      Int r(static_cast<long>(g.free_rank));
      chi += (deg % 2 == 0) ? r : -r;
    }
    rep.chi[static_cast<size_t>(l)] = chi;
  }
  rep.match = rep.chi == rep.series;
  return rep;
}

MutualInverseReport mutually_inverse_check(const FiniteMetricSpace& X,
                                           const FiniteMetricSpace& Y, const MetricMap& f,
                                           const MetricMap& g, size_t n) {
  if (n < 1) throw std::invalid_argument("degree must be >= 1");
  validate_metric_map(X, Y, f);
  validate_metric_map(Y, X, g);
  for (const auto* S : {&X, &Y}) {
    AlignednessReport a = alignedness(*S);
    if (!a.aligned) throw std::invalid_argument("mutually_inverse_check needs aligned spaces");
  }
  MutualInverseReport rep;

  rep.geometric = true;
  for (size_t x : inner_boundary(X))
    if (g(f(x)) != x) rep.geometric = false;
  for (size_t y : inner_boundary(Y))
    if (f(g(y)) != y) rep.geometric = false;

  // realized lengths of degree-n thin chains in either space
  auto tx = all_thin_chains(X, n);
  auto ty = all_thin_chains(Y, n);
  std::set<ExactLength> lengths;
  FiniteOracle OX(X), OY(Y);
  for (const auto& c : tx) lengths.insert(chain_length(OX, c));
  for (const auto& c : ty) lengths.insert(chain_length(OY, c));

  rep.homological = true;
  for (const ExactLength& l : lengths) {
    std::vector<std::vector<size_t>> bx, by;
    for (const auto& c : tx)
      if (chain_length(OX, c) == l) bx.push_back(c);
    for (const auto& c : ty)
      if (chain_length(OY, c) == l) by.push_back(c);
    IntMatrix F = induced_thin_map(X, Y, f, bx, by);
    IntMatrix Gm = induced_thin_map(Y, X, g, by, bx);
    if (Gm * F != IntMatrix::identity(bx.size()) || F * Gm != IntMatrix::identity(by.size()))
      rep.homological = false;
  }

  if (rep.geometric != rep.homological)
    throw std::logic_error("geometric and homological mutual-inverse routes disagree");
  rep.mutually_inverse = rep.geometric;
  return rep;
}

}  // namespace mag
