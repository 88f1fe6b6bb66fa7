#include "mag/chains.hpp"

#include <algorithm>

namespace mag {

size_t FiniteOracle::choose_between(size_t p, size_t r) const {
  if (p == r || is_adjacent(p, r))
    throw std::invalid_argument("choose_between needs distinct non-adjacent points");
  std::optional<size_t> best;
  for (size_t q = 0; q < X_->size(); ++q) {
    if (q == p || q == r || !is_between(p, q, r)) continue;
    if (!best || X_->d(p, q) < X_->d(p, *best)) best = q;
  }
  if (!best) throw std::logic_error("non-adjacent points with empty open interval");
  return *best;
}

void validate_metric_map(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                         const MetricMap& f) {
  if (f.table.size() != X.size()) throw std::invalid_argument("map table size mismatch");
  for (size_t p : f.table)
    if (p >= Y.size()) throw std::invalid_argument("map image out of range");
  for (size_t i = 0; i < X.size(); ++i)
    for (size_t j = 0; j < X.size(); ++j)
      if (Y.d(f.table[i], f.table[j]) > X.d(i, j))
        throw std::invalid_argument("map is not 1-Lipschitz");
}

ChainComplex enumerate_chains(const FiniteMetricSpace& X, size_t n_max, const ExactLength& l_max,
                              size_t cap) {
  ChainComplex C;
  C.n_max = n_max;
  C.l_max = l_max;
  C.complete_to_degree = n_max;
  const size_t npts = X.size();
  // degree 0
  std::vector<std::pair<std::vector<size_t>, ExactLength>> cur;
  for (size_t p = 0; p < npts; ++p) cur.push_back({{p}, ExactLength(0)});
  for (size_t n = 0; n <= n_max; ++n) {
    if (cap > 0 && cur.size() > cap) {
      C.complete_to_degree = n == 0 ? 0 : n - 1;
      break;
    }
    for (auto& [chain, len] : cur) {
      GradedBlock& b = C.blocks[GradedKey{n, len}];
      b.index.emplace(chain, b.basis.size());
      b.basis.push_back(chain);
    }
    if (n == n_max) break;
    std::vector<std::pair<std::vector<size_t>, ExactLength>> next;
    for (const auto& [chain, len] : cur) {
      for (size_t p = 0; p < npts; ++p) {
        if (p == chain.back()) continue;
        ExactLength nl = len + X.d(chain.back(), p);
        if (nl > l_max) continue;
        auto ext = chain;
        ext.push_back(p);
        next.push_back({std::move(ext), std::move(nl)});
      }
    }
    cur = std::move(next);
  }
  return C;
}

IntMatrix boundary_matrix(const FiniteMetricSpace& X, const ChainComplex& C, size_t n,
                          const ExactLength& l) {
  const GradedBlock* src = C.block(n, l);
  const GradedBlock* dst = n == 0 ? nullptr : C.block(n - 1, l);
  size_t rows = dst ? dst->basis.size() : 0;
  size_t cols = src ? src->basis.size() : 0;
  IntMatrix M(rows, cols);
  if (!src || !dst) return M;
  FiniteOracle O(X);
  for (size_t c = 0; c < cols; ++c) {
    auto bd = chain_boundary(O, src->basis[c]);
    for (const auto& [face, coeff] : bd) {
      auto it = dst->index.find(face);
      if (it == dst->index.end()) throw std::logic_error("boundary face missing from block");
      M.at(it->second, c) += coeff;
    }
  }
  return M;
}

namespace {

void thin_dfs(const FiniteMetricSpace& X, const ExactLength* l, size_t n,
              std::vector<size_t>& chain, const ExactLength& len,
              std::vector<std::vector<size_t>>& out) {
  if (chain.size() == n + 1) {
    if (!l || len == *l) out.push_back(chain);
    return;
  }
  for (size_t p = 0; p < X.size(); ++p) {
    if (!is_adjacent(X, chain.back(), p)) continue;
    if (chain.size() >= 2 && is_between(X, chain[chain.size() - 2], chain.back(), p)) continue;
    ExactLength nl = len + X.d(chain.back(), p);
    if (l && nl > *l) continue;
    chain.push_back(p);
    thin_dfs(X, l, n, chain, nl, out);
    chain.pop_back();
  }
}

}  // namespace

std::vector<std::vector<size_t>> thin_chain_basis(const FiniteMetricSpace& X, size_t n,
                                                  const ExactLength& l) {
  std::vector<std::vector<size_t>> out;
  if (n == 0) {
    if (l.is_zero())
      for (size_t p = 0; p < X.size(); ++p) out.push_back({p});
    return out;
  }
  for (size_t p = 0; p < X.size(); ++p) {
    std::vector<size_t> chain{p};
    thin_dfs(X, &l, n, chain, ExactLength(0), out);
  }
  return out;
}

std::vector<std::vector<size_t>> all_thin_chains(const FiniteMetricSpace& X, size_t n) {
  std::vector<std::vector<size_t>> out;
  if (n == 0) {
    for (size_t p = 0; p < X.size(); ++p) out.push_back({p});
    return out;
  }
  for (size_t p = 0; p < X.size(); ++p) {
    std::vector<size_t> chain{p};
    thin_dfs(X, nullptr, n, chain, ExactLength(0), out);
  }
  return out;
}

namespace {

IntMatrix map_matrix(const std::vector<std::vector<size_t>>& basis_x,
                     const std::vector<std::vector<size_t>>& basis_y,
                     const std::function<std::optional<std::vector<size_t>>(
                         const std::vector<size_t>&)>& image) {
  std::map<std::vector<size_t>, size_t> idx;
  for (size_t i = 0; i < basis_y.size(); ++i) idx.emplace(basis_y[i], i);
  IntMatrix M(basis_y.size(), basis_x.size());
  for (size_t c = 0; c < basis_x.size(); ++c) {
    auto img = image(basis_x[c]);
    if (!img) continue;
    auto it = idx.find(*img);
    if (it == idx.end()) throw std::logic_error("image chain missing from target basis");
    M.at(it->second, c) = 1;
  }
  return M;
}

}  // namespace

IntMatrix induced_chain_map(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                            const MetricMap& f, const std::vector<std::vector<size_t>>& basis_x,
                            const std::vector<std::vector<size_t>>& basis_y) {
  FiniteOracle OX(X), OY(Y);
  return map_matrix(basis_x, basis_y,
                    [&](const std::vector<size_t>& c) { return push_chain(OX, OY, f, c); });
}

IntMatrix induced_thin_map(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                           const MetricMap& f, const std::vector<std::vector<size_t>>& basis_x,
                           const std::vector<std::vector<size_t>>& basis_y) {
  FiniteOracle OX(X), OY(Y);
  return map_matrix(basis_x, basis_y,
                    [&](const std::vector<size_t>& c) { return push_thin(OX, OY, f, c); });
}

IntMatrix homotopy_phi_matrix(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                              const MetricMap& f, const MetricMap& g,
                              const std::vector<std::vector<size_t>>& basis_x,
                              const std::vector<std::vector<size_t>>& basis_y_up) {
  FiniteOracle OX(X), OY(Y);
  std::map<std::vector<size_t>, size_t> idx;
  for (size_t i = 0; i < basis_y_up.size(); ++i) idx.emplace(basis_y_up[i], i);
  IntMatrix M(basis_y_up.size(), basis_x.size());
  for (size_t c = 0; c < basis_x.size(); ++c) {
    auto sum = homotopy_phi_chain(OX, OY, f, g, basis_x[c]);
    for (const auto& [chain, coeff] : sum) {
      auto it = idx.find(chain);
      if (it == idx.end()) throw std::logic_error("phi image missing from target basis");
      M.at(it->second, c) += coeff;
    }
  }
  return M;
}

}  // namespace mag
