#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mag/linalg.hpp"
#include "mag/metspace.hpp"

namespace mag {

// ======================================================================
// Chainwise operations, generic over a space oracle.
//
// An oracle O provides:
//   typename O::Point               (regular, ordered)
//   ExactLength distance(p, q)
//   bool is_between(p, q, r)        d(p,r) = d(p,q) + d(q,r)
//   bool is_adjacent(p, q)
//   Point choose_between(p, r)      a member strictly between non-adjacent
//                                   distinct p, r
// The same code then runs over finite metric spaces and over continuum
// planar shapes.
// ======================================================================

template <class O>
ExactLength chain_length(const O& X, const std::vector<typename O::Point>& c) {
  ExactLength len(0);
  for (size_t i = 0; i + 1 < c.size(); ++i) len += X.distance(c[i], c[i + 1]);
  return len;
}

/// No consecutive repeats (and nonempty).
template <class O>
bool is_proper_chain(const O& X, const std::vector<typename O::Point>& c) {
  (void)X;
  if (c.empty()) return false;
  for (size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i] == c[i + 1]) return false;
  return true;
}

/// Smooth at i: 0 < i < n and the entry lies strictly between its
/// neighbors (so dropping it preserves the length).
template <class O>
bool chain_smooth_at(const O& X, const std::vector<typename O::Point>& c, size_t i) {
  if (i == 0 || i + 1 >= c.size()) return false;
  return X.is_between(c[i - 1], c[i], c[i + 1]);
}

/// Subchain of the entries at singular indices; endpoints always kept.
template <class O>
std::vector<typename O::Point> chain_frame(const O& X, const std::vector<typename O::Point>& c) {
  std::vector<typename O::Point> out;
  for (size_t i = 0; i < c.size(); ++i)
    if (!chain_smooth_at(X, c, i)) out.push_back(c[i]);
  return out;
}

/// Thin: consecutive entries adjacent and no interior entry between its
/// neighbors.
template <class O>
bool is_thin(const O& X, const std::vector<typename O::Point>& c) {
  if (!is_proper_chain(X, c)) return false;
  for (size_t i = 0; i + 1 < c.size(); ++i)
    if (!X.is_adjacent(c[i], c[i + 1])) return false;
  for (size_t i = 1; i + 1 < c.size(); ++i)
    if (X.is_between(c[i - 1], c[i], c[i + 1])) return false;
  return true;
}

/// Formal integer combination of chains; the value type for chainwise
/// boundary and homotopy computations.
template <class P>
using FormalSum = std::map<std::vector<P>, Int>;

template <class P>
void formal_add(FormalSum<P>& s, const std::vector<P>& c, const Int& coeff) {
  auto it = s.find(c);
  if (it == s.end()) {
    if (coeff != 0) s.emplace(c, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) s.erase(it);
}

template <class P>
void formal_add_sum(FormalSum<P>& s, const FormalSum<P>& other, const Int& coeff) {
  for (const auto& [c, k] : other) formal_add(s, c, k * coeff);
}

/// Boundary of one chain: alternating sum of the faces that drop an
/// entry, keeping only faces that stay proper with unchanged length
/// (exactly the smooth interior faces).
template <class O>
FormalSum<typename O::Point> chain_boundary(const O& X, const std::vector<typename O::Point>& c) {
  FormalSum<typename O::Point> out;
  for (size_t i = 1; i + 1 < c.size(); ++i) {
    if (!chain_smooth_at(X, c, i)) continue;
    std::vector<typename O::Point> face = c;
    face.erase(face.begin() + static_cast<long>(i));
    if (face[i - 1] == face[i]) continue;  // improper (cannot happen when smooth)
    formal_add(out, face, (i % 2 == 0) ? Int(1) : Int(-1));
  }
  return out;
}

/// Image of a chain under a point map: the image tuple when it is proper
/// of equal length, nullopt (the zero element) otherwise.
template <class OX, class OY, class F>
std::optional<std::vector<typename OY::Point>> push_chain(const OX& X, const OY& Y, F&& f,
                                                          const std::vector<typename OX::Point>&
                                                              c) {
  std::vector<typename OY::Point> img;
  img.reserve(c.size());
  for (const auto& p : c) img.push_back(f(p));
  if (!is_proper_chain(Y, img)) return std::nullopt;
  if (chain_length(Y, img) != chain_length(X, c)) return std::nullopt;
  return img;
}

/// Image under the induced thin-basis map: kept only when the image is
/// thin of equal length.
template <class OX, class OY, class F>
std::optional<std::vector<typename OY::Point>> push_thin(const OX& X, const OY& Y, F&& f,
                                                         const std::vector<typename OX::Point>&
                                                             c) {
  auto img = push_chain(X, Y, std::forward<F>(f), c);
  if (!img || !is_thin(Y, *img)) return std::nullopt;
  return img;
}

/// The extension step of the chain homotopy: locate the first
/// non-adjacent gap (x_{i_{r-1}}, x_{i_r}) of the frame, insert the
/// chosen between-point at the unique slot h with i_{r-1} < h <= i_r
/// where it lies strictly between x_{h-1} and x_h. Nullopt when the
/// chain equals its frame with all steps adjacent (the zero case).
template <class O>
std::optional<std::pair<size_t, std::vector<typename O::Point>>> phi_extend(
    const O& X, const std::vector<typename O::Point>& c) {
  std::vector<size_t> idx;  // singular indices
  for (size_t i = 0; i < c.size(); ++i)
    if (!chain_smooth_at(X, c, i)) idx.push_back(i);
  for (size_t r = 1; r < idx.size(); ++r) {
    const auto& a = c[idx[r - 1]];
    const auto& b = c[idx[r]];
    if (X.is_adjacent(a, b)) continue;
    typename O::Point m = X.choose_between(a, b);
    for (size_t h = idx[r - 1] + 1; h <= idx[r]; ++h) {
      if (m == c[h - 1] || m == c[h]) continue;
      if (!X.is_between(c[h - 1], m, c[h])) continue;
      std::vector<typename O::Point> ext = c;
      ext.insert(ext.begin() + static_cast<long>(h), m);
      return std::make_pair(h, ext);
    }
    // the chosen point may coincide with a smooth interior entry of the
    // gap; the insertion is then improper, i.e. the zero chain
    for (size_t j = idx[r - 1] + 1; j < idx[r]; ++j)
      if (c[j] == m) return std::nullopt;
    throw std::logic_error("no insertion slot for the chosen point (space not aligned?)");
  }
  return std::nullopt;
}

/// phi of one chain: (-1)^h (g# - f#)(extended chain), as a formal sum
/// of chains of Y (zero, one or two terms).
template <class OX, class OY, class F, class G>
FormalSum<typename OY::Point> homotopy_phi_chain(const OX& X, const OY& Y, F&& f, G&& g,
                                                 const std::vector<typename OX::Point>& c) {
  FormalSum<typename OY::Point> out;
  auto ext = phi_extend(X, c);
  if (!ext) return out;
  Int sgn = (ext->first % 2 == 0) ? 1 : -1;
  if (auto img = push_chain(X, Y, std::forward<G>(g), ext->second)) formal_add(out, *img, sgn);
  if (auto img = push_chain(X, Y, std::forward<F>(f), ext->second)) formal_add(out, *img, -sgn);
  return out;
}

// ======================================================================
// Finite metric spaces: oracle view, block enumeration, matrices.
// ======================================================================

/// Oracle facade over a FiniteMetricSpace; points are indices.
class FiniteOracle {
 public:
  using Point = size_t;

  explicit FiniteOracle(const FiniteMetricSpace& X)
      : X_(&X),
        betw_(X.size() * X.size() * X.size(), -1),
        adj_(X.size() * X.size(), -1) {}

  const FiniteMetricSpace& space() const { return *X_; }
  bool member(size_t p) const { return p < X_->size(); }
  ExactLength distance(size_t p, size_t q) const { return X_->d(p, q); }
  // betweenness and adjacency are memoized: chain enumeration asks the
  // same triples over and over, and each fresh answer costs exact
  // radical-field comparisons
  bool is_between(size_t p, size_t q, size_t r) const {
    const size_t n = X_->size();
    if (p >= n || q >= n || r >= n) return mag::is_between(*X_, p, q, r);
    signed char& m = betw_[(p * n + q) * n + r];
    if (m < 0) m = mag::is_between(*X_, p, q, r) ? 1 : 0;
    return m == 1;
  }
  bool is_adjacent(size_t p, size_t q) const {
    const size_t n = X_->size();
    if (p >= n || q >= n) return mag::is_adjacent(*X_, p, q);
    signed char& m = adj_[p * n + q];
    if (m < 0) m = mag::is_adjacent(*X_, p, q) ? 1 : 0;
    return m == 1;
  }
  /// The strictly-between member closest to p (least index on the
  /// impossible tie, for determinism).
  size_t choose_between(size_t p, size_t r) const;

 private:
  const FiniteMetricSpace* X_;
  mutable std::vector<signed char> betw_, adj_;
};

/// 1-Lipschitz map between finite spaces as an index table.
struct MetricMap {
  std::vector<size_t> table;
  size_t operator()(size_t p) const { return table.at(p); }
};

/// Throws std::invalid_argument unless f is a 1-Lipschitz map X -> Y.
void validate_metric_map(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                         const MetricMap& f);

struct GradedKey {
  size_t n = 0;
  ExactLength len;
  bool operator<(const GradedKey& o) const {
    if (n != o.n) return n < o.n;
    return len < o.len;
  }
  bool operator==(const GradedKey& o) const { return n == o.n && len == o.len; }
};

struct GradedBlock {
  std::vector<std::vector<size_t>> basis;         // lexicographic chain order
  std::map<std::vector<size_t>, size_t> index;    // chain -> basis position
};

/// All proper chains of degree <= n_max and length <= l_max, grouped by
/// (degree, length). complete_to_degree < n_max only when the cap on a
/// single degree's chain count was hit.
struct ChainComplex {
  size_t n_max = 0;
  ExactLength l_max;
  std::map<GradedKey, GradedBlock> blocks;
  size_t complete_to_degree = 0;

  const GradedBlock* block(size_t n, const ExactLength& l) const {
    auto it = blocks.find(GradedKey{n, l});
    return it == blocks.end() ? nullptr : &it->second;
  }
};

ChainComplex enumerate_chains(const FiniteMetricSpace& X, size_t n_max, const ExactLength& l_max,
                              size_t cap = 0);

/// Matrix of the boundary map out of block (n, l) into block (n-1, l);
/// rows index the target basis, columns the source basis.
IntMatrix boundary_matrix(const FiniteMetricSpace& X, const ChainComplex& C, size_t n,
                          const ExactLength& l);

/// Thin chains at (n, l), lexicographic.
std::vector<std::vector<size_t>> thin_chain_basis(const FiniteMetricSpace& X, size_t n,
                                                  const ExactLength& l);

/// Thin chains of degree n at every length (finitely many), lexicographic.
std::vector<std::vector<size_t>> all_thin_chains(const FiniteMetricSpace& X, size_t n);

/// Matrix of f# between chain blocks at one (n, l); throws when an image
/// chain is missing from the target basis.
IntMatrix induced_chain_map(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                            const MetricMap& f, const std::vector<std::vector<size_t>>& basis_x,
                            const std::vector<std::vector<size_t>>& basis_y);

/// Matrix of the induced map on thin bases at one (n, l).
IntMatrix induced_thin_map(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                           const MetricMap& f, const std::vector<std::vector<size_t>>& basis_x,
                           const std::vector<std::vector<size_t>>& basis_y);

/// Matrix of the chain homotopy phi on one block: columns over the (n, l)
/// basis of X, rows over the (n+1, l) basis of Y.
IntMatrix homotopy_phi_matrix(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                              const MetricMap& f, const MetricMap& g,
                              const std::vector<std::vector<size_t>>& basis_x,
                              const std::vector<std::vector<size_t>>& basis_y_up);

}  // namespace mag
