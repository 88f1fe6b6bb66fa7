#include "mag/linalg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace mag {

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix r(x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      const Int& v = x.at(i, k);
      if (v == 0) continue;
      for (size_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

bool IntMatrix::is_zero() const {
  for (const Int& v : a)
    if (v != 0) return false;
  return true;
}

namespace {

void row_op(IntMatrix& m, IntMatrix* u, size_t dst, size_t src, const Int& q) {
  // row dst -= q * row src
  for (size_t j = 0; j < m.cols; ++j) m.at(dst, j) -= q * m.at(src, j);
  if (u)
    for (size_t j = 0; j < u->cols; ++j) u->at(dst, j) -= q * u->at(src, j);
}

void col_op(IntMatrix& m, IntMatrix* v, size_t dst, size_t src, const Int& q) {
  for (size_t i = 0; i < m.rows; ++i) m.at(i, dst) -= q * m.at(i, src);
  if (v)
    for (size_t i = 0; i < v->rows; ++i) v->at(i, dst) -= q * v->at(i, src);
}

void swap_rows(IntMatrix& m, IntMatrix* u, size_t r1, size_t r2) {
  if (r1 == r2) return;
  for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(r1, j), m.at(r2, j));
  if (u)
    for (size_t j = 0; j < u->cols; ++j) std::swap(u->at(r1, j), u->at(r2, j));
}

void swap_cols(IntMatrix& m, IntMatrix* v, size_t c1, size_t c2) {
  if (c1 == c2) return;
  for (size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, c1), m.at(i, c2));
  if (v)
    for (size_t i = 0; i < v->rows; ++i) std::swap(v->at(i, c1), v->at(i, c2));
}

// Sparse pre-pass for large matrices (homology boundary matrices are
// huge, very sparse, and almost entirely reducible by +-1 pivots, which
// never grow entries): peel unit pivots on a sparse representation, then
// finish the small remaining core with the dense routine.
SnfResult snf_sparse(const IntMatrix& m) {
  std::vector<std::map<size_t, Int>> rows(m.rows);
  std::vector<std::set<size_t>> col_rows(m.cols);
  std::deque<std::pair<size_t, size_t>> units;
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) {
      const Int& v = m.at(i, j);
      if (v == 0) continue;
      rows[i][j] = v;
      col_rows[j].insert(i);
      if (v == 1 || v == -1) units.emplace_back(i, j);
    }
  std::vector<bool> row_done(m.rows, false), col_done(m.cols, false);
  size_t unit_count = 0;
  while (!units.empty()) {
    auto [r, c] = units.front();
    units.pop_front();
    if (row_done[r] || col_done[c]) continue;
    auto it = rows[r].find(c);
    if (it == rows[r].end() || (it->second != 1 && it->second != -1)) continue;
    Int v = it->second;
    // clear the pivot column with row operations; v^2 = 1
    std::vector<size_t> users(col_rows[c].begin(), col_rows[c].end());
    for (size_t r2 : users) {
      if (r2 == r) continue;
      Int q = rows[r2][c] * v;
      for (const auto& [j, pv] : rows[r]) {
        Int& cell = rows[r2][j];
        cell -= q * pv;
        if (cell == 0) {
          rows[r2].erase(j);
          col_rows[j].erase(r2);
        } else {
          col_rows[j].insert(r2);
          if (cell == 1 || cell == -1) units.emplace_back(r2, j);
        }
      }
    }
    // the pivot row's other columns are only populated in this row now as
    // far as elimination is concerned: retiring row and column splits off
    // a unimodular diag(1) block
    for (const auto& [j, pv] : rows[r]) col_rows[j].erase(r);
    rows[r].clear();
    row_done[r] = true;
    col_done[c] = true;
    ++unit_count;
  }
  // dense finish on whatever survives
  std::vector<size_t> live_rows, live_cols;
  std::set<size_t> live_col_set;
  for (size_t i = 0; i < m.rows; ++i)
    if (!row_done[i] && !rows[i].empty()) live_rows.push_back(i);
  for (size_t i : live_rows)
    for (const auto& [j, v] : rows[i]) live_col_set.insert(j);
  live_cols.assign(live_col_set.begin(), live_col_set.end());
  SnfResult res;
  res.invariant_factors.assign(unit_count, Int(1));
  res.rank = unit_count;
  if (!live_rows.empty()) {
    IntMatrix core(live_rows.size(), live_cols.size());
    for (size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [j, v] : rows[live_rows[i]]) {
        size_t jj = static_cast<size_t>(
            std::lower_bound(live_cols.begin(), live_cols.end(), j) - live_cols.begin());
        core.at(i, jj) = v;
      }
    SnfResult inner = smith_normal_form(std::move(core));
    res.rank += inner.rank;
    for (const Int& f : inner.invariant_factors) res.invariant_factors.push_back(f);
  }
  res.S = IntMatrix(m.rows, m.cols);
  for (size_t i = 0; i < res.invariant_factors.size(); ++i)
    res.S.at(i, i) = res.invariant_factors[i];
  return res;
}

}  // namespace

SnfResult smith_normal_form(IntMatrix m, bool want_transforms) {
  if (!want_transforms && m.rows * m.cols > 4096) return snf_sparse(m);
  SnfResult res;
  IntMatrix u, v;
  IntMatrix* up = nullptr;
  IntMatrix* vp = nullptr;
  if (want_transforms) {
    u = IntMatrix::identity(m.rows);
    v = IntMatrix::identity(m.cols);
    up = &u;
    vp = &v;
  }
  size_t t = 0;
  const size_t tmax = std::min(m.rows, m.cols);
  while (t < tmax) {
    // re-selecting the smallest nonzero entry of the trailing submatrix
    // as pivot after every pass keeps intermediate entries from the
    // exponential blowup the one-shot choice suffers
    size_t pr = 0, pc = 0;
    bool found = false;
    Int best;
    for (size_t i = t; i < m.rows; ++i)
      for (size_t j = t; j < m.cols; ++j) {
        const Int& x = m.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (!found || ax < best) {
          found = true;
          best = ax;
          pr = i;
          pc = j;
        }
      }
    if (!found) break;
    swap_rows(m, up, t, pr);
    swap_cols(m, vp, t, pc);

    // one elimination pass; any surviving remainder is strictly smaller
    // than the pivot, so looping back to the pivot scan terminates
    bool dirty = false;
    for (size_t i = t + 1; i < m.rows; ++i) {
      if (m.at(i, t) == 0) continue;
      Int q = m.at(i, t) / m.at(t, t);
      row_op(m, up, i, t, q);
      if (m.at(i, t) != 0) dirty = true;
    }
    for (size_t j = t + 1; j < m.cols; ++j) {
      if (m.at(t, j) == 0) continue;
      Int q = m.at(t, j) / m.at(t, t);
      col_op(m, vp, j, t, q);
      if (m.at(t, j) != 0) dirty = true;
    }
    if (dirty) continue;
    // enforce divisibility: pivot must divide the whole submatrix
    bool divides = true;
    for (size_t i = t + 1; i < m.rows && divides; ++i)
      for (size_t j = t + 1; j < m.cols && divides; ++j)
        if (m.at(i, j) % m.at(t, t) != 0) {
          row_op(m, up, t, i, Int(-1));  // add row i to row t
          divides = false;
        }
    if (!divides) continue;
    ++t;
  }
  for (size_t i = 0; i < t; ++i) {
    if (m.at(i, i) < 0) {
      m.at(i, i) = -m.at(i, i);
      if (vp)
        for (size_t r = 0; r < vp->rows; ++r) vp->at(r, i) = -vp->at(r, i);
    }
    res.invariant_factors.push_back(m.at(i, i));
  }
  res.rank = t;
  res.S = std::move(m);
  if (want_transforms) {
    res.U = std::move(u);
    res.V = std::move(v);
  }
  return res;
}

size_t rank_rational(const IntMatrix& m) {
  RatMat q(m.rows, RatVec(m.cols));
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) q[i][j] = Rat(m.at(i, j));
  return rat_rank(std::move(q));
}

size_t rat_rank(RatMat m) {
  size_t rank = 0;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    for (size_t i = rank + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[rank][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::optional<RatVec> rat_solve(RatMat A, RatVec b) {
  size_t rows = A.size();
  size_t cols = rows ? A[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[rank], A[piv]);
    std::swap(b[rank], b[piv]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || A[i][c] == 0) continue;
      Rat f = A[i][c] / A[rank][c];
      for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[rank][j];
      b[i] -= f * b[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (size_t i = rank; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i] / A[i][pivot_col[i]];
  return x;
}

}  // namespace mag
