#pragma once

#include <optional>
#include <vector>

#include "mag/numeric.hpp"

namespace mag {

/// Dense integer matrix with arbitrary-precision entries.
struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

  Int& at(size_t r, size_t c) { return a[r * cols + c]; }
  const Int& at(size_t r, size_t c) const { return a[r * cols + c]; }

  static IntMatrix identity(size_t n);
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  bool operator==(const IntMatrix& o) const = default;
  bool is_zero() const;
};

struct SnfResult {
  std::vector<Int> invariant_factors;  // positive, each dividing the next
  size_t rank = 0;
  std::optional<IntMatrix> U, V;  // unimodular, U*M*V = diag(factors)
  IntMatrix S;                    // the diagonal form
};

/// Smith normal form by integer row/column reduction with smallest-pivot
/// selection.
SnfResult smith_normal_form(IntMatrix m, bool want_transforms = false);

/// Rank over the rationals by Gaussian elimination; independent of the
/// Smith normal form path.
size_t rank_rational(const IntMatrix& m);

// --- dense rational linear algebra -------------------------------------

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major

size_t rat_rank(RatMat m);

/// One solution of A x = b, or nullopt when inconsistent.
std::optional<RatVec> rat_solve(RatMat A, RatVec b);

}  // namespace mag
