#pragma once

#include <map>
#include <string>
#include <vector>

#include "mag/chains.hpp"

namespace mag {

struct HomologyGroup {
  size_t free_rank = 0;
  std::vector<Int> torsion;  // each > 1, each dividing the next

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  /// "0", "Z", "Z^3", "Z^2 ⊕ Z/2", ...
  std::string str() const;
  bool operator==(const HomologyGroup& o) const = default;
};

struct HomologyTable {
  size_t n_max = 0;
  ExactLength l_max;
  /// Absent key = zero group, valid for n <= computed_to_degree and
  /// lengths <= l_max. Degrees beyond computed_to_degree are uncomputed
  /// (cap hit), never zero-claimed.
  std::map<GradedKey, HomologyGroup> groups;
  size_t computed_to_degree = 0;

  HomologyGroup at(size_t n, const ExactLength& l) const;
};

/// Homology of every (n, l) block with n <= n_max, l <= l_max:
/// free rank by the rank-nullity count dim - rank d_n - rank d_{n+1},
/// torsion from the invariant factors of d_{n+1}. Every rank is computed
/// twice (Smith form and rational elimination) and cross-checked.
HomologyTable magnitude_homology(const FiniteMetricSpace& X, size_t n_max,
                                 const ExactLength& l_max, size_t cap = 0);

/// Aligned text rendering: rows n, columns the realized lengths.
std::string render_table(const HomologyTable& t);

struct KyReport {
  bool refused = false;  // input not aligned
  AlignednessReport alignment;
  bool match = false;
  std::vector<std::string> mismatches;
};

/// Cross-validation of the homology pipeline against the thin-chain
/// count: on aligned spaces every block must be free of rank equal to
/// the number of thin chains at that grading. Refuses non-aligned input,
/// naming a witness.
KyReport ky_compare(const FiniteMetricSpace& X, size_t n_max, const ExactLength& l_max,
                    size_t cap = 0);

struct EulerReport {
  bool match = false;
  long l_max = 0;
  std::vector<Int> series;  // magnitude power series coefficients
  std::vector<Int> chi;     // graded Euler characteristics
};

/// For a graph metric: the alternating rank sum over each length equals
/// the coefficient of the magnitude power series (inverse of the
/// similarity matrix with entries q^d(i,j), summed over all entries).
/// Throws unless every distance is a nonnegative integer.
EulerReport euler_magnitude_check(const FiniteMetricSpace& G, long l_max);

struct MutualInverseReport {
  bool mutually_inverse = false;
  /// Route 1: g(f(x)) = x on the inner boundary of X and f(g(y)) = y on
  /// the inner boundary of Y.
  bool geometric = false;
  /// Route 2: the induced thin-basis matrices at degree n are mutually
  /// inverse at every realized length.
  bool homological = false;
};

/// Decides whether f and g induce mutually inverse maps in degree n >= 1.
/// Requires X, Y aligned (throws naming the failure otherwise); the two
/// routes must agree or a logic error is raised.
MutualInverseReport mutually_inverse_check(const FiniteMetricSpace& X,
                                           const FiniteMetricSpace& Y, const MetricMap& f,
                                           const MetricMap& g, size_t n);

}  // namespace mag
