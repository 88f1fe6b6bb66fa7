#pragma once

#include <map>
#include <optional>
#include <string>

#include "mag/numeric.hpp"

namespace mag {

/// A finite sum  sum_s c_s * sqrt(s)  with rational coefficients c_s and
/// squarefree positive integer radicands s (rationals live at s = 1).
/// Square roots of distinct squarefree integers are linearly independent
/// over the rationals, so the representation is canonical and equality is
/// componentwise. This is the number type for all distances and chain
/// lengths: it is closed under +, -, * and (for nonzero values) division.
class ExactLength {
 public:
  ExactLength() = default;
  ExactLength(const Rat& r);  // NOLINT(google-explicit-constructor)
  ExactLength(long v);        // NOLINT(google-explicit-constructor)

  /// sqrt(r) for rational r >= 0, in canonical radical form.
  static ExactLength sqrt_rational(const Rat& r);
  /// c * sqrt(s); s need not be squarefree.
  static ExactLength radical(const Rat& coeff, const Int& radicand);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Value as a rational; requires is_rational().
  Rat as_rational() const;

  /// Exact sign: -1, 0 or +1. Nonzero values are bounded away from zero,
  /// so interval refinement terminates.
  int sign() const;

  ExactLength operator-() const;
  ExactLength& operator+=(const ExactLength& o);
  ExactLength& operator-=(const ExactLength& o);
  friend ExactLength operator+(ExactLength a, const ExactLength& b) { return a += b; }
  friend ExactLength operator-(ExactLength a, const ExactLength& b) { return a -= b; }
  friend ExactLength operator*(const ExactLength& a, const ExactLength& b);
  ExactLength& operator*=(const ExactLength& o) { return *this = *this * o; }

  /// Multiplicative inverse; throws std::domain_error on zero.
  ExactLength inverse() const;
  friend ExactLength operator/(const ExactLength& a, const ExactLength& b) {
    return a * b.inverse();
  }

  /// Square root when it lies in the same radical ring: handles rational
  /// values and quadratic values a + b*sqrt(s). Returns nullopt otherwise.
  std::optional<ExactLength> sqrt() const;

  bool operator==(const ExactLength& o) const { return terms_ == o.terms_; }
  bool operator!=(const ExactLength& o) const { return terms_ != o.terms_; }
  bool operator<(const ExactLength& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const ExactLength& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const ExactLength& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const ExactLength& o) const { return (*this - o).sign() >= 0; }

  double approx() const;
  std::string str() const;

  const std::map<Int, Rat>& terms() const { return terms_; }

 private:
  void add_term(const Int& radicand, const Rat& coeff);
  std::map<Int, Rat> terms_;
};

}  // namespace mag
