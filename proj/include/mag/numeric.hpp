#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace mag {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const Rat& r) { return r.sign(); }
inline int sign_of(const Int& n) { return n.sign(); }

/// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
Rat parse_rational(const std::string& s);

/// Renders as "p/q", or "p" when the denominator is 1.
std::string rational_to_string(const Rat& r);

/// Floor of the integer square root (n >= 0).
Int isqrt(const Int& n);

/// Writes n = f^2 * s with s squarefree; returns (f, s).
/// Throws std::overflow_error when n is too large to factor by trial division.
std::pair<Int, Int> squarefree_decompose(Int n);

double rat_to_double(const Rat& r);

}  // namespace mag
