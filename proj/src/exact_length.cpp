#include "mag/exact_length.hpp"

#include <sstream>

namespace mag {

Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw std::invalid_argument("malformed rational literal: " + s);
  }
  try {
    Rat r(s);
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

std::string rational_to_string(const Rat& r) {
  std::ostringstream os;
  os << rat_num(r);
  if (rat_den(r) != 1) os << "/" << rat_den(r);
  return os.str();
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

std::pair<Int, Int> squarefree_decompose(Int n) {
  if (n <= 0) throw std::domain_error("squarefree_decompose needs n > 0");
  // Trial division; radicands in this workbench come from desk-scale data.
  static const Int kLimit = Int(1) << 50;
  Int f = 1, s = 1;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int mult = 0;
    while (n % d == 0) {
      n /= d;
      ++mult;
    }
    for (int i = 0; i < mult / 2; ++i) f *= d;
    if (mult % 2) s *= d;
    if (d > kLimit) throw std::overflow_error("radicand too large to factor");
  }
  s *= n;  // leftover prime
  return {f, s};
}

double rat_to_double(const Rat& r) { return static_cast<double>(r); }

ExactLength::ExactLength(const Rat& r) {
  if (r != 0) terms_[1] = r;
}

ExactLength::ExactLength(long v) {
  if (v != 0) terms_[1] = Rat(v);
}

ExactLength ExactLength::radical(const Rat& coeff, const Int& radicand) {
  ExactLength e;
  if (coeff == 0) return e;
  auto [f, s] = squarefree_decompose(radicand);
  e.add_term(s, coeff * Rat(f));
  return e;
}

ExactLength ExactLength::sqrt_rational(const Rat& r) {
  if (r < 0) throw std::domain_error("sqrt of negative rational");
  if (r == 0) return ExactLength();
  // sqrt(p/q) = sqrt(p*q)/q
  Int p = rat_num(r), q = rat_den(r);
  return radical(Rat(1, q), p * q);
}

bool ExactLength::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rat ExactLength::as_rational() const {
  if (terms_.empty()) return Rat(0);
  if (!is_rational()) throw std::domain_error("value is irrational: " + str());
  return terms_.begin()->second;
}

void ExactLength::add_term(const Int& radicand, const Rat& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(radicand);
  if (it == terms_.end()) {
    terms_.emplace(radicand, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

ExactLength ExactLength::operator-() const {
  ExactLength e;
  for (const auto& [s, c] : terms_) e.terms_[s] = -c;
  return e;
}

ExactLength& ExactLength::operator+=(const ExactLength& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

ExactLength& ExactLength::operator-=(const ExactLength& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  return *this;
}

ExactLength operator*(const ExactLength& a, const ExactLength& b) {
  ExactLength e;
  for (const auto& [s, cs] : a.terms_) {
    for (const auto& [t, ct] : b.terms_) {
      // sqrt(s)*sqrt(t) = g*sqrt((s/g)*(t/g)) with g = gcd(s,t);
      // the product of the coprime squarefree parts is squarefree.
      Int g = boost::multiprecision::gcd(s, t);
      e.add_term((s / g) * (t / g), cs * ct * Rat(g));
    }
  }
  return e;
}

int ExactLength::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return terms_.begin()->second.sign();
  bool all_pos = true, all_neg = true;
  for (const auto& [s, c] : terms_) (c > 0 ? all_neg : all_pos) = false;
  if (all_pos) return 1;
  if (all_neg) return -1;
  // Mixed signs: rational interval refinement. The value is nonzero by
  // linear independence of square roots of distinct squarefree integers,
  // so the interval eventually excludes zero.
  for (unsigned k = 16;; k *= 2) {
    Int scale = Int(1) << k;
    Rat lo(0), hi(0);
    for (const auto& [s, c] : terms_) {
      Int a = isqrt(s * scale * scale);  // a <= sqrt(s)*2^k < a+1
      Rat rl(a, scale), rh(a + 1, scale);
      if (c > 0) {
        lo += c * rl;
        hi += c * rh;
      } else {
        lo += c * rh;
        hi += c * rl;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
}

ExactLength ExactLength::inverse() const {
  if (terms_.empty()) throw std::domain_error("division by zero");
  if (is_rational()) {
    ExactLength e;
    e.terms_[1] = Rat(1) / terms_.begin()->second;
    return e;
  }
  if (terms_.size() == 1) {
    // (c*sqrt(s))^-1 = sqrt(s)/(c*s)
    const auto& [s, c] = *terms_.begin();
    ExactLength e;
    e.terms_[s] = Rat(1) / (c * Rat(s));
    return e;
  }
  // Pick a prime p dividing some radicand and write this = A + sqrt(p)*B
  // where no radicand of A or B is divisible by p. Then
  //   1/(A + sqrt(p) B) = (A - sqrt(p) B) / (A^2 - p B^2),
  // and the denominator involves strictly fewer primes; recurse.
  Int p = 0;
  for (const auto& [s, c] : terms_) {
    if (s == 1) continue;
    for (Int d = 2; d * d <= s; ++d) {
      if (s % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) p = s;
    break;
  }
  ExactLength a, b;
  for (const auto& [s, c] : terms_) {
    if (s % p == 0)
      b.add_term(s / p, c);
    else
      a.add_term(s, c);
  }
  ExactLength sqrt_p = radical(1, p);
  ExactLength denom = a * a - ExactLength(Rat(p)) * b * b;
  return (a - sqrt_p * b) * denom.inverse();
}

std::optional<ExactLength> ExactLength::sqrt() const {
  if (sign() < 0) return std::nullopt;
  if (terms_.empty()) return ExactLength();
  if (is_rational()) return sqrt_rational(as_rational());
  if (terms_.size() > 2) return std::nullopt;
  // Quadratic case A + B*sqrt(s): try u + v*sqrt(s).
  auto it = terms_.begin();
  Rat a(0), b;
  Int s;
  if (it->first == 1) {
    a = it->second;
    ++it;
    s = it->first;
    b = it->second;
  } else if (terms_.size() == 1) {
    return std::nullopt;  // pure radical: sqrt leaves the ring
  } else {
    return std::nullopt;  // two irrational terms
  }
  // u^2 + s v^2 = a, 2uv = b  =>  u^2 solves z^2 - a z + s b^2/4 = 0.
  Rat disc = a * a - Rat(s) * b * b;
  if (disc < 0) return std::nullopt;
  ExactLength d = sqrt_rational(disc);
  if (!d.is_rational()) return std::nullopt;
  Rat droot = d.as_rational();
  for (int which : {0, 1}) {
    Rat u2 = (a + (which ? -droot : droot)) / 2;
    if (u2 <= 0) continue;
    // Root is sqrt(u2) + (b/2) sqrt(s/u2): squaring gives
    // u2 + s b^2/(4 u2) + b sqrt(s), and the quadratic for u2 makes the
    // rational part equal a. Both summands stay in the radical field even
    // when u2 is not a perfect square (e.g. sqrt(5 + 2 sqrt(6))).
    ExactLength res = sqrt_rational(u2) + ExactLength(b / 2) * sqrt_rational(Rat(s) / u2);
    if (res.sign() < 0) res = -res;
    if (res * res == *this) return res;
  }
  return std::nullopt;
}

double ExactLength::approx() const {
  double v = 0;
  for (const auto& [s, c] : terms_) v += rat_to_double(c) * std::sqrt(static_cast<double>(s));
  return v;
}

std::string ExactLength::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    Rat cc = c;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) cc = -c;
    }
    if (s == 1) {
      os << rational_to_string(cc);
    } else {
      if (cc != 1) os << rational_to_string(cc) << "*";
      os << "sqrt(" << s << ")";
    }
    first = false;
  }
  return os.str();
}

}  // namespace mag
