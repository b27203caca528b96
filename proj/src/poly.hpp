#pragma once

// Dense univariate polynomials over Q, coefficient i multiplies t^i.
// Internal helper for the binary-form code paths.

#include <vector>

#include "tensorlab/scalar.hpp"

namespace tensorlab::poly {

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

/// -1 for the zero polynomial.
inline long degree(Poly p) {
  trim(p);
  return static_cast<long>(p.size()) - 1;
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

inline Poly remainder(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// p / (t - root), assuming root is a root.
inline Poly divide_linear(const Poly& p, const Rational& root) {
  if (p.size() < 2) return {};
  Poly q(p.size() - 1);
  Rational carry = 0;
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = carry * root + p[i];
    q[i - 1] = carry;
  }
  return q;
}

}  // namespace tensorlab::poly
