#pragma once

// Scalar rings: exact rationals (GMP), prime fields F_p with p < 2^16, and
// finite doubles. Every container carries a ring value so that F_p elements
// can be created without an existing element to copy the modulus from.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace tensorlab {

using Rational = mpq_class;
using Integer = mpz_class;

/// Element of F_p. The modulus travels with the value; mixing moduli throws.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }
  Fp inverse() const;

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  Fp& operator/=(const Fp& o);
  Fp operator-() const;

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  void check_same(const Fp& o) const;

  std::uint32_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

struct RationalRing {
  using value_type = Rational;
  Rational from_int(std::int64_t n) const { return Rational(static_cast<long>(n)); }
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  std::string tag() const { return "rational"; }
  friend bool operator==(const RationalRing&, const RationalRing&) = default;
};

struct PrimeRing {
  using value_type = Fp;
  static constexpr std::uint32_t kDefaultModulus = 101;

  PrimeRing() = default;
  /// Throws std::invalid_argument unless p is a prime below 2^16.
  explicit PrimeRing(std::uint32_t p);

  std::uint32_t modulus() const { return p; }
  Fp from_int(std::int64_t n) const { return Fp(n, p); }
  Fp zero() const { return Fp(0, p); }
  Fp one() const { return Fp(1, p); }
  std::string tag() const { return "fp " + std::to_string(p); }
  friend bool operator==(const PrimeRing&, const PrimeRing&) = default;

  std::uint32_t p = kDefaultModulus;
};

struct FloatRing {
  using value_type = double;
  double from_int(std::int64_t n) const { return static_cast<double>(n); }
  double zero() const { return 0.0; }
  double one() const { return 1.0; }
  std::string tag() const { return "float"; }
  friend bool operator==(const FloatRing&, const FloatRing&) = default;
};

template <class T>
struct ring_for;
template <>
struct ring_for<Rational> {
  using type = RationalRing;
};
template <>
struct ring_for<Fp> {
  using type = PrimeRing;
};
template <>
struct ring_for<double> {
  using type = FloatRing;
};
template <class T>
using ring_t = typename ring_for<T>::type;

template <class T>
concept ExactScalar = std::same_as<T, Rational> || std::same_as<T, Fp>;

template <class T>
concept Scalar = ExactScalar<T> || std::same_as<T, double>;

bool is_prime(std::uint32_t n);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Fp& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);
std::string to_string(const Fp& x);
/// Round-trippable shortest-exact form ("%.17g").
std::string to_string(double x);

/// Accepts "p/q" or an integer; result is canonicalized. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Image of a rational in F_p. Throws if p divides the denominator.
Fp to_fp(const Rational& x, const PrimeRing& ring);

template <class T>
T convert_scalar(const Rational& x, const ring_t<T>& ring);
template <>
inline Rational convert_scalar<Rational>(const Rational& x, const RationalRing&) {
  return x;
}
template <>
inline Fp convert_scalar<Fp>(const Rational& x, const PrimeRing& ring) {
  return to_fp(x, ring);
}
template <>
inline double convert_scalar<double>(const Rational& x, const FloatRing&) {
  return x.get_d();
}

}  // namespace tensorlab
