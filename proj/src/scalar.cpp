#include "tensorlab/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tensorlab {

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Fp::Fp(std::int64_t value, std::uint32_t modulus) : modulus_(modulus) {
  if (modulus < 2) throw std::invalid_argument("Fp: modulus must be at least 2");
  value_ = reduce(value, modulus);
}

void Fp::check_same(const Fp& o) const {
  if (modulus_ != o.modulus_) {
    throw std::invalid_argument("Fp: mixed moduli " + std::to_string(modulus_) + " and " +
                                std::to_string(o.modulus_));
  }
}

Fp& Fp::operator+=(const Fp& o) {
  check_same(o);
  value_ = (value_ + o.value_) % modulus_;
  return *this;
}

Fp& Fp::operator-=(const Fp& o) {
  check_same(o);
  value_ = (value_ + modulus_ - o.value_) % modulus_;
  return *this;
}

Fp& Fp::operator*=(const Fp& o) {
  check_same(o);
  value_ = static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(value_) * o.value_) % modulus_);
  return *this;
}

Fp& Fp::operator/=(const Fp& o) {
  check_same(o);
  return *this *= o.inverse();
}

Fp Fp::operator-() const {
  Fp r = *this;
  r.value_ = (modulus_ - value_) % modulus_;
  return r;
}

Fp Fp::inverse() const {
  if (value_ == 0) throw std::domain_error("Fp: inverse of zero");
  // Extended Euclid; modulus is prime so gcd is 1.
  std::int64_t a = value_, b = modulus_, x0 = 1, x1 = 0;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(x0, modulus_);
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeRing::PrimeRing(std::uint32_t modulus) : p(modulus) {
  if (modulus >= (1u << 16) || !is_prime(modulus)) {
    throw std::invalid_argument("prime field modulus must be a prime below 65536, got " +
                                std::to_string(modulus));
  }
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Fp& x) { return std::to_string(x.value()); }

std::string to_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  auto to_mpz = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                          : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer d = to_mpz(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(to_mpz(num), d);
  r.canonicalize();
  return r;
}

Fp to_fp(const Rational& x, const PrimeRing& ring) {
  const unsigned long p = ring.modulus();
  Integer num = x.get_num() % p;
  Integer den = x.get_den() % p;
  if (den == 0) {
    throw std::domain_error("rational " + to_string(x) + " has no image in F_" +
                            std::to_string(p));
  }
  return Fp(num.get_si(), ring.modulus()) / Fp(den.get_si(), ring.modulus());
}

}  // namespace tensorlab
