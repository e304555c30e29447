#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace catalania {

using BigInt = mpz_class;

/// Exact rational number, always stored reduced with a positive denominator.
///
/// Equality is structural: two values compare equal iff their canonical
/// numerator and denominator agree.
class Rat {
public:
  Rat() = default;
  Rat(std::int64_t value);  // NOLINT(google-explicit-constructor)
  explicit Rat(const BigInt& value);
  Rat(const BigInt& num, const BigInt& den);

  /// Parses "p", "-p" or "p/q" (decimal digits only). Throws
  /// std::invalid_argument on malformed input or a zero denominator.
  static Rat parse(std::string_view text);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// "num/den", or "num" when den = 1.
  std::string str() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& rhs);
  Rat& operator-=(const Rat& rhs);
  Rat& operator*=(const Rat& rhs);
  Rat& operator/=(const Rat& rhs);

  friend Rat operator+(Rat lhs, const Rat& rhs) { return lhs += rhs; }
  friend Rat operator-(Rat lhs, const Rat& rhs) { return lhs -= rhs; }
  friend Rat operator*(Rat lhs, const Rat& rhs) { return lhs *= rhs; }
  friend Rat operator/(Rat lhs, const Rat& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  explicit Rat(mpq_class value) : value_(std::move(value)) {}

  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline Rat to_rat(std::size_t n) { return Rat(BigInt(static_cast<unsigned long>(n))); }

/// (-1)^k as a rational.
Rat sign_power(std::size_t k);

/// x^k for a natural exponent; x^0 = 1 (including 0^0).
Rat power(const Rat& x, std::size_t k);

BigInt factorial(std::size_t k);

/// Generalized binomial coefficient x(x-1)...(x-k+1)/k!, with binom(x, 0) = 1.
Rat binom(const Rat& x, std::size_t k);

/// Product binom(x, m_1) binom(x - m_1, m_2) ... over the explicit parts; the
/// implicit last part x - sum(m_i) contributes no factor. Empty parts give 1.
Rat multinomial(const Rat& x, std::span<const std::size_t> parts);

/// Kronecker delta_{0n}.
Rat kronecker(std::size_t n);

}  // namespace catalania
