#include "catalania/exact.hpp"

#include <cctype>
#include <ostream>

namespace catalania {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat::Rat(std::int64_t value) : value_(static_cast<long>(value)) {}

Rat::Rat(const BigInt& value) : value_(value) {}

Rat::Rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_part = body.substr(0, slash);
  const std::string_view den_part =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num_part) || !all_digits(den_part)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt num(std::string(num_part), 10);
  BigInt den(std::string(den_part), 10);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  if (negative) num = -num;
  return Rat(num, den);
}

std::string Rat::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rat Rat::operator-() const { return Rat(mpq_class(-value_)); }

Rat& Rat::operator+=(const Rat& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rat& Rat::operator-=(const Rat& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rat& Rat::operator*=(const Rat& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rat& Rat::operator/=(const Rat& rhs) {
  if (rhs.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat sign_power(std::size_t k) { return k % 2 == 0 ? Rat(1) : Rat(-1); }

Rat power(const Rat& x, std::size_t k) {
  Rat result(1);
  Rat base = x;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

BigInt factorial(std::size_t k) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), k);
  return result;
}

Rat binom(const Rat& x, std::size_t k) {
  if (k == 0) return Rat(1);
  // x = p/q: prod_{i<k} (p - i q) / (q^k k!)
  const BigInt p = x.num();
  const BigInt q = x.den();
  BigInt numer = 1;
  BigInt term = p;
  for (std::size_t i = 0; i < k; ++i) {
    numer *= term;
    if (numer == 0) return Rat(0);
    term -= q;
  }
  BigInt q_pow;
  mpz_pow_ui(q_pow.get_mpz_t(), q.get_mpz_t(), k);
  return Rat(numer, q_pow * factorial(k));
}

Rat multinomial(const Rat& x, std::span<const std::size_t> parts) {
  Rat result(1);
  Rat top = x;
  for (std::size_t m : parts) {
    result *= binom(top, m);
    if (result.is_zero()) return result;
    top -= to_rat(m);
  }
  return result;
}

Rat kronecker(std::size_t n) { return n == 0 ? Rat(1) : Rat(0); }

}  // namespace catalania
