#pragma once

#include <cstddef>
#include <vector>

#include "catalania/exact.hpp"

namespace catalania {

/// Formal power series over Rat known through x^order.
///
/// Results of binary operations carry the smaller order of their operands;
/// equality compares coefficients up to the common order.
class Series {
public:
  /// The zero series of the given order.
  explicit Series(std::size_t order);
  /// Coefficients [x^0..x^order]; throws std::invalid_argument if empty.
  explicit Series(std::vector<Rat> coeffs);

  static Series constant(const Rat& c, std::size_t order);
  /// The series x (order >= 1 keeps the linear coefficient).
  static Series identity(std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  const Rat& operator[](std::size_t k) const { return coeffs_.at(k); }

  Series truncated(std::size_t order) const;

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  Series operator-() const;
  Series scaled(const Rat& c) const;

  friend bool operator==(const Series& a, const Series& b);

private:
  std::vector<Rat> coeffs_;
};

Series series_add(const Series& a, const Series& b);
Series series_mul(const Series& a, const Series& b);
Series series_neg(const Series& a);

/// (1 - x)^exponent: [x^n] = (-1)^n binom(exponent, n).
Series series_binpow(const Rat& exponent, std::size_t order);

/// a^k for natural k (a^0 = 1 at a's order).
Series series_pow(const Series& a, std::size_t k);

/// outer(inner(x)); inner must have zero constant term.
Series series_compose(const Series& outer, const Series& inner);

/// Formal derivative; the result's order is one less. Throws
/// std::invalid_argument for an order-0 series, whose derivative has no
/// known coefficient.
Series series_derivative(const Series& a);

/// a / b for a unit b (b(0) != 0); throws std::domain_error otherwise.
Series series_div_unit(const Series& a, const Series& b);

/// a / x for a with zero constant term; the order drops by one.
Series series_shift_down(const Series& a);

/// Column k of [g, f] has generating function g f^k.
struct RiordanArray {
  Series g;
  Series f;

  /// Throws std::invalid_argument unless g(0) != 0, f(0) = 0 and [x^1]f != 0.
  RiordanArray(Series g, Series f);

  std::size_t order() const;
};

/// g = (1-x)^alpha, f = x(1-x)^(beta-1).
RiordanArray binomial_family(const Rat& alpha, const Rat& beta, std::size_t order);

/// [x^n] g f^k; zero for k > n. Throws std::out_of_range if n > R.order().
Rat riordan_entry(const RiordanArray& r, std::size_t n, std::size_t k);

/// Rows 0..rows-1 of the lower-triangular matrix (row n has n+1 entries).
std::vector<std::vector<Rat>> riordan_rows(const RiordanArray& r, std::size_t rows);

/// Both sides of the Riordan array theorem, up to the common order N.
struct RiordanCheck {
  bool sum_form = false;  // sum_k [g,f]_{n,k} a_k = l_n for n <= N
  bool gf_form = false;   // g A(f) = L up to x^N
  std::size_t order = 0;

  bool holds() const { return sum_form && gf_form; }
  /// The theorem says the two forms are equivalent.
  bool consistent() const { return sum_form == gf_form; }
};

RiordanCheck riordan_theorem_details(const RiordanArray& r, const Series& a, const Series& l);
bool riordan_theorem_check(const RiordanArray& r, const Series& a, const Series& l);

/// n [x^n] A = [x^(n-1)] (x/f)^n (L/g)' for 1 <= n <= N, and a_0 = L(0)/g(0).
bool modified_riordan_check(const RiordanArray& r, const Series& a, const Series& l);

/// Coefficients catalan_gen(n, beta, gamma) for n <= order.
Series catalan_gf(const Rat& beta, const Rat& gamma, std::size_t order);

/// C_{beta,a1+a2}(x) = C_{beta,a1}(x) C_{beta,a2}(x) through x^n_max.
bool convolution_check(const Rat& beta, const Rat& a1, const Rat& a2, std::size_t n_max);

/// C_{beta,gamma}(x(1-x)^(beta-1)) = (1-x)^(-gamma) through x^order.
bool implicit_gf_check(const Rat& beta, const Rat& gamma, std::size_t order);

}  // namespace catalania
