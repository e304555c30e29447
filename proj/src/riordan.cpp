#include "catalania/riordan.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "catalania/counting.hpp"

namespace catalania {

Series::Series(std::size_t order) : coeffs_(order + 1, Rat(0)) {}

Series::Series(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
}

Series Series::constant(const Rat& c, std::size_t order) {
  Series s(order);
  s.coeffs_[0] = c;
  return s;
}

Series Series::identity(std::size_t order) {
  Series s(order);
  if (order >= 1) s.coeffs_[1] = Rat(1);
  return s;
}

Series Series::truncated(std::size_t order) const {
  if (order > this->order()) throw std::invalid_argument("cannot extend a truncated series");
  return Series(std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
}

Series operator+(const Series& a, const Series& b) {
  Series out(std::min(a.order(), b.order()));
  for (std::size_t k = 0; k <= out.order(); ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
  return out;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  Series out(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= out.order(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= out.order(); ++j) {
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

Series Series::operator-() const { return scaled(Rat(-1)); }

Series Series::scaled(const Rat& c) const {
  Series out = *this;
  for (Rat& x : out.coeffs_) x *= c;
  return out;
}

bool operator==(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.order(), b.order());
  return std::equal(a.coeffs_.begin(), a.coeffs_.begin() + static_cast<std::ptrdiff_t>(n + 1),
                    b.coeffs_.begin());
}

Series series_add(const Series& a, const Series& b) { return a + b; }
Series series_mul(const Series& a, const Series& b) { return a * b; }
Series series_neg(const Series& a) { return -a; }

Series series_binpow(const Rat& exponent, std::size_t order) {
  std::vector<Rat> c;
  c.reserve(order + 1);
  for (std::size_t n = 0; n <= order; ++n) c.push_back(sign_power(n) * binom(exponent, n));
  return Series(std::move(c));
}

Series series_pow(const Series& a, std::size_t k) {
  Series result = Series::constant(Rat(1), a.order());
  Series base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

Series series_compose(const Series& outer, const Series& inner) {
  if (!inner[0].is_zero()) throw std::invalid_argument("inner series must have zero constant term");
  const std::size_t order = std::min(outer.order(), inner.order());
  Series result = Series::constant(outer[order], order);
  for (std::size_t k = order; k-- > 0;) {
    result = result * inner + Series::constant(outer[k], order);
  }
  return result;
}

Series series_derivative(const Series& a) {
  if (a.order() == 0) throw std::invalid_argument("derivative of an order-0 series is unknown");
  std::vector<Rat> c;
  c.reserve(a.order());
  for (std::size_t k = 1; k <= a.order(); ++k) c.push_back(a[k] * to_rat(k));
  return Series(std::move(c));
}

Series series_div_unit(const Series& a, const Series& b) {
  if (b[0].is_zero()) throw std::domain_error("divisor is not a unit (zero constant term)");
  const std::size_t order = std::min(a.order(), b.order());
  std::vector<Rat> q(order + 1, Rat(0));
  const Rat inv = Rat(1) / b[0];
  for (std::size_t n = 0; n <= order; ++n) {
    Rat acc = a[n];
    for (std::size_t k = 1; k <= n; ++k) acc -= b[k] * q[n - k];
    q[n] = acc * inv;
  }
  return Series(std::move(q));
}

Series series_shift_down(const Series& a) {
  if (!a[0].is_zero()) throw std::invalid_argument("series has a nonzero constant term");
  if (a.order() == 0) throw std::invalid_argument("cannot shift an order-0 series");
  return Series(std::vector<Rat>(a.coeffs().begin() + 1, a.coeffs().end()));
}

RiordanArray::RiordanArray(Series g_in, Series f_in) : g(std::move(g_in)), f(std::move(f_in)) {
  if (g[0].is_zero()) throw std::invalid_argument("Riordan array needs g(0) != 0");
  if (!f[0].is_zero()) throw std::invalid_argument("Riordan array needs f(0) = 0");
  if (f.order() < 1 || f[1].is_zero()) throw std::invalid_argument("Riordan array needs [x]f != 0");
}

std::size_t RiordanArray::order() const { return std::min(g.order(), f.order()); }

RiordanArray binomial_family(const Rat& alpha, const Rat& beta, std::size_t order) {
  const Series f = Series::identity(order) * series_binpow(beta - Rat(1), order);
  return RiordanArray(series_binpow(alpha, order), f);
}

Rat riordan_entry(const RiordanArray& r, std::size_t n, std::size_t k) {
  if (n > r.order()) throw std::out_of_range("row index exceeds the array's order");
  if (k > n) return Rat(0);
  const Series column = r.g.truncated(n) * series_pow(r.f.truncated(n), k);
  return column[n];
}

std::vector<std::vector<Rat>> riordan_rows(const RiordanArray& r, std::size_t rows) {
  if (rows == 0) return {};
  const std::size_t last = rows - 1;
  if (last > r.order()) throw std::out_of_range("row index exceeds the array's order");
  std::vector<std::vector<Rat>> out(rows);
  for (std::size_t n = 0; n < rows; ++n) out[n].resize(n + 1, Rat(0));
  Series column = r.g.truncated(last);
  const Series f = r.f.truncated(last);
  for (std::size_t k = 0; k <= last; ++k) {
    for (std::size_t n = k; n <= last; ++n) out[n][k] = column[n];
    column = column * f;
  }
  return out;
}

RiordanCheck riordan_theorem_details(const RiordanArray& r, const Series& a, const Series& l) {
  RiordanCheck check;
  check.order = std::min({r.order(), a.order(), l.order()});
  const auto rows = riordan_rows(r, check.order + 1);
  check.sum_form = true;
  for (std::size_t n = 0; n <= check.order; ++n) {
    Rat sum(0);
    for (std::size_t k = 0; k <= n; ++k) sum += rows[n][k] * a[k];
    if (sum != l[n]) {
      check.sum_form = false;
      break;
    }
  }
  const Series lhs = r.g.truncated(check.order) * series_compose(a.truncated(check.order), r.f.truncated(check.order));
  check.gf_form = lhs == l.truncated(check.order);
  return check;
}

bool riordan_theorem_check(const RiordanArray& r, const Series& a, const Series& l) {
  return riordan_theorem_details(r, a, l).holds();
}

bool modified_riordan_check(const RiordanArray& r, const Series& a, const Series& l) {
  if (a[0] != l[0] / r.g[0]) return false;
  const std::size_t order = std::min({r.order(), a.order(), l.order()});
  if (order == 0) return true;
  const Series x_over_f = series_div_unit(Series::constant(Rat(1), order - 1), series_shift_down(r.f.truncated(order)));
  const Series ratio_prime = series_derivative(series_div_unit(l.truncated(order), r.g.truncated(order)));
  Series power = Series::constant(Rat(1), order - 1);
  for (std::size_t n = 1; n <= order; ++n) {
    power = power * x_over_f;
    const Rat rhs = (power * ratio_prime)[n - 1];
    if (to_rat(n) * a[n] != rhs) return false;
  }
  return true;
}

Series catalan_gf(const Rat& beta, const Rat& gamma, std::size_t order) {
  return Series(catalan_sequence(beta, gamma, order));
}

bool convolution_check(const Rat& beta, const Rat& a1, const Rat& a2, std::size_t n_max) {
  return catalan_gf(beta, a1 + a2, n_max) == catalan_gf(beta, a1, n_max) * catalan_gf(beta, a2, n_max);
}

bool implicit_gf_check(const Rat& beta, const Rat& gamma, std::size_t order) {
  const Series inner = Series::identity(order) * series_binpow(beta - Rat(1), order);
  return series_compose(catalan_gf(beta, gamma, order), inner) == series_binpow(-gamma, order);
}

}  // namespace catalania
