#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catalania/counting.hpp"
#include "catalania/exact.hpp"

namespace catalania {

enum class IdentityId {
  Eq1,           // Catalan alternating sum equals delta_{0n}
  Eq2,           // generalized alternating sum, rational grid
  Eq3,           // vector alternating sum
  Eq4,           // reindexed sum, cross-checked against the involution and Riordan rows
  Eq5,           // Riordan array theorem on the binomial family
  Eq6,           // modified Riordan array theorem on the binomial family
  Eq7,           // C_{beta,gamma}(x(1-x)^(beta-1)) = (1-x)^(-gamma)
  Eq8,           // C_{beta,a1+a2} = C_{beta,a1} C_{beta,a2}
  Eq9Roundtrip,  // Gould inverse pair
  Eq10,          // Catalan numbers recovered through the inverse relation
  ClosedForm,    // the alpha = 0 reduction chain
};

std::string to_string(IdentityId id);

struct Counterexample {
  std::vector<std::pair<std::string, std::string>> params;
  std::string lhs;
  std::string rhs;
  std::string note;
};

struct IdentityReport {
  IdentityId id = IdentityId::Eq2;
  std::string grid;
  std::size_t checked = 0;
  std::vector<std::string> skipped;  // singular parameter points
  std::optional<Counterexample> failure;

  bool passed() const { return !failure.has_value(); }
};

/// Override for catalan_gen inside the summation identities (fault injection).
using CatalanFn = std::function<Rat(std::size_t, const Rat&, const Rat&)>;

/// sum_i (-1)^(n-i) binom((beta-1) i + alpha, n-i) C_{beta,gamma}(i)
Rat eq2_lhs(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n,
            const CatalanFn& catalan = nullptr);
/// The same sum reindexed by i -> n - i.
Rat eq4_lhs(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n,
            const CatalanFn& catalan = nullptr);
/// (-1)^n binom(alpha - gamma, n)
Rat eq2_rhs(const Rat& alpha, const Rat& gamma, std::size_t n);

IdentityReport verify_eq1(std::size_t n_max, const CatalanFn& catalan = nullptr);
IdentityReport verify_eq2(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n_max,
                          const CatalanFn& catalan = nullptr);

/// Both sides of the vector identity at the count vector `n`.
Rat eq3_lhs(const VecProfile& n, std::size_t gamma, const Rat& alpha);
Rat eq3_rhs(const VecProfile& n, std::size_t gamma, const Rat& alpha);

/// Checks every count vector with total at most n_max_total for the
/// profile's outdegrees (the profile's own counts are ignored).
IdentityReport verify_eq3(const VecProfile& profile, std::size_t gamma, const Rat& alpha,
                          std::size_t n_max_total);

/// Parameters of the inverse pair
///   b_n = sum_k binom(m + a k, n - k) z^(n-k) a_k
///   a_n = sum_k (-a k - m)/(-a n - m) binom(-a n - m, n - k) z^(n-k) b_k
struct GouldPair {
  Rat a;
  Rat m;
  Rat z;
};

class SingularParameterError : public std::domain_error {
public:
  SingularParameterError(const std::string& what, std::size_t index);
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

std::vector<Rat> gould_forward(const std::vector<Rat>& seq_a, const GouldPair& p);

/// Throws SingularParameterError at the first 1 <= n < length with
/// -a n - m = 0. The k = n coefficient is 1, so n = 0 never divides.
std::vector<Rat> gould_backward(const std::vector<Rat>& seq_b, const GouldPair& p);

/// First n in [1, length) where gould_backward would divide by zero.
std::optional<std::size_t> gould_singular_index(const GouldPair& p, std::size_t length);

/// Right-hand side of the inverse-relation formula for C_{beta,gamma}(n);
/// std::nullopt when (1 - beta) n - alpha = 0.
std::optional<Rat> eq10_rhs(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n);

IdentityReport verify_eq10(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n_max);

IdentityReport closed_form_reduction_check(const Rat& beta, const Rat& gamma, std::size_t n_max);

/// A parameter axis: an explicit value list, remembered with how it was
/// written for report grids.
struct ParamRange {
  std::vector<Rat> values;
  std::string text;

  static ParamRange interval(const Rat& from, const Rat& to, const Rat& step = Rat(1));
  static ParamRange list(std::vector<Rat> values);
};

struct Eq1Grid {
  std::size_t n_max = 12;
};
struct Eq2Grid {
  ParamRange alpha, beta, gamma;
  std::size_t n_max = 12;
};
struct Eq3Grid {
  std::vector<std::vector<std::size_t>> outdegree_sets;
  ParamRange gamma;  // naturals
  ParamRange alpha;
  std::size_t n_max_total = 4;
  /// Vectors with total at most this are also checked by enumerating the
  /// colored structures, when alpha is an integer >= gamma >= 1.
  std::size_t enumerate_max_total = 3;
  /// Offsets alpha - gamma used for the enumeration cross-check.
  ParamRange enumerate_alpha_offset;
};
/// Naturals: beta >= 1, gamma >= 1, alpha = gamma + offset.
struct Eq4Grid {
  ParamRange beta, gamma, alpha_offset;
  std::size_t n_max = 4;
};
struct RiordanGrid {
  ParamRange alpha, beta, gamma;
  std::size_t order = 15;
};
struct Eq7Grid {
  ParamRange beta, gamma;
  std::size_t order = 20;
};
struct Eq8Grid {
  ParamRange beta, a1, a2;
  std::size_t order = 15;
};
struct Eq9Grid {
  ParamRange a, m, z;
  std::size_t sequences = 20;
  std::size_t length = 10;
  std::uint64_t seed = 20070101;
};
struct Eq10Grid {
  ParamRange alpha, beta, gamma;
  std::size_t n_max = 10;
};
struct ClosedFormGrid {
  ParamRange beta, gamma;
  std::size_t n_max = 10;
};

struct SuiteConfig {
  std::optional<Eq1Grid> eq1;
  std::optional<Eq2Grid> eq2;
  std::optional<Eq3Grid> eq3;
  std::optional<Eq4Grid> eq4;
  std::optional<RiordanGrid> riordan;  // yields the Eq5 and Eq6 reports
  std::optional<Eq7Grid> eq7;
  std::optional<Eq8Grid> eq8;
  std::optional<Eq9Grid> eq9;
  std::optional<Eq10Grid> eq10;
  std::optional<ClosedFormGrid> closed_form;
  CatalanFn catalan_override;  // test hook for Eq1/Eq2
  std::uint64_t max_structs = 5'000'000;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The grids the acceptance criteria call for.
SuiteConfig default_suite_config();
nlohmann::json default_suite_config_json();

/// Throws ConfigError on unknown sections, malformed ranges or bad types.
SuiteConfig parse_suite_config(const nlohmann::json& j);

/// Runs every configured section; report order is fixed (Eq1 ... ClosedForm)
/// regardless of how sections are scheduled.
std::vector<IdentityReport> run_suite(const SuiteConfig& config);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const std::vector<IdentityReport>& reports);

}  // namespace catalania
