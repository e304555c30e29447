#include "catalania/identities.hpp"

#include <future>
#include <sstream>

#include "catalania/involution.hpp"
#include "catalania/riordan.hpp"

namespace catalania {

namespace {

using Json = nlohmann::json;

Rat catalan_of(const CatalanFn& hook, std::size_t n, const Rat& beta, const Rat& gamma) {
  return hook ? hook(n, beta, gamma) : catalan_gen(n, beta, gamma);
}

std::string join_counts(const std::vector<std::size_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

// Records a failure once; later mismatches in the same report are ignored so
// the counterexample stays the first one in grid order.
void fail(IdentityReport& r, std::vector<std::pair<std::string, std::string>> params,
          const Rat& lhs, const Rat& rhs, std::string note = {}) {
  if (r.failure) return;
  r.failure = Counterexample{std::move(params), lhs.str(), rhs.str(), std::move(note)};
}

void merge(IdentityReport& into, const IdentityReport& part) {
  into.checked += part.checked;
  into.skipped.insert(into.skipped.end(), part.skipped.begin(), part.skipped.end());
  if (!into.failure && part.failure) into.failure = part.failure;
}

std::vector<std::size_t> naturals(const ParamRange& r, const char* name, std::size_t minimum) {
  std::vector<std::size_t> out;
  for (const Rat& v : r.values) {
    if (!v.is_integer() || v < to_rat(minimum) || !v.num().fits_ulong_p()) {
      throw ConfigError(std::string(name) + " must be integers >= " + std::to_string(minimum));
    }
    out.push_back(v.num().get_ui());
  }
  return out;
}

// Every count vector of the given length with total at most `max_total`, in
// lexicographic order.
std::vector<std::vector<std::size_t>> count_vectors(std::size_t length, std::size_t max_total) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(length, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == length) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, max_total);
  return out;
}

std::vector<std::vector<std::size_t>> subvectors(const std::vector<std::size_t>& bound) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(bound.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == bound.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = 0; v <= bound[i]; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::string describe_grid(std::initializer_list<std::pair<const char*, const ParamRange*>> axes,
                          const std::string& tail) {
  std::string out;
  for (const auto& [name, range] : axes) {
    if (!out.empty()) out += "; ";
    out += std::string(name) + " in " + range->text;
  }
  if (!tail.empty()) out += (out.empty() ? "" : "; ") + tail;
  return out;
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

// Small random rationals with numerators in [-20, 20] and denominators in
// [1, 9]; splitmix64 keeps the stream identical on every platform.
std::vector<Rat> random_sequence(std::uint64_t& state, std::size_t length) {
  std::vector<Rat> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const auto num = static_cast<std::int64_t>(splitmix(state) % 41) - 20;
    const auto den = static_cast<std::int64_t>(splitmix(state) % 9) + 1;
    out.push_back(Rat(num) / Rat(den));
  }
  return out;
}

// --- Sections -------------------------------------------------------------

IdentityReport run_eq2(const Eq2Grid& g, const CatalanFn& hook) {
  IdentityReport r;
  r.id = IdentityId::Eq2;
  r.grid = describe_grid({{"alpha", &g.alpha}, {"beta", &g.beta}, {"gamma", &g.gamma}},
                         "n <= " + std::to_string(g.n_max));
  for (const Rat& a : g.alpha.values) {
    for (const Rat& b : g.beta.values) {
      for (const Rat& c : g.gamma.values) merge(r, verify_eq2(a, b, c, g.n_max, hook));
    }
  }
  return r;
}

IdentityReport run_eq3(const Eq3Grid& g, std::uint64_t max_structs) {
  IdentityReport r;
  r.id = IdentityId::Eq3;
  std::string sets;
  for (const auto& p : g.outdegree_sets) sets += (sets.empty() ? "" : " ") + join_counts(p);
  r.grid = "p in {" + sets + "}; " +
           describe_grid({{"gamma", &g.gamma}, {"alpha", &g.alpha}},
                         "|n| <= " + std::to_string(g.n_max_total) + "; enumeration for |n| <= " +
                             std::to_string(g.enumerate_max_total) + ", alpha - gamma in " +
                             g.enumerate_alpha_offset.text);
  const auto gammas = naturals(g.gamma, "eq3.gamma", 0);
  const auto offsets = naturals(g.enumerate_alpha_offset, "eq3.enumerate_alpha_offset", 0);
  for (const auto& outdegrees : g.outdegree_sets) {
    const VecProfile shape(std::vector<std::size_t>(outdegrees.size(), 0), outdegrees);
    for (std::size_t gamma : gammas) {
      for (const Rat& alpha : g.alpha.values) merge(r, verify_eq3(shape, gamma, alpha, g.n_max_total));
      if (gamma == 0) continue;
      for (std::size_t offset : offsets) {
        const std::size_t alpha = gamma + offset;
        for (const auto& n : count_vectors(outdegrees.size(), g.enumerate_max_total)) {
          const VecProfile profile = shape.with_counts(n);
          const Rat enumerated = signed_sum_vector(profile, gamma, alpha, max_structs);
          const Rat rhs = eq3_rhs(profile, gamma, to_rat(alpha));
          ++r.checked;
          if (enumerated != rhs) {
            fail(r,
                 {{"p", join_counts(outdegrees)}, {"n", join_counts(n)},
                  {"gamma", std::to_string(gamma)}, {"alpha", std::to_string(alpha)}},
                 enumerated, rhs, "colored-structure enumeration");
          }
        }
      }
    }
  }
  return r;
}

IdentityReport run_eq4(const Eq4Grid& g, std::uint64_t max_structs) {
  IdentityReport r;
  r.id = IdentityId::Eq4;
  r.grid = describe_grid({{"beta", &g.beta}, {"gamma", &g.gamma}, {"alpha - gamma", &g.alpha_offset}},
                         "n <= " + std::to_string(g.n_max) +
                             "; direct, reindexed, Riordan row and involution census");
  const auto betas = naturals(g.beta, "eq4.beta", 1);
  const auto gammas = naturals(g.gamma, "eq4.gamma", 1);
  const auto offsets = naturals(g.alpha_offset, "eq4.alpha_offset", 0);
  for (std::size_t beta : betas) {
    for (std::size_t gamma : gammas) {
      for (std::size_t offset : offsets) {
        const std::size_t alpha = gamma + offset;
        const Rat a = to_rat(alpha), b = to_rat(beta), c = to_rat(gamma);
        const RiordanArray family = binomial_family(a, b, g.n_max);
        const auto rows = riordan_rows(family, g.n_max + 1);
        const auto catalan = catalan_sequence(b, c, g.n_max);
        for (std::size_t n = 0; n <= g.n_max; ++n) {
          std::vector<std::pair<std::string, std::string>> params = {
              {"beta", b.str()}, {"gamma", c.str()}, {"alpha", a.str()}, {"n", std::to_string(n)}};
          const Rat rhs = eq2_rhs(a, c, n);
          const Rat direct = eq2_lhs(a, b, c, n);
          const Rat reindexed = eq4_lhs(a, b, c, n);
          Rat row(0);
          for (std::size_t k = 0; k <= n; ++k) row += rows[n][k] * catalan[k];
          const InvolutionCensus census = involution_census(beta, n, gamma, alpha, max_structs);
          ++r.checked;
          if (direct != rhs) fail(r, params, direct, rhs, "direct summation");
          if (reindexed != direct) fail(r, params, reindexed, direct, "reindexed summation");
          if (row != direct) fail(r, params, row, direct, "Riordan row sum");
          if (census.signed_sum != direct) fail(r, params, census.signed_sum, direct, "involution census");
          if (!census.matching.ok) {
            fail(r, params, Rat(0), Rat(0), "signed matching: " + census.matching.reason);
          }
          const Rat exceptional_weight = sign_power(n) * to_rat(census.exceptional.size());
          if (exceptional_weight != rhs) {
            fail(r, params, exceptional_weight, rhs, "exceptional structures");
          }
        }
      }
    }
  }
  return r;
}

std::pair<IdentityReport, IdentityReport> run_riordan(const RiordanGrid& g) {
  IdentityReport r5, r6;
  r5.id = IdentityId::Eq5;
  r6.id = IdentityId::Eq6;
  r5.grid = r6.grid = describe_grid({{"alpha", &g.alpha}, {"beta", &g.beta}, {"gamma", &g.gamma}},
                                    "order " + std::to_string(g.order));
  for (const Rat& a : g.alpha.values) {
    for (const Rat& b : g.beta.values) {
      for (const Rat& c : g.gamma.values) {
        const RiordanArray family = binomial_family(a, b, g.order);
        const Series catalan = catalan_gf(b, c, g.order);
        const Series target = series_binpow(a - c, g.order);
        std::vector<std::pair<std::string, std::string>> params = {
            {"alpha", a.str()}, {"beta", b.str()}, {"gamma", c.str()}};
        const RiordanCheck check = riordan_theorem_details(family, catalan, target);
        ++r5.checked;
        if (!check.holds()) {
          fail(r5, params, Rat(check.sum_form ? 1 : 0), Rat(check.gf_form ? 1 : 0),
               "lhs = row-sum form holds, rhs = generating-function form holds");
        }
        ++r6.checked;
        if (!modified_riordan_check(family, catalan, target)) {
          fail(r6, params, Rat(0), Rat(1), "coefficient condition failed");
        }
      }
    }
  }
  return {r5, r6};
}

IdentityReport run_eq7(const Eq7Grid& g) {
  IdentityReport r;
  r.id = IdentityId::Eq7;
  r.grid = describe_grid({{"beta", &g.beta}, {"gamma", &g.gamma}}, "order " + std::to_string(g.order));
  for (const Rat& b : g.beta.values) {
    for (const Rat& c : g.gamma.values) {
      const Series inner = Series::identity(g.order) * series_binpow(b - Rat(1), g.order);
      const Series lhs = series_compose(catalan_gf(b, c, g.order), inner);
      const Series rhs = series_binpow(-c, g.order);
      ++r.checked;
      for (std::size_t k = 0; k <= g.order; ++k) {
        if (lhs[k] != rhs[k]) {
          fail(r, {{"beta", b.str()}, {"gamma", c.str()}, {"k", std::to_string(k)}}, lhs[k], rhs[k]);
          break;
        }
      }
    }
  }
  return r;
}

IdentityReport run_eq8(const Eq8Grid& g) {
  IdentityReport r;
  r.id = IdentityId::Eq8;
  r.grid = describe_grid({{"beta", &g.beta}, {"a1", &g.a1}, {"a2", &g.a2}}, "order " + std::to_string(g.order));
  for (const Rat& b : g.beta.values) {
    for (const Rat& a1 : g.a1.values) {
      for (const Rat& a2 : g.a2.values) {
        const Series lhs = catalan_gf(b, a1 + a2, g.order);
        const Series rhs = catalan_gf(b, a1, g.order) * catalan_gf(b, a2, g.order);
        ++r.checked;
        for (std::size_t k = 0; k <= g.order; ++k) {
          if (lhs[k] != rhs[k]) {
            fail(r, {{"beta", b.str()}, {"a1", a1.str()}, {"a2", a2.str()}, {"n", std::to_string(k)}},
                 lhs[k], rhs[k]);
            break;
          }
        }
      }
    }
  }
  return r;
}

IdentityReport run_eq9(const Eq9Grid& g) {
  IdentityReport r;
  r.id = IdentityId::Eq9Roundtrip;
  r.grid = describe_grid({{"a", &g.a}, {"m", &g.m}, {"z", &g.z}},
                         std::to_string(g.sequences) + " random sequences of length " +
                             std::to_string(g.length) + ", seed " + std::to_string(g.seed));
  std::uint64_t state = g.seed;
  std::vector<std::vector<Rat>> seqs;
  for (std::size_t s = 0; s < g.sequences; ++s) seqs.push_back(random_sequence(state, g.length));

  for (const Rat& a : g.a.values) {
    for (const Rat& m : g.m.values) {
      for (const Rat& z : g.z.values) {
        const GouldPair pair{a, m, z};
        if (const auto n = gould_singular_index(pair, g.length)) {
          r.skipped.push_back("a=" + a.str() + ", m=" + m.str() + ", z=" + z.str() +
                              " (-a n - m = 0 at n=" + std::to_string(*n) + ")");
          continue;
        }
        for (std::size_t s = 0; s < seqs.size(); ++s) {
          const auto there = gould_backward(gould_forward(seqs[s], pair), pair);
          const auto back = gould_forward(gould_backward(seqs[s], pair), pair);
          ++r.checked;
          for (std::size_t i = 0; i < seqs[s].size(); ++i) {
            std::vector<std::pair<std::string, std::string>> params = {
                {"a", a.str()}, {"m", m.str()}, {"z", z.str()},
                {"sequence", std::to_string(s)}, {"index", std::to_string(i)}};
            if (there[i] != seqs[s][i]) fail(r, params, there[i], seqs[s][i], "backward(forward(s))");
            if (back[i] != seqs[s][i]) fail(r, params, back[i], seqs[s][i], "forward(backward(s))");
          }
        }
      }
    }
  }
  return r;
}

IdentityReport run_eq10(const Eq10Grid& g) {
  IdentityReport r;
  r.id = IdentityId::Eq10;
  r.grid = describe_grid({{"alpha", &g.alpha}, {"beta", &g.beta}, {"gamma", &g.gamma}},
                         "1 <= n <= " + std::to_string(g.n_max));
  for (const Rat& a : g.alpha.values) {
    for (const Rat& b : g.beta.values) {
      for (const Rat& c : g.gamma.values) merge(r, verify_eq10(a, b, c, g.n_max));
    }
  }
  return r;
}

IdentityReport run_closed_form(const ClosedFormGrid& g) {
  IdentityReport r;
  r.id = IdentityId::ClosedForm;
  r.grid = describe_grid({{"beta", &g.beta}, {"gamma", &g.gamma}}, "1 <= n <= " + std::to_string(g.n_max));
  for (const Rat& b : g.beta.values) {
    for (const Rat& c : g.gamma.values) merge(r, closed_form_reduction_check(b, c, g.n_max));
  }
  return r;
}

// --- Config parsing --------------------------------------------------------

Rat rat_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected a rational string like \"3/2\" or an integer");
}

std::size_t natural_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(where + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

ParamRange range_from_json(const Json& j, const std::string& where) {
  if (j.is_array()) {
    std::vector<Rat> values;
    for (std::size_t i = 0; i < j.size(); ++i) {
      values.push_back(rat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return ParamRange::list(std::move(values));
  }
  if (j.is_object()) {
    for (const auto& [key, _] : j.items()) {
      if (key != "from" && key != "to" && key != "step") throw ConfigError(where + ": unknown key '" + key + "'");
    }
    if (!j.contains("from") || !j.contains("to")) throw ConfigError(where + ": interval needs 'from' and 'to'");
    const Rat step = j.contains("step") ? rat_from_json(j["step"], where + ".step") : Rat(1);
    try {
      return ParamRange::interval(rat_from_json(j["from"], where + ".from"), rat_from_json(j["to"], where + ".to"),
                                  step);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": expected an interval object or a list of values");
}

class Section {
public:
  Section(const Json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError(name_ + ": expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [key, _] : j_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) throw ConfigError(name_ + ": unknown key '" + key + "'");
    }
  }

  ParamRange range(const char* key) const {
    if (!j_.contains(key)) throw ConfigError(name_ + ": missing '" + key + "'");
    return range_from_json(j_[key], name_ + "." + key);
  }

  std::size_t natural(const char* key, std::size_t fallback) const {
    return j_.contains(key) ? natural_from_json(j_[key], name_ + "." + key) : fallback;
  }

  const Json& raw(const char* key) const { return j_[key]; }
  bool has(const char* key) const { return j_.contains(key); }

private:
  const Json& j_;
  std::string name_;
};

Json range_json(const Rat& from, const Rat& to, const Rat& step = Rat(1)) {
  return Json{{"from", from.str()}, {"to", to.str()}, {"step", step.str()}};
}

}  // namespace

std::string to_string(IdentityId id) {
  switch (id) {
    case IdentityId::Eq1: return "Eq1";
    case IdentityId::Eq2: return "Eq2";
    case IdentityId::Eq3: return "Eq3";
    case IdentityId::Eq4: return "Eq4";
    case IdentityId::Eq5: return "Eq5";
    case IdentityId::Eq6: return "Eq6";
    case IdentityId::Eq7: return "Eq7";
    case IdentityId::Eq8: return "Eq8";
    case IdentityId::Eq9Roundtrip: return "Eq9_roundtrip";
    case IdentityId::Eq10: return "Eq10";
    case IdentityId::ClosedForm: return "ClosedForm";
  }
  return "unknown";
}

Rat eq2_lhs(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n, const CatalanFn& catalan) {
  Rat sum(0);
  for (std::size_t i = 0; i <= n; ++i) {
    const Rat top = (beta - Rat(1)) * to_rat(i) + alpha;
    sum += sign_power(n - i) * binom(top, n - i) * catalan_of(catalan, i, beta, gamma);
  }
  return sum;
}

Rat eq4_lhs(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n, const CatalanFn& catalan) {
  Rat sum(0);
  for (std::size_t i = 0; i <= n; ++i) {
    const Rat top = (beta - Rat(1)) * to_rat(n - i) + alpha;
    sum += sign_power(i) * binom(top, i) * catalan_of(catalan, n - i, beta, gamma);
  }
  return sum;
}

Rat eq2_rhs(const Rat& alpha, const Rat& gamma, std::size_t n) {
  return sign_power(n) * binom(alpha - gamma, n);
}

IdentityReport verify_eq1(std::size_t n_max, const CatalanFn& catalan) {
  IdentityReport r;
  r.id = IdentityId::Eq1;
  r.grid = "alpha = 1; beta = 2; gamma = 1; n <= " + std::to_string(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const Rat lhs = eq2_lhs(Rat(1), Rat(2), Rat(1), n, catalan);
    const Rat rhs = kronecker(n);
    ++r.checked;
    if (lhs != rhs) fail(r, {{"n", std::to_string(n)}}, lhs, rhs);
  }
  return r;
}

IdentityReport verify_eq2(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n_max,
                          const CatalanFn& catalan) {
  IdentityReport r;
  r.id = IdentityId::Eq2;
  r.grid = "alpha = " + alpha.str() + "; beta = " + beta.str() + "; gamma = " + gamma.str() +
           "; n <= " + std::to_string(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<std::pair<std::string, std::string>> params = {
        {"alpha", alpha.str()}, {"beta", beta.str()}, {"gamma", gamma.str()}, {"n", std::to_string(n)}};
    const Rat lhs = eq2_lhs(alpha, beta, gamma, n, catalan);
    const Rat reindexed = eq4_lhs(alpha, beta, gamma, n, catalan);
    const Rat rhs = eq2_rhs(alpha, gamma, n);
    ++r.checked;
    if (lhs != rhs) fail(r, params, lhs, rhs);
    if (reindexed != lhs) fail(r, params, reindexed, lhs, "reindexed summation disagrees");
  }
  return r;
}

Rat eq3_lhs(const VecProfile& n, std::size_t gamma, const Rat& alpha) {
  Rat sum(0);
  for (const auto& i : subvectors(n.counts())) {
    std::vector<std::size_t> rest(i.size());
    std::size_t colored = 0;
    for (std::size_t j = 0; j < i.size(); ++j) {
      rest[j] = n.counts()[j] - i[j];
      colored += i[j];
    }
    const VecProfile remaining = n.with_counts(std::move(rest));
    const Rat top = to_rat(remaining.dot_outdegrees_minus_one()) + alpha;
    sum += sign_power(colored) * multinomial(top, i) * catalan_vector(remaining, gamma);
  }
  return sum;
}

Rat eq3_rhs(const VecProfile& n, std::size_t gamma, const Rat& alpha) {
  return sign_power(n.total_internal()) * multinomial(alpha - to_rat(gamma), n.counts());
}

IdentityReport verify_eq3(const VecProfile& profile, std::size_t gamma, const Rat& alpha,
                          std::size_t n_max_total) {
  IdentityReport r;
  r.id = IdentityId::Eq3;
  r.grid = "p = " + join_counts(profile.outdegrees()) + "; gamma = " + std::to_string(gamma) +
           "; alpha = " + alpha.str() + "; |n| <= " + std::to_string(n_max_total);
  for (const auto& n : count_vectors(profile.classes(), n_max_total)) {
    const VecProfile at = profile.with_counts(n);
    const Rat lhs = eq3_lhs(at, gamma, alpha);
    const Rat rhs = eq3_rhs(at, gamma, alpha);
    ++r.checked;
    if (lhs != rhs) {
      fail(r,
           {{"p", join_counts(profile.outdegrees())}, {"n", join_counts(n)},
            {"gamma", std::to_string(gamma)}, {"alpha", alpha.str()}},
           lhs, rhs);
    }
  }
  return r;
}

SingularParameterError::SingularParameterError(const std::string& what, std::size_t index)
    : std::domain_error(what), index_(index) {}

std::vector<Rat> gould_forward(const std::vector<Rat>& seq_a, const GouldPair& p) {
  std::vector<Rat> out(seq_a.size(), Rat(0));
  for (std::size_t n = 0; n < seq_a.size(); ++n) {
    Rat sum(0);
    for (std::size_t k = 0; k <= n; ++k) {
      sum += binom(p.m + p.a * to_rat(k), n - k) * power(p.z, n - k) * seq_a[k];
    }
    out[n] = sum;
  }
  return out;
}

std::optional<std::size_t> gould_singular_index(const GouldPair& p, std::size_t length) {
  for (std::size_t n = 1; n < length; ++n) {
    if ((-p.a * to_rat(n) - p.m).is_zero()) return n;
  }
  return std::nullopt;
}

std::vector<Rat> gould_backward(const std::vector<Rat>& seq_b, const GouldPair& p) {
  if (const auto n = gould_singular_index(p, seq_b.size())) {
    throw SingularParameterError("inverse relation is singular: -a n - m = 0 at n = " + std::to_string(*n), *n);
  }
  std::vector<Rat> out(seq_b.size(), Rat(0));
  for (std::size_t n = 0; n < seq_b.size(); ++n) {
    Rat sum = seq_b[n];
    if (n > 0) {
      const Rat top = -p.a * to_rat(n) - p.m;
      for (std::size_t k = 0; k < n; ++k) {
        const Rat ratio = (-p.a * to_rat(k) - p.m) / top;
        sum += ratio * binom(top, n - k) * power(p.z, n - k) * seq_b[k];
      }
    }
    out[n] = sum;
  }
  return out;
}

std::optional<Rat> eq10_rhs(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n) {
  const Rat top = (Rat(1) - beta) * to_rat(n) - alpha;
  if (top.is_zero()) return std::nullopt;
  Rat sum(0);
  for (std::size_t k = 0; k <= n; ++k) {
    const Rat ratio = ((Rat(1) - beta) * to_rat(k) - alpha) / top;
    sum += ratio * binom(top, n - k) * binom(alpha - gamma, k);
  }
  return sign_power(n) * sum;
}

IdentityReport verify_eq10(const Rat& alpha, const Rat& beta, const Rat& gamma, std::size_t n_max) {
  IdentityReport r;
  r.id = IdentityId::Eq10;
  r.grid = "alpha = " + alpha.str() + "; beta = " + beta.str() + "; gamma = " + gamma.str() +
           "; 1 <= n <= " + std::to_string(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto rhs = eq10_rhs(alpha, beta, gamma, n);
    if (!rhs) {
      r.skipped.push_back("alpha=" + alpha.str() + ", beta=" + beta.str() + ", gamma=" + gamma.str() +
                          ", n=" + std::to_string(n));
      continue;
    }
    const Rat lhs = catalan_gen(n, beta, gamma);
    ++r.checked;
    if (lhs != *rhs) {
      fail(r, {{"alpha", alpha.str()}, {"beta", beta.str()}, {"gamma", gamma.str()}, {"n", std::to_string(n)}},
           lhs, *rhs);
    }
  }
  return r;
}

IdentityReport closed_form_reduction_check(const Rat& beta, const Rat& gamma, std::size_t n_max) {
  IdentityReport r;
  r.id = IdentityId::ClosedForm;
  r.grid = "beta = " + beta.str() + "; gamma = " + gamma.str() + "; 1 <= n <= " + std::to_string(n_max);
  const Rat shrink = Rat(1) - beta;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<std::pair<std::string, std::string>> params = {
        {"beta", beta.str()}, {"gamma", gamma.str()}, {"n", std::to_string(n)}};
    const Rat nn = to_rat(n);
    const Rat top = shrink * nn;
    const Rat sign = sign_power(n);

    Rat start(0), whole(0), partial(0);
    for (std::size_t k = 0; k <= n; ++k) {
      const Rat term = binom(top, n - k) * binom(-gamma, k);
      start += sign * (nn - to_rat(n - k)) / nn * term;
      whole += sign * term;
      partial += sign * to_rat(n - k) / nn * term;
    }
    const Rat whole_closed = sign * binom(top - gamma, n);
    const Rat partial_closed = -(sign * (beta - Rat(1)) * binom(top - Rat(1) - gamma, n - 1));
    const Rat recombined = whole_closed - partial_closed;
    const Rat catalan = catalan_gen(n, beta, gamma);

    ++r.checked;
    if (const auto via_inverse = eq10_rhs(Rat(0), beta, gamma, n); via_inverse && *via_inverse != start) {
      fail(r, params, *via_inverse, start, "inverse relation at alpha = 0 vs first line");
    }
    if (start != whole - partial) fail(r, params, start, whole - partial, "split into two sums");
    if (whole != whole_closed) fail(r, params, whole, whole_closed, "Vandermonde evaluation of the first sum");
    if (partial != partial_closed) fail(r, params, partial, partial_closed, "Vandermonde evaluation of the second sum");
    if (recombined != catalan) fail(r, params, recombined, catalan, "recombination to C_{beta,gamma}(n)");
  }
  return r;
}

ParamRange ParamRange::interval(const Rat& from, const Rat& to, const Rat& step) {
  if (step.sign() <= 0) throw std::invalid_argument("interval step must be positive");
  ParamRange r;
  for (Rat v = from; v <= to; v += step) r.values.push_back(v);
  r.text = from.str() + ".." + to.str();
  if (step != Rat(1)) r.text += " step " + step.str();
  return r;
}

ParamRange ParamRange::list(std::vector<Rat> values) {
  ParamRange r;
  r.text = "{";
  for (std::size_t i = 0; i < values.size(); ++i) r.text += (i > 0 ? ", " : "") + values[i].str();
  r.text += "}";
  r.values = std::move(values);
  return r;
}

Json default_suite_config_json() {
  return Json{
      {"eq1", {{"n_max", 12}}},
      {"eq2", {{"alpha", range_json(-3, 5)}, {"beta", range_json(0, 4)}, {"gamma", range_json(-2, 4)}, {"n_max", 12}}},
      {"eq3",
       {{"outdegrees", Json::array({Json::array({2}), Json::array({3}), Json::array({2, 3}), Json::array({1, 3})})},
        {"gamma", range_json(0, 2)},
        {"alpha", range_json(-2, 5, Rat(1) / Rat(2))},
        {"n_max_total", 4},
        {"enumerate_max_total", 3},
        {"enumerate_alpha_offset", range_json(0, 3)}}},
      {"eq4", {{"beta", range_json(2, 3)}, {"gamma", range_json(1, 2)}, {"alpha_offset", range_json(0, 2)}, {"n_max", 4}}},
      {"riordan", {{"alpha", range_json(0, 3)}, {"beta", range_json(1, 3)}, {"gamma", range_json(1, 2)}, {"order", 15}}},
      {"eq7", {{"beta", range_json(1, 4)}, {"gamma", range_json(0, 3)}, {"order", 20}}},
      {"eq8",
       {{"beta", Json::array({"1", "2", "3", "1/2"})},
        {"a1", Json::array({"0", "1/2", "1", "3/2", "2"})},
        {"a2", Json::array({"0", "1/2", "1", "3/2", "2"})},
        {"order", 15}}},
      {"eq9",
       {{"a", range_json(-2, 3)},
        {"m", range_json(-2, 2)},
        {"z", Json::array({"-1", "1/2", "1", "2"})},
        {"sequences", 20},
        {"length", 10},
        {"seed", 20070101}}},
      {"eq10", {{"alpha", range_json(-3, 3)}, {"beta", range_json(0, 4)}, {"gamma", range_json(-2, 3)}, {"n_max", 10}}},
      {"closed_form", {{"beta", Json::array({"0", "1", "2", "3", "4", "1/2", "5/2"})}, {"gamma", range_json(-2, 3)}, {"n_max", 10}}},
  };
}

SuiteConfig default_suite_config() { return parse_suite_config(default_suite_config_json()); }

SuiteConfig parse_suite_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SuiteConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "eq1") {
      Section s(value, key);
      s.allow({"n_max"});
      c.eq1 = Eq1Grid{s.natural("n_max", 12)};
    } else if (key == "eq2") {
      Section s(value, key);
      s.allow({"alpha", "beta", "gamma", "n_max"});
      c.eq2 = Eq2Grid{s.range("alpha"), s.range("beta"), s.range("gamma"), s.natural("n_max", 12)};
    } else if (key == "eq3") {
      Section s(value, key);
      s.allow({"outdegrees", "gamma", "alpha", "n_max_total", "enumerate_max_total", "enumerate_alpha_offset"});
      Eq3Grid g;
      if (!s.has("outdegrees") || !s.raw("outdegrees").is_array()) throw ConfigError("eq3: 'outdegrees' must be a list");
      for (const Json& set : s.raw("outdegrees")) {
        if (!set.is_array()) throw ConfigError("eq3.outdegrees: each entry must be a list");
        std::vector<std::size_t> p;
        for (const Json& v : set) p.push_back(natural_from_json(v, "eq3.outdegrees"));
        try {
          VecProfile(std::vector<std::size_t>(p.size(), 0), p);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("eq3.outdegrees: ") + e.what());
        }
        g.outdegree_sets.push_back(std::move(p));
      }
      g.gamma = s.range("gamma");
      naturals(g.gamma, "eq3.gamma", 0);
      g.alpha = s.range("alpha");
      g.n_max_total = s.natural("n_max_total", 4);
      g.enumerate_max_total = s.natural("enumerate_max_total", 3);
      g.enumerate_alpha_offset = s.has("enumerate_alpha_offset") ? s.range("enumerate_alpha_offset")
                                                                  : ParamRange::list({});
      naturals(g.enumerate_alpha_offset, "eq3.enumerate_alpha_offset", 0);
      c.eq3 = std::move(g);
    } else if (key == "eq4") {
      Section s(value, key);
      s.allow({"beta", "gamma", "alpha_offset", "n_max"});
      Eq4Grid g{s.range("beta"), s.range("gamma"), s.range("alpha_offset"), s.natural("n_max", 4)};
      naturals(g.beta, "eq4.beta", 1);
      naturals(g.gamma, "eq4.gamma", 1);
      naturals(g.alpha_offset, "eq4.alpha_offset", 0);
      c.eq4 = std::move(g);
    } else if (key == "riordan") {
      Section s(value, key);
      s.allow({"alpha", "beta", "gamma", "order"});
      c.riordan = RiordanGrid{s.range("alpha"), s.range("beta"), s.range("gamma"), s.natural("order", 15)};
    } else if (key == "eq7") {
      Section s(value, key);
      s.allow({"beta", "gamma", "order"});
      c.eq7 = Eq7Grid{s.range("beta"), s.range("gamma"), s.natural("order", 20)};
    } else if (key == "eq8") {
      Section s(value, key);
      s.allow({"beta", "a1", "a2", "order"});
      c.eq8 = Eq8Grid{s.range("beta"), s.range("a1"), s.range("a2"), s.natural("order", 15)};
    } else if (key == "eq9") {
      Section s(value, key);
      s.allow({"a", "m", "z", "sequences", "length", "seed"});
      c.eq9 = Eq9Grid{s.range("a"), s.range("m"), s.range("z"), s.natural("sequences", 20), s.natural("length", 10),
                      s.natural("seed", 20070101)};
    } else if (key == "eq10") {
      Section s(value, key);
      s.allow({"alpha", "beta", "gamma", "n_max"});
      c.eq10 = Eq10Grid{s.range("alpha"), s.range("beta"), s.range("gamma"), s.natural("n_max", 10)};
    } else if (key == "closed_form") {
      Section s(value, key);
      s.allow({"beta", "gamma", "n_max"});
      c.closed_form = ClosedFormGrid{s.range("beta"), s.range("gamma"), s.natural("n_max", 10)};
    } else if (key == "max_structs") {
      c.max_structs = natural_from_json(value, key);
    } else if (key == "test_hooks") {
      Section s(value, key);
      s.allow({"corrupt_catalan"});
      if (s.has("corrupt_catalan")) {
        if (!s.raw("corrupt_catalan").is_boolean()) throw ConfigError("test_hooks.corrupt_catalan must be boolean");
        if (s.raw("corrupt_catalan").get<bool>()) {
          c.catalan_override = [](std::size_t n, const Rat& beta, const Rat& gamma) {
            Rat v = catalan_gen(n, beta, gamma);
            if (n == 3) v += Rat(1);
            return v;
          };
        }
      }
    } else {
      throw ConfigError("unknown config section '" + key + "'");
    }
  }
  return c;
}

std::vector<IdentityReport> run_suite(const SuiteConfig& config) {
  // Sections are independent; each future yields its reports in a fixed slot.
  std::vector<std::future<std::vector<IdentityReport>>> jobs;
  auto launch = [&](auto fn) { jobs.push_back(std::async(std::launch::async, fn)); };

  if (config.eq1) launch([&] { return std::vector{verify_eq1(config.eq1->n_max, config.catalan_override)}; });
  if (config.eq2) launch([&] { return std::vector{run_eq2(*config.eq2, config.catalan_override)}; });
  if (config.eq3) launch([&] { return std::vector{run_eq3(*config.eq3, config.max_structs)}; });
  if (config.eq4) launch([&] { return std::vector{run_eq4(*config.eq4, config.max_structs)}; });
  if (config.riordan) {
    launch([&] {
      auto [r5, r6] = run_riordan(*config.riordan);
      return std::vector{r5, r6};
    });
  }
  if (config.eq7) launch([&] { return std::vector{run_eq7(*config.eq7)}; });
  if (config.eq8) launch([&] { return std::vector{run_eq8(*config.eq8)}; });
  if (config.eq9) launch([&] { return std::vector{run_eq9(*config.eq9)}; });
  if (config.eq10) launch([&] { return std::vector{run_eq10(*config.eq10)}; });
  if (config.closed_form) launch([&] { return std::vector{run_closed_form(*config.closed_form)}; });

  std::vector<IdentityReport> out;
  for (auto& job : jobs) {
    auto part = job.get();
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

Json to_json(const IdentityReport& r) {
  Json j{{"identity", to_string(r.id)},
         {"grid", r.grid},
         {"checked", r.checked},
         {"skipped", r.skipped},
         {"status", r.passed() ? "pass" : "fail"}};
  if (r.failure) {
    Json params = Json::object();
    for (const auto& [k, v] : r.failure->params) params[k] = v;
    j["counterexample"] = Json{{"params", params}, {"lhs", r.failure->lhs}, {"rhs", r.failure->rhs}};
    if (!r.failure->note.empty()) j["counterexample"]["note"] = r.failure->note;
  }
  return j;
}

Json to_json(const std::vector<IdentityReport>& reports) {
  Json out = Json::array();
  for (const IdentityReport& r : reports) out.push_back(to_json(r));
  return out;
}

}  // namespace catalania
