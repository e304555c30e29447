#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "catalania/counting.hpp"
#include "catalania/exact.hpp"
#include "catalania/forest.hpp"
#include "catalania/identities.hpp"
#include "catalania/involution.hpp"
#include "catalania/riordan.hpp"

namespace catalania::cli {

namespace {

using Json = nlohmann::json;

// Bad flag values found after CLI11 has accepted the command line.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Rat rat_flag(const std::string& flag, const std::string& text) {
  try {
    return Rat::parse(text);
  } catch (const std::exception&) {
    throw UsageError("--" + flag + " expects a rational such as 3, -2 or 5/2, got '" + text + "'");
  }
}

std::size_t nat_flag(const std::string& flag, const std::string& text) {
  const Rat v = rat_flag(flag, text);
  if (!v.is_integer() || v.sign() < 0 || !v.num().fits_ulong_p()) {
    throw UsageError("--" + flag + " expects a non-negative integer, got '" + text + "'");
  }
  return v.num().get_ui();
}

std::vector<std::size_t> nat_list_flag(const std::string& flag, const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(nat_flag(flag, item));
  if (out.empty()) throw UsageError("--" + flag + " expects a comma-separated list, got '" + text + "'");
  return out;
}

void check_bound(const BigInt& estimate, std::uint64_t limit) {
  if (estimate > BigInt(static_cast<unsigned long>(limit))) {
    throw ResourceError("about " + estimate.get_str() + " structures exceed the limit of " + std::to_string(limit) +
                        "; set CATALANIA_MAX_STRUCTS to raise it");
  }
}

std::string rats_line(const std::vector<Rat>& v) {
  std::string s;
  for (const Rat& x : v) s += x.str() + "\n";
  return s;
}

Json rats_json(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(x.str());
  return a;
}

Series read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read series file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("series file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
    throw UsageError("series file '" + path + "' needs a non-empty \"coeffs\" array");
  }
  std::vector<Rat> coeffs;
  for (const Json& c : j["coeffs"]) {
    if (c.is_string()) {
      coeffs.push_back(rat_flag("coeffs", c.get<std::string>()));
    } else if (c.is_number_integer()) {
      coeffs.push_back(Rat(c.get<std::int64_t>()));
    } else {
      throw UsageError("series file '" + path + "': coefficients must be strings like \"-1/2\" or integers");
    }
  }
  if (j.contains("order")) {
    if (!j["order"].is_number_unsigned()) throw UsageError("series file '" + path + "': \"order\" must be a natural");
    const auto order = j["order"].get<std::size_t>();
    if (order + 1 < coeffs.size()) {
      throw UsageError("series file '" + path + "' lists more coefficients than its order");
    }
    coeffs.resize(order + 1, Rat(0));
  }
  return Series(std::move(coeffs));
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// --- subcommands --------------------------------------------------------------

struct SeqFlags {
  std::string beta, gamma, n;
  std::string format = "text";
};

int cmd_seq(const SeqFlags& f, std::ostream& out) {
  const Rat beta = rat_flag("beta", f.beta);
  const Rat gamma = rat_flag("gamma", f.gamma);
  const std::size_t n = nat_flag("n", f.n);
  const auto seq = catalan_sequence(beta, gamma, n);
  if (f.format == "json") {
    emit(out, rats_json(seq));
  } else {
    out << rats_line(seq);
  }
  return kOk;
}

struct TreesFlags {
  std::string action;
  std::string beta, n, gamma = "1";
  std::string outdegrees, counts;
  bool check_formula = false;
  std::string format = "text";
};

int cmd_trees(const TreesFlags& f, std::ostream& out) {
  const std::size_t gamma = nat_flag("gamma", f.gamma);
  const std::uint64_t limit = max_structs_from_env();
  const bool mixed = !f.outdegrees.empty();
  if (mixed && (!f.beta.empty() || !f.n.empty())) {
    throw UsageError("--outdegrees/--counts replace --beta/--n; give one form");
  }
  if (mixed && f.counts.empty()) throw UsageError("--outdegrees needs --counts");
  if (!mixed && !f.counts.empty()) throw UsageError("--counts needs --outdegrees");
  if (!mixed && (f.beta.empty() || f.n.empty())) throw UsageError("trees needs --beta and --n");

  std::optional<VecProfile> profile;
  std::size_t beta = 0, n = 0;
  Rat formula(0);
  if (mixed) {
    try {
      profile.emplace(nat_list_flag("counts", f.counts), nat_list_flag("outdegrees", f.outdegrees));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    formula = catalan_vector(*profile, gamma);
  } else {
    beta = nat_flag("beta", f.beta);
    n = nat_flag("n", f.n);
    if (beta == 0) throw UsageError("--beta must be at least 1");
    formula = catalan_gen(n, to_rat(beta), to_rat(gamma));
  }
  check_bound(formula.num(), limit);

  if (f.action == "list") {
    std::vector<std::string> codes;
    auto collect = [&](std::span<const std::size_t> code) { codes.push_back(encode(forest_from_code(code))); };
    if (mixed) {
      visit_mixed_forests(*profile, gamma, collect);
    } else {
      visit_kary_forests(beta, n, gamma, collect);
    }
    if (f.format == "json") {
      emit(out, Json(codes));
    } else {
      for (const auto& c : codes) out << c << "\n";
    }
    return kOk;
  }

  std::uint64_t count = 0;
  auto tally = [&](std::span<const std::size_t>) { ++count; };
  if (mixed) {
    visit_mixed_forests(*profile, gamma, tally);
  } else {
    visit_kary_forests(beta, n, gamma, tally);
  }
  const Rat counted = Rat(BigInt(static_cast<unsigned long>(count)));
  const bool match = counted == formula;
  if (f.format == "json") {
    Json j{{"count", counted.str()}};
    if (f.check_formula) {
      j["formula"] = formula.str();
      j["match"] = match;
    }
    emit(out, j);
  } else if (f.check_formula) {
    out << counted << (match ? " == " : " != ") << formula << (match ? " OK" : " MISMATCH") << "\n";
  } else {
    out << counted << "\n";
  }
  return f.check_formula && !match ? kMismatch : kOk;
}

struct InvolutionFlags {
  std::string beta, n, gamma, alpha;
  bool dump_pairs = false;
  std::string format = "text";
};

int cmd_involution(const InvolutionFlags& f, std::ostream& out) {
  const std::size_t beta = nat_flag("beta", f.beta);
  const std::size_t n = nat_flag("n", f.n);
  const std::size_t gamma = nat_flag("gamma", f.gamma);
  const std::size_t alpha = nat_flag("alpha", f.alpha);
  if (beta == 0) throw UsageError("--beta must be at least 1");
  if (gamma == 0 || alpha < gamma) throw UsageError("the involution needs alpha >= gamma >= 1");
  const std::uint64_t limit = max_structs_from_env();
  check_bound(structure_count(beta, n, gamma, alpha), limit);

  const InvolutionCensus census = involution_census(beta, n, gamma, alpha, limit);
  const Rat rhs = eq2_rhs(to_rat(alpha), to_rat(gamma), n);
  const bool match = census.signed_sum == rhs && census.matching.ok;
  const std::vector<std::size_t> outdegrees{beta};

  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> exceptional;
  if (f.dump_pairs) {
    for (const ColoredForest& c : census.first) pairs.emplace_back(encode(c), encode(involute(c, outdegrees)));
    for (const ColoredForest& c : census.exceptional) exceptional.push_back(encode(c));
  }

  if (f.format == "json") {
    Json j{{"sum", census.signed_sum.str()},
           {"rhs", rhs.str()},
           {"match", match},
           {"first_class", census.first.size()},
           {"second_class", census.second.size()},
           {"exceptional", census.exceptional.size()}};
    if (!census.matching.ok) j["matching_failure"] = census.matching.reason;
    if (f.dump_pairs) {
      Json p = Json::array();
      for (const auto& [a, b] : pairs) p.push_back(Json::array({a, b}));
      j["pairs"] = p;
      j["exceptional_structures"] = exceptional;
    }
    emit(out, j);
  } else {
    out << "sum=" << census.signed_sum << " rhs=" << rhs << (match ? " OK" : " MISMATCH") << "\n";
    if (!census.matching.ok) out << "matching failed: " << census.matching.reason << "\n";
    for (const auto& [a, b] : pairs) out << "pair " << a << " <-> " << b << "\n";
    for (const auto& e : exceptional) out << "exceptional " << e << "\n";
  }
  return match ? kOk : kMismatch;
}

struct RiordanFlags {
  std::string action;
  std::string alpha, beta, gamma;
  std::string n, k, order = "15";
  std::string g_file, f_file, a_file, l_file;
  std::string format = "text";
};

int cmd_riordan(const RiordanFlags& f, std::ostream& out) {
  const bool files = !f.g_file.empty() || !f.f_file.empty();
  const bool family = !f.alpha.empty() || !f.beta.empty();
  if (files && family) throw UsageError("give either --alpha/--beta or --g/--f, not both");

  if (f.action == "entry") {
    if (f.n.empty() || f.k.empty()) throw UsageError("riordan entry needs --n and --k");
    const std::size_t n = nat_flag("n", f.n);
    const std::size_t k = nat_flag("k", f.k);
    std::optional<RiordanArray> array;
    try {
      if (files) {
        if (f.g_file.empty() || f.f_file.empty()) throw UsageError("riordan entry needs both --g and --f");
        array.emplace(read_series(f.g_file), read_series(f.f_file));
      } else {
        if (f.alpha.empty() || f.beta.empty()) throw UsageError("riordan entry needs --alpha and --beta");
        array.emplace(binomial_family(rat_flag("alpha", f.alpha), rat_flag("beta", f.beta), std::max<std::size_t>(n, 1)));
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (k <= n && n > array->order()) {
      throw UsageError("row " + std::to_string(n) + " exceeds the series order " + std::to_string(array->order()));
    }
    const Rat entry = k > n ? Rat(0) : riordan_entry(*array, n, k);
    if (f.format == "json") {
      emit(out, Json{{"n", n}, {"k", k}, {"entry", entry.str()}});
    } else {
      out << entry << "\n";
    }
    return kOk;
  }

  std::optional<RiordanArray> array;
  std::optional<Series> a, l;
  try {
    if (files) {
      if (f.g_file.empty() || f.f_file.empty() || f.a_file.empty() || f.l_file.empty()) {
        throw UsageError("riordan check with series files needs --g, --f, --a and --l");
      }
      array.emplace(read_series(f.g_file), read_series(f.f_file));
      a = read_series(f.a_file);
      l = read_series(f.l_file);
    } else {
      if (f.alpha.empty() || f.beta.empty() || f.gamma.empty()) {
        throw UsageError("riordan check needs --alpha, --beta and --gamma");
      }
      const std::size_t order = nat_flag("order", f.order);
      const Rat alpha = rat_flag("alpha", f.alpha);
      const Rat beta = rat_flag("beta", f.beta);
      const Rat gamma = rat_flag("gamma", f.gamma);
      array.emplace(binomial_family(alpha, beta, std::max<std::size_t>(order, 1)));
      a = catalan_gf(beta, gamma, order);
      l = series_binpow(alpha - gamma, order);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool theorem = false, modified = false;
  try {
    theorem = riordan_theorem_check(*array, *a, *l);
    modified = modified_riordan_check(*array, *a, *l);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  if (f.format == "json") {
    emit(out, Json{{"Eq5", theorem}, {"Eq6", modified}});
  } else {
    out << "Eq5 " << (theorem ? "OK" : "FAIL") << ", Eq6 " << (modified ? "OK" : "FAIL") << "\n";
  }
  return theorem && modified ? kOk : kMismatch;
}

struct VerifyFlags {
  std::string config;
  std::string format = "json";
};

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  Json raw;
  if (f.config.empty()) {
    raw = default_suite_config_json();
  } else {
    std::ifstream in(f.config);
    if (!in) throw UsageError("cannot read config file '" + f.config + "'");
    try {
      raw = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw UsageError("config file '" + f.config + "' is not valid JSON: " + e.what());
    }
  }
  SuiteConfig config;
  try {
    config = parse_suite_config(raw);
  } catch (const ConfigError& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!raw.contains("max_structs")) config.max_structs = max_structs_from_env();

  const auto reports = run_suite(config);
  const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  if (f.format == "json") {
    emit(out, to_json(reports));
  } else {
    for (const auto& r : reports) {
      out << to_string(r.id) << " " << (r.passed() ? "pass" : "FAIL") << " checked=" << r.checked
          << " skipped=" << r.skipped.size() << "\n";
      if (r.failure) {
        out << "  counterexample:";
        for (const auto& [k, v] : r.failure->params) out << " " << k << "=" << v;
        out << " lhs=" << r.failure->lhs << " rhs=" << r.failure->rhs;
        if (!r.failure->note.empty()) out << " (" << r.failure->note << ")";
        out << "\n";
      }
    }
  }
  return all_pass ? kOk : kMismatch;
}

void add_format(CLI::App* app, std::string& target) {
  app->add_option("--format", target, "Output format")->check(CLI::IsMember({"text", "json"}));
}

// `paren` names the forest encoding; it prints the same lines as `text`.
void add_forest_format(CLI::App* app, std::string& target) {
  app->add_option("--format", target, "Output format")->check(CLI::IsMember({"text", "paren", "json"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Catalan numbers: sequences, forests, involutions and identity checks", "catalania"};
  app.require_subcommand(1);

  SeqFlags seq;
  auto* seq_cmd = app.add_subcommand("seq", "Print C_{beta,gamma}(0..n)");
  seq_cmd->add_option("--beta", seq.beta, "beta (rational)")->required();
  seq_cmd->add_option("--gamma", seq.gamma, "gamma (rational)")->required();
  seq_cmd->add_option("--n", seq.n, "last index")->required();
  add_format(seq_cmd, seq.format);

  TreesFlags trees;
  auto* trees_cmd = app.add_subcommand("trees", "Count or list ordered forests");
  trees_cmd->add_option("action", trees.action, "count | list")->required()->check(CLI::IsMember({"count", "list"}));
  trees_cmd->add_option("--beta", trees.beta, "outdegree of every internal vertex");
  trees_cmd->add_option("--n", trees.n, "number of internal vertices");
  trees_cmd->add_option("--gamma", trees.gamma, "number of trees (default 1)");
  trees_cmd->add_option("--outdegrees", trees.outdegrees, "mixed forests: outdegrees, e.g. 2,3");
  trees_cmd->add_option("--counts", trees.counts, "mixed forests: internal vertices per outdegree, e.g. 1,1");
  trees_cmd->add_flag("--check-formula", trees.check_formula, "compare the count with the closed formula");
  add_forest_format(trees_cmd, trees.format);

  InvolutionFlags inv;
  auto* inv_cmd = app.add_subcommand("involution", "Signed sum over colored planted forests");
  inv_cmd->add_option("--beta", inv.beta, "outdegree")->required();
  inv_cmd->add_option("--n", inv.n, "index of the alternating sum")->required();
  inv_cmd->add_option("--gamma", inv.gamma, "number of trees")->required();
  inv_cmd->add_option("--alpha", inv.alpha, "gamma plus the number of planted roots")->required();
  inv_cmd->add_flag("--dump-pairs", inv.dump_pairs, "print matched pairs and exceptional structures");
  add_format(inv_cmd, inv.format);

  RiordanFlags rio;
  auto* rio_cmd = app.add_subcommand("riordan", "Riordan array entries and theorem checks");
  rio_cmd->add_option("action", rio.action, "entry | check")->required()->check(CLI::IsMember({"entry", "check"}));
  rio_cmd->add_option("--alpha", rio.alpha, "g = (1-x)^alpha");
  rio_cmd->add_option("--beta", rio.beta, "f = x(1-x)^(beta-1)");
  rio_cmd->add_option("--gamma", rio.gamma, "A = C_{beta,gamma}(x), L = (1-x)^(alpha-gamma)");
  rio_cmd->add_option("--n", rio.n, "row");
  rio_cmd->add_option("--k", rio.k, "column");
  rio_cmd->add_option("--order", rio.order, "truncation order for check (default 15)");
  rio_cmd->add_option("--g", rio.g_file, "JSON series file for g");
  rio_cmd->add_option("--f", rio.f_file, "JSON series file for f");
  rio_cmd->add_option("--a", rio.a_file, "JSON series file for A");
  rio_cmd->add_option("--l", rio.l_file, "JSON series file for L");
  add_format(rio_cmd, rio.format);

  VerifyFlags ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the identity suite and print its report");
  ver_cmd->add_option("--config", ver.config, "JSON grid config (built-in default otherwise)");
  add_format(ver_cmd, ver.format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (CLI::App* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* target = &app;
    for (CLI::App* sub : app.get_subcommands()) target = sub;
    err << target->help();
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == seq_cmd) return cmd_seq(seq, out);
    if (active == trees_cmd) return cmd_trees(trees, out);
    if (active == inv_cmd) return cmd_involution(inv, out);
    if (active == rio_cmd) return cmd_riordan(rio, out);
    return cmd_verify(ver, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << active->help();
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace catalania::cli
