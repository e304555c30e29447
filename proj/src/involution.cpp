#include "catalania/involution.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <iterator>
#include <utility>

namespace catalania {

namespace {

std::size_t parse_digits(std::string_view text, std::size_t& pos, std::size_t base) {
  const auto begin = text.data() + pos;
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (ec != std::errc{} || end == begin) {
    throw DecodeError("expected a number at position " + std::to_string(base + pos), base + pos);
  }
  pos += static_cast<std::size_t>(end - begin);
  return value;
}

std::string mark(Color color, std::size_t colors) {
  if (color == kUncolored) return ".";
  if (colors <= 1 && color == 1) return "*";
  return "*" + std::to_string(color);
}

// Parses an optional "*" or "*j" at the front of `text`; returns the color
// (kUncolored when absent) and advances `pos`.
Color parse_mark(std::string_view text, std::size_t& pos, std::size_t base) {
  if (pos >= text.size() || text[pos] != '*') return kUncolored;
  ++pos;
  if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    const std::size_t at = pos;
    const std::size_t color = parse_digits(text, pos, base);
    if (color == 0) throw DecodeError("color 0 at position " + std::to_string(base + at), base + at);
    return static_cast<Color>(color);
  }
  return 1;
}

// Calls fn once per way of marking `per_class[j]` of `objects` slots with
// color j+1 (disjointly). Slots are filled color by color, each color's
// slots chosen in lexicographic index order.
void for_each_coloring(std::size_t objects, std::span<const std::size_t> per_class,
                       const std::function<void(const std::vector<Color>&)>& fn) {
  std::vector<Color> slots(objects, kUncolored);
  std::function<void(std::size_t, std::size_t, std::size_t)> place =
      [&](std::size_t cls, std::size_t start, std::size_t remaining) {
        if (cls == per_class.size()) {
          fn(slots);
          return;
        }
        if (remaining == 0) {
          const std::size_t next = cls + 1;
          place(next, 0, next < per_class.size() ? per_class[next] : 0);
          return;
        }
        for (std::size_t s = start; s < objects; ++s) {
          if (slots[s] != kUncolored) continue;
          slots[s] = static_cast<Color>(cls + 1);
          place(cls, s + 1, remaining - 1);
          slots[s] = kUncolored;
        }
      };
  if (per_class.empty()) {
    fn(slots);
    return;
  }
  place(0, 0, per_class[0]);
}

ColoredForest assemble(const Forest& f, const std::vector<VertexAddr>& leaves,
                       std::size_t planted, const std::vector<Color>& slots) {
  ColoredForest c;
  c.forest = f;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (slots[i] != kUncolored) c.leaf_colors.emplace(leaves[i], slots[i]);
  }
  c.root_colors.assign(slots.begin() + static_cast<std::ptrdiff_t>(leaves.size()),
                       slots.begin() + static_cast<std::ptrdiff_t>(leaves.size() + planted));
  return c;
}

void require_planting(std::size_t gamma, std::size_t alpha) {
  if (gamma == 0) throw std::invalid_argument("gamma must be >= 1");
  if (alpha < gamma) throw std::invalid_argument("alpha must be >= gamma");
}

void check_limit(const BigInt& estimate, std::uint64_t max_structs) {
  if (estimate > BigInt(static_cast<unsigned long>(max_structs))) {
    throw SizeLimitError(estimate, max_structs);
  }
}

BigInt as_integer(const Rat& r) {
  if (!r.is_integer()) throw std::logic_error("count is not an integer: " + r.str());
  return r.num();
}

// Calls fn with every count vector 0 <= i <= bound, lexicographically.
void for_each_subvector(const std::vector<std::size_t>& bound,
                        const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> i(bound.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t coord) {
    if (coord == bound.size()) {
      fn(i);
      return;
    }
    for (std::size_t v = 0; v <= bound[coord]; ++v) {
      i[coord] = v;
      rec(coord + 1);
    }
  };
  rec(0);
}

std::vector<std::size_t> difference(const std::vector<std::size_t>& a,
                                    const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

InvolutionCensus census_of(std::vector<ColoredForest> all, std::vector<std::size_t> outdegrees,
                           std::size_t colors) {
  InvolutionCensus census;
  Rat total(0);
  for (ColoredForest& c : all) {
    total += Rat(c.weight());
    const Classification cls = classify(c);
    if (std::holds_alternative<FirstClass>(cls)) {
      census.first.push_back(std::move(c));
    } else if (std::holds_alternative<SecondClass>(cls)) {
      census.second.push_back(std::move(c));
    } else {
      census.exceptional.push_back(std::move(c));
    }
  }
  census.signed_sum = total;

  std::vector<ColoredForest> matched;
  matched.reserve(census.first.size() + census.second.size());
  matched.insert(matched.end(), census.first.begin(), census.first.end());
  matched.insert(matched.end(), census.second.begin(), census.second.end());
  census.matching = check_signed_matching<ColoredForest>(
      matched, [](const ColoredForest& c) { return c.weight(); },
      [&](const ColoredForest& c) { return involute(c, outdegrees); },
      [](const ColoredForest& c) { return classify(c).index(); },
      [colors](const ColoredForest& c) { return encode(c, colors); });
  return census;
}

}  // namespace

std::uint64_t max_structs_from_env() {
  const char* raw = std::getenv("CATALANIA_MAX_STRUCTS");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxStructs;
  const std::string_view text(raw);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || value == 0) {
    throw std::invalid_argument("CATALANIA_MAX_STRUCTS must be a positive integer");
  }
  return value;
}

SizeLimitError::SizeLimitError(const BigInt& estimate, std::uint64_t limit)
    : std::runtime_error("enumeration would produce " + estimate.get_str() +
                         " structures, above the limit of " + std::to_string(limit) +
                         " (set CATALANIA_MAX_STRUCTS to raise it)"),
      estimate_(estimate),
      limit_(limit) {}

std::size_t ColoredForest::colored_roots() const {
  return static_cast<std::size_t>(
      std::count_if(root_colors.begin(), root_colors.end(), [](Color c) { return c != kUncolored; }));
}

std::string encode(const ColoredForest& c, std::size_t colors) {
  std::string out;
  if (c.planted() > 0) {
    out += "P[" + std::to_string(c.planted()) + ":";
    for (std::size_t r = 0; r < c.planted(); ++r) {
      if (r > 0) out += ',';
      out += mark(c.root_colors[r], colors);
    }
    out += "]|";
  }
  out += detail::encode_annotated(c.forest, [&](const VertexAddr& addr) -> std::string {
    const auto it = c.leaf_colors.find(addr);
    return it == c.leaf_colors.end() ? std::string{} : mark(it->second, colors);
  });
  return out;
}

ColoredForest decode_colored(std::string_view text) {
  ColoredForest c;
  std::size_t pos = 0;
  if (text.starts_with("P[")) {
    pos = 2;
    const std::size_t k = parse_digits(text, pos, 0);
    if (pos >= text.size() || text[pos] != ':') {
      throw DecodeError("expected ':' at position " + std::to_string(pos), pos);
    }
    ++pos;
    for (std::size_t r = 0; r < k; ++r) {
      if (r > 0) {
        if (pos >= text.size() || text[pos] != ',') {
          throw DecodeError("expected ',' at position " + std::to_string(pos), pos);
        }
        ++pos;
      }
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        c.root_colors.push_back(kUncolored);
        continue;
      }
      const std::size_t at = pos;
      const Color color = parse_mark(text, pos, 0);
      if (color == kUncolored) throw DecodeError("expected '.' or '*' at position " + std::to_string(at), at);
      c.root_colors.push_back(color);
    }
    if (!text.substr(pos).starts_with("]|")) {
      throw DecodeError("expected \"]|\" at position " + std::to_string(pos), pos);
    }
    pos += 2;
  }
  c.forest = detail::decode_annotated(
      text.substr(pos), pos,
      [&](std::string_view rest, std::size_t at, const VertexAddr& addr) -> std::size_t {
        std::size_t used = 0;
        const Color color = parse_mark(rest, used, at);
        if (color != kUncolored) c.leaf_colors.emplace(addr, color);
        return used;
      });
  return c;
}

Classification classify(const ColoredForest& c) {
  const auto lv = levels(c.forest);
  if (lv.empty()) return Exceptional{};
  const std::size_t deepest = lv.size() - 1;
  const auto colored = [&](const VertexAddr& a) { return c.leaf_colors.contains(a); };

  for (std::size_t back = 0; back < 2 && back <= deepest; ++back) {
    bool parent_seen = false;
    for (const VertexAddr& a : lv[deepest - back]) {
      const bool leaf = vertex_at(c.forest, a).is_leaf();
      if (leaf && colored(a) && !parent_seen) return FirstClass{a};
      if (!leaf) parent_seen = true;
    }
  }

  if (deepest == 0) return Exceptional{};
  for (const VertexAddr& a : lv[deepest]) {
    if (colored(a)) return Exceptional{};
  }
  for (const VertexAddr& a : lv[deepest - 1]) {
    if (!vertex_at(c.forest, a).is_leaf()) return SecondClass{a};
    if (colored(a)) break;
  }
  return Exceptional{};
}

ColoredForest involute(const ColoredForest& c, std::span<const std::size_t> outdegrees) {
  const Classification cls = classify(c);
  ColoredForest out = c;
  if (const auto* first = std::get_if<FirstClass>(&cls)) {
    const Color color = out.leaf_colors.at(first->candidate);
    if (color == kUncolored || color > outdegrees.size()) {
      throw std::logic_error("candidate color has no outdegree");
    }
    out.leaf_colors.erase(first->candidate);
    vertex_at(out.forest, first->candidate).children.assign(outdegrees[color - 1], Tree{});
    return out;
  }
  if (const auto* second = std::get_if<SecondClass>(&cls)) {
    Tree& node = vertex_at(out.forest, second->incumbent);
    const auto it = std::find(outdegrees.begin(), outdegrees.end(), node.children.size());
    if (it == outdegrees.end()) throw std::logic_error("incumbent outdegree is not a class outdegree");
    VertexAddr child = second->incumbent;
    child.path.push_back(0);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      child.path.back() = i;
      if (!node.children[i].is_leaf() || out.leaf_colors.contains(child)) {
        throw std::logic_error("incumbent children must be uncolored leaves");
      }
    }
    node.children.clear();
    out.leaf_colors.emplace(second->incumbent, static_cast<Color>(it - outdegrees.begin() + 1));
    return out;
  }
  throw std::invalid_argument("exceptional structures have no partner");
}

std::vector<ColoredForest> enumerate_colored(std::size_t beta, std::size_t n_internal,
                                             std::size_t n_colored, std::size_t gamma,
                                             std::size_t alpha) {
  require_planting(gamma, alpha);
  const std::size_t planted = alpha - gamma;
  const std::size_t per_class[] = {n_colored};
  std::vector<ColoredForest> out;
  visit_kary_forests(beta, n_internal, gamma, [&](std::span<const std::size_t> code) {
    const Forest f = forest_from_code(code);
    const auto leaves = leaves_preorder(f);
    for_each_coloring(leaves.size() + planted, per_class, [&](const std::vector<Color>& slots) {
      out.push_back(assemble(f, leaves, planted, slots));
    });
  });
  return out;
}

std::vector<ColoredForest> enumerate_colored_vector(const VecProfile& internal,
                                                    std::span<const std::size_t> colored_per_class,
                                                    std::size_t gamma, std::size_t alpha) {
  require_planting(gamma, alpha);
  if (colored_per_class.size() != internal.classes()) {
    throw std::invalid_argument("one colored count per outdegree class is required");
  }
  const std::size_t planted = alpha - gamma;
  std::vector<ColoredForest> out;
  visit_mixed_forests(internal, gamma, [&](std::span<const std::size_t> code) {
    const Forest f = forest_from_code(code);
    const auto leaves = leaves_preorder(f);
    for_each_coloring(leaves.size() + planted, colored_per_class,
                      [&](const std::vector<Color>& slots) {
                        out.push_back(assemble(f, leaves, planted, slots));
                      });
  });
  return out;
}

BigInt structure_count(std::size_t beta, std::size_t n, std::size_t gamma, std::size_t alpha) {
  require_planting(gamma, alpha);
  Rat total(0);
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t internal = n - i;
    const Rat objects = to_rat((beta - 1) * internal + alpha);
    total += catalan_gen(internal, to_rat(beta), to_rat(gamma)) * binom(objects, i);
  }
  return as_integer(total);
}

BigInt structure_count_vector(const VecProfile& n_total, std::size_t gamma, std::size_t alpha) {
  require_planting(gamma, alpha);
  Rat total(0);
  for_each_subvector(n_total.counts(), [&](const std::vector<std::size_t>& i) {
    const VecProfile internal = n_total.with_counts(difference(n_total.counts(), i));
    const Rat objects = to_rat(internal.dot_outdegrees_minus_one() + alpha);
    total += catalan_vector(internal, gamma) * multinomial(objects, i);
  });
  return as_integer(total);
}

std::vector<ColoredForest> structures_for(std::size_t beta, std::size_t n, std::size_t gamma,
                                          std::size_t alpha, std::uint64_t max_structs) {
  if (beta == 0) throw std::invalid_argument("beta must be >= 1");
  check_limit(structure_count(beta, n, gamma, alpha), max_structs);
  std::vector<ColoredForest> out;
  for (std::size_t i = 0; i <= n; ++i) {
    auto part = enumerate_colored(beta, n - i, i, gamma, alpha);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<ColoredForest> structures_for_vector(const VecProfile& n_total, std::size_t gamma,
                                                 std::size_t alpha, std::uint64_t max_structs) {
  check_limit(structure_count_vector(n_total, gamma, alpha), max_structs);
  std::vector<ColoredForest> out;
  for_each_subvector(n_total.counts(), [&](const std::vector<std::size_t>& i) {
    const VecProfile internal = n_total.with_counts(difference(n_total.counts(), i));
    auto part = enumerate_colored_vector(internal, i, gamma, alpha);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  });
  return out;
}

Rat signed_sum(std::size_t beta, std::size_t n, std::size_t gamma, std::size_t alpha,
               std::uint64_t max_structs) {
  std::int64_t total = 0;
  for (const ColoredForest& c : structures_for(beta, n, gamma, alpha, max_structs)) {
    total += c.weight();
  }
  return Rat(total);
}

Rat signed_sum_vector(const VecProfile& n_total, std::size_t gamma, std::size_t alpha,
                      std::uint64_t max_structs) {
  std::int64_t total = 0;
  for (const ColoredForest& c : structures_for_vector(n_total, gamma, alpha, max_structs)) {
    total += c.weight();
  }
  return Rat(total);
}

InvolutionCensus involution_census(std::size_t beta, std::size_t n, std::size_t gamma,
                                   std::size_t alpha, std::uint64_t max_structs) {
  return census_of(structures_for(beta, n, gamma, alpha, max_structs), {beta}, 1);
}

InvolutionCensus involution_census_vector(const VecProfile& n_total, std::size_t gamma,
                                          std::size_t alpha, std::uint64_t max_structs) {
  return census_of(structures_for_vector(n_total, gamma, alpha, max_structs),
                   n_total.outdegrees(), n_total.classes());
}

}  // namespace catalania
