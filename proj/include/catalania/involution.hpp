#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "catalania/counting.hpp"
#include "catalania/exact.hpp"
#include "catalania/forest.hpp"

namespace catalania {

/// Colors are 1..t; 0 marks an uncolored planted root.
using Color = std::uint32_t;
inline constexpr Color kUncolored = 0;

/// Default enumeration bound, overridable through CATALANIA_MAX_STRUCTS.
inline constexpr std::uint64_t kDefaultMaxStructs = 5'000'000;

/// Reads CATALANIA_MAX_STRUCTS, falling back to kDefaultMaxStructs. Throws
/// std::invalid_argument if the variable is set but not a positive integer.
std::uint64_t max_structs_from_env();

class SizeLimitError : public std::runtime_error {
public:
  SizeLimitError(const BigInt& estimate, std::uint64_t limit);
  const BigInt& estimate() const { return estimate_; }
  std::uint64_t limit() const { return limit_; }

private:
  BigInt estimate_;
  std::uint64_t limit_;
};

/// A forest with `planted` extra roots attached above its first component.
/// Only leaves of the forest and planted roots carry colors; planted roots
/// are neither leaves nor internal vertices and have no depth.
struct ColoredForest {
  Forest forest;
  std::map<VertexAddr, Color> leaf_colors;
  std::vector<Color> root_colors;  // one entry per planted root

  std::size_t planted() const { return root_colors.size(); }
  std::size_t colored_leaves() const { return leaf_colors.size(); }
  std::size_t colored_roots() const;
  std::size_t colored_total() const { return colored_leaves() + colored_roots(); }
  /// (-1)^(colored leaves + colored planted roots)
  int weight() const { return colored_total() % 2 == 0 ? 1 : -1; }

  friend bool operator==(const ColoredForest&, const ColoredForest&) = default;
};

/// Colored encoding, extending the forest grammar:
///   colored := [ "P[" k ":" mark ("," mark)* "]|" ] forest
///   mark    := "." | "*" | "*" digits
///   leaf    := "o" [ "*" [digits] ]
/// A bare "*" is color 1 and is what single-color encodings emit; with
/// `colors` > 1 every color is written with its number.
std::string encode(const ColoredForest& c, std::size_t colors = 1);
ColoredForest decode_colored(std::string_view text);

struct FirstClass {
  VertexAddr candidate;
  friend bool operator==(const FirstClass&, const FirstClass&) = default;
};
struct SecondClass {
  VertexAddr incumbent;
  friend bool operator==(const SecondClass&, const SecondClass&) = default;
};
struct Exceptional {
  friend bool operator==(const Exceptional&, const Exceptional&) = default;
};
using Classification = std::variant<FirstClass, SecondClass, Exceptional>;

/// Levels are forest-global (all roots at depth 0). With D the maximum
/// depth, the structure is first class if some colored leaf at depth D or
/// D-1 has no vertex with children to its left on its level; the candidate
/// is the deepest such leaf, leftmost among those. Otherwise it is second
/// class if no leaf at depth D is colored and some internal vertex at depth
/// D-1 has no colored leaf to its left; the incumbent is the leftmost one.
/// Anything else (no internal vertices and no colored leaves) is exceptional.
Classification classify(const ColoredForest& c);

/// The sign-reversing involution. `outdegrees` is {beta} for single-color
/// structures, or the strictly increasing p_1 < ... < p_t in the vector
/// scheme. A candidate of color j gains outdegrees[j-1] uncolored leaves and
/// loses its color; an incumbent with outdegrees[j-1] children loses them and
/// takes color j.
///
/// Throws std::invalid_argument on exceptional input and std::logic_error if
/// the incumbent's outdegree is not listed or its children are not uncolored
/// leaves.
ColoredForest involute(const ColoredForest& c, std::span<const std::size_t> outdegrees);

/// All (alpha - gamma)-planted forests of gamma beta-ary trees with
/// `n_internal` internal vertices and exactly `n_colored` colored objects
/// (leaves and planted roots, single color). Throws std::invalid_argument
/// unless alpha >= gamma >= 1 and beta >= 1.
std::vector<ColoredForest> enumerate_colored(std::size_t beta, std::size_t n_internal,
                                             std::size_t n_colored, std::size_t gamma,
                                             std::size_t alpha);

/// Vector scheme: mixed forests with internal.counts() internal vertices per
/// outdegree class, whose leaves and planted roots carry exactly
/// colored_per_class[j] marks of color j+1.
std::vector<ColoredForest> enumerate_colored_vector(const VecProfile& internal,
                                                    std::span<const std::size_t> colored_per_class,
                                                    std::size_t gamma, std::size_t alpha);

/// Every structure contributing to the alternating sum at index n: for each
/// i, enumerate_colored(beta, n - i, i, gamma, alpha). Checks the closed-form
/// size estimate against `max_structs` first and throws SizeLimitError.
std::vector<ColoredForest> structures_for(std::size_t beta, std::size_t n, std::size_t gamma,
                                          std::size_t alpha,
                                          std::uint64_t max_structs = kDefaultMaxStructs);

/// Vector counterpart of structures_for: for every i <= n_total, internal
/// counts n_total - i with i_j marks of color j.
std::vector<ColoredForest> structures_for_vector(const VecProfile& n_total, std::size_t gamma,
                                                 std::size_t alpha,
                                                 std::uint64_t max_structs = kDefaultMaxStructs);

/// Closed-form number of structures structures_for would produce.
BigInt structure_count(std::size_t beta, std::size_t n, std::size_t gamma, std::size_t alpha);
BigInt structure_count_vector(const VecProfile& n_total, std::size_t gamma, std::size_t alpha);

/// Total weight of structures_for(beta, n, gamma, alpha), by enumeration.
Rat signed_sum(std::size_t beta, std::size_t n, std::size_t gamma, std::size_t alpha,
               std::uint64_t max_structs = kDefaultMaxStructs);

/// Total weight of structures_for_vector(...), by enumeration.
Rat signed_sum_vector(const VecProfile& n_total, std::size_t gamma, std::size_t alpha,
                      std::uint64_t max_structs = kDefaultMaxStructs);

/// Outcome of a signed-matching check; `counterexample` indexes the first
/// offending structure.
struct MatchingReport {
  bool ok = true;
  std::optional<std::size_t> counterexample;
  std::string reason;
};

/// Certifies a signed matching: `partner` must map every structure to a
/// different member of `items` whose partner is the original, on the other
/// `side`, with opposite `weight`. Such a matching forces total weight 0.
/// `key` gives a string identity used for membership lookups.
template <typename S, typename Weight, typename Partner, typename Side, typename Key>
MatchingReport check_signed_matching(std::span<const S> items, Weight weight, Partner partner,
                                     Side side, Key key) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!index.emplace(key(items[i]), i).second) {
      return {false, i, "duplicate structure"};
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    const S image = partner(items[i]);
    const auto it = index.find(key(image));
    if (it == index.end()) return {false, i, "partner lies outside the set"};
    if (it->second == i) return {false, i, "fixed point"};
    if (key(partner(image)) != key(items[i])) return {false, i, "partner is not an involution"};
    if (side(image) == side(items[i])) return {false, i, "partner does not swap classes"};
    if (weight(image) != -weight(items[i])) return {false, i, "partner does not reverse weight"};
  }
  return {};
}

/// The census behind one alternating sum, split by classification.
struct InvolutionCensus {
  std::vector<ColoredForest> first;
  std::vector<ColoredForest> second;
  std::vector<ColoredForest> exceptional;
  Rat signed_sum;
  MatchingReport matching;  // involute restricted to first ∪ second
};

InvolutionCensus involution_census(std::size_t beta, std::size_t n, std::size_t gamma,
                                   std::size_t alpha,
                                   std::uint64_t max_structs = kDefaultMaxStructs);

InvolutionCensus involution_census_vector(const VecProfile& n_total, std::size_t gamma,
                                          std::size_t alpha,
                                          std::uint64_t max_structs = kDefaultMaxStructs);

}  // namespace catalania
