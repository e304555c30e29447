#pragma once

#include <cstddef>
#include <vector>

#include "catalania/exact.hpp"

namespace catalania {

/// Internal-vertex counts per outdegree class.
///
/// `counts[j]` internal vertices have outdegree `outdegrees[j]`. Outdegrees
/// are strictly increasing and at least 1, so an internal vertex's outdegree
/// identifies its class.
class VecProfile {
public:
  /// Throws std::invalid_argument unless both lists have the same nonzero
  /// length and the outdegrees are strictly increasing and positive.
  VecProfile(std::vector<std::size_t> counts, std::vector<std::size_t> outdegrees);

  const std::vector<std::size_t>& counts() const { return counts_; }
  const std::vector<std::size_t>& outdegrees() const { return outdegrees_; }
  std::size_t classes() const { return counts_.size(); }

  /// Sum of counts[j] * outdegrees[j].
  std::size_t dot_outdegrees() const;
  /// Sum of counts[j] * (outdegrees[j] - 1).
  std::size_t dot_outdegrees_minus_one() const;
  std::size_t total_internal() const;
  bool is_empty() const { return total_internal() == 0; }

  /// Same outdegrees, different counts (validated).
  VecProfile with_counts(std::vector<std::size_t> counts) const;

  /// Index of the class with the given outdegree, or classes() if none.
  std::size_t class_of_outdegree(std::size_t outdegree) const;

  friend bool operator==(const VecProfile&, const VecProfile&) = default;

private:
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> outdegrees_;
};

/// Generalized Catalan number C_{beta,gamma}(n), the number of ordered
/// forests of gamma beta-ary trees with n internal vertices.
///
/// Evaluated as (gamma/n) binom(beta n + gamma - 1, n - 1) for n >= 1, which
/// agrees with gamma/(beta n + gamma) binom(beta n + gamma, n) wherever the
/// latter is defined and has no pole at beta n + gamma = 0. C(0) = 1.
Rat catalan_gen(std::size_t n, const Rat& beta, const Rat& gamma);

/// Vector Catalan number Q(n; p; gamma): ordered forests with gamma
/// components and counts[j] internal vertices of outdegree p_j.
/// Q(0; p; gamma) = 1 for every gamma, Q(n; p; 0) = 0 for n != 0.
Rat catalan_vector(const VecProfile& profile, std::size_t gamma);

/// [catalan_gen(0, beta, gamma), ..., catalan_gen(n_max, beta, gamma)]
std::vector<Rat> catalan_sequence(const Rat& beta, const Rat& gamma, std::size_t n_max);

}  // namespace catalania
