#include "catalania/counting.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace catalania {

VecProfile::VecProfile(std::vector<std::size_t> counts, std::vector<std::size_t> outdegrees)
    : counts_(std::move(counts)), outdegrees_(std::move(outdegrees)) {
  if (counts_.empty() || counts_.size() != outdegrees_.size()) {
    throw std::invalid_argument("profile needs equal-length, non-empty count and outdegree lists");
  }
  for (std::size_t j = 0; j < outdegrees_.size(); ++j) {
    if (outdegrees_[j] == 0) throw std::invalid_argument("profile outdegrees must be >= 1");
    if (j > 0 && outdegrees_[j] <= outdegrees_[j - 1]) {
      throw std::invalid_argument("profile outdegrees must be strictly increasing");
    }
  }
}

std::size_t VecProfile::dot_outdegrees() const {
  return std::inner_product(counts_.begin(), counts_.end(), outdegrees_.begin(), std::size_t{0});
}

std::size_t VecProfile::dot_outdegrees_minus_one() const {
  return dot_outdegrees() - total_internal();
}

std::size_t VecProfile::total_internal() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

VecProfile VecProfile::with_counts(std::vector<std::size_t> counts) const {
  return VecProfile(std::move(counts), outdegrees_);
}

std::size_t VecProfile::class_of_outdegree(std::size_t outdegree) const {
  for (std::size_t j = 0; j < outdegrees_.size(); ++j) {
    if (outdegrees_[j] == outdegree) return j;
  }
  return outdegrees_.size();
}

Rat catalan_gen(std::size_t n, const Rat& beta, const Rat& gamma) {
  if (n == 0) return Rat(1);
  const Rat top = beta * to_rat(n) + gamma - Rat(1);
  return gamma / to_rat(n) * binom(top, n - 1);
}

Rat catalan_vector(const VecProfile& profile, std::size_t gamma) {
  if (profile.is_empty()) return Rat(1);
  if (gamma == 0) return Rat(0);
  const Rat top = to_rat(profile.dot_outdegrees() + gamma);
  return to_rat(gamma) / top * multinomial(top, profile.counts());
}

std::vector<Rat> catalan_sequence(const Rat& beta, const Rat& gamma, std::size_t n_max) {
  std::vector<Rat> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(catalan_gen(n, beta, gamma));
  return out;
}

}  // namespace catalania
