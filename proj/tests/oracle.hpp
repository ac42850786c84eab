#pragma once

// Test-only ground truth, independent of the enumerator implementation:
// exhaustive enumeration of weighted sums, and the per-prefix sorted
// sequences the enumerator's correctness argument is stated over.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "whs/bitcode.hpp"

namespace whs::testing {

// All 2^b codes with their weighted distances to q, ascending by distance
// (ties by code value). b must be small enough to enumerate.
inline std::vector<std::pair<double, BinaryCode>> brute_force_sequence(const BinaryCode& q,
                                                                       const WeightVector& w) {
  const int b = q.width();
  std::vector<std::pair<double, BinaryCode>> all;
  all.reserve(std::size_t{1} << b);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << b); ++v) {
    BinaryCode g = BinaryCode::from_words(b, v);
    all.emplace_back(weighted_distance(q, g, w), g);
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& c) {
    if (a.first != c.first) return a.first < c.first;
    return a.second < c.second;
  });
  return all;
}

// Sorted subset-sum sequences over weight prefixes: result[j] is the
// ascending list of all 2^j sums over the j smallest weights. result[j][i-1]
// realizes the weighted sum of the i-th smallest state whose flipped bits
// all lie in the j cheapest positions.
inline std::vector<std::vector<double>> prefix_sum_sequences(std::vector<double> weights) {
  std::sort(weights.begin(), weights.end());
  std::vector<std::vector<double>> out;
  out.push_back({0.0});
  for (double wj : weights) {
    const auto& prev = out.back();
    std::vector<double> cur;
    cur.reserve(prev.size() * 2);
    for (double v : prev) cur.push_back(v);
    for (double v : prev) cur.push_back(v + wj);
    std::sort(cur.begin(), cur.end());
    out.push_back(std::move(cur));
  }
  return out;
}

// Splits a distance-sorted run into groups of equal distance (gap > tol
// starts a new group) and returns each group's code set, sorted.
inline std::vector<std::vector<BinaryCode>> group_codes_by_distance(
    const std::vector<std::pair<double, BinaryCode>>& seq, double tol) {
  std::vector<std::vector<BinaryCode>> groups;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i == 0 || seq[i].first - seq[i - 1].first > tol) groups.emplace_back();
    groups.back().push_back(seq[i].second);
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

inline WeightVector random_weights(int b, std::mt19937_64& rng, bool with_ties_and_zeros = true) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> w(static_cast<size_t>(b));
  for (auto& x : w) x = uni(rng);
  if (with_ties_and_zeros && b >= 3) {
    // force at least one tie and one zero weight in some trials
    if (rng() % 2 == 0) w[1] = w[0];
    if (rng() % 2 == 0) w[static_cast<size_t>(b - 1)] = 0.0;
  }
  return WeightVector(std::move(w));
}

inline BinaryCode random_code(int b, std::mt19937_64& rng) {
  return BinaryCode::from_words(b, rng(), rng());
}

}  // namespace whs::testing
