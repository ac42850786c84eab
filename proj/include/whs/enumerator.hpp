#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "whs/bitcode.hpp"

namespace whs {

// Query plus weights plus the permutation that sorts weights ascending.
// perm(s) is the original 1-based bit position holding the s-th smallest
// weight (stable sort, so ties keep original order).
class WeightedQuery {
 public:
  WeightedQuery(BinaryCode query, WeightVector weights);

  const BinaryCode& query() const { return query_; }
  const WeightVector& weights() const { return weights_; }
  int width() const { return query_.width(); }

  int perm(int s) const { return perm_[static_cast<size_t>(s - 1)]; }
  double sorted_weight(int s) const { return sorted_w_[static_cast<size_t>(s - 1)]; }

  // Maps a mask over sorted bit slots back to a code in original bit order.
  BinaryCode to_original(const BinaryCode& sorted_mask) const;

 private:
  BinaryCode query_;
  WeightVector weights_;
  std::vector<int> perm_;
  std::vector<double> sorted_w_;
};

// Lazily enumerates all 2^b codes in ascending weighted distance to the
// query with O(b) candidate evaluations per emitted element. State is the
// emitted sequence (codes kept as XOR masks in sorted bit order) plus one
// pointer and one window limit per bit.
class CseEnumerator {
 public:
  CseEnumerator(BinaryCode query, WeightVector weights);

  // Elements are 1-based; element 1 is the query itself at distance 0.
  std::size_t emitted() const { return seq_.size(); }

  // (code in original bit order, distance) of an already-emitted element.
  std::pair<BinaryCode, double> element(std::size_t i) const;

  double distance_of(std::size_t i) const;

  // Emits the next element, or nullopt after all 2^b codes are out.
  std::optional<std::pair<BinaryCode, double>> next();

  // Instrumentation.
  std::size_t last_candidate_evals() const { return last_candidate_evals_; }
  std::size_t max_candidate_evals() const { return max_candidate_evals_; }
  std::size_t total_skip_steps() const { return total_skip_steps_; }
  // Sequence index of the base element the last emission was extended from.
  std::size_t last_base_index() const { return last_base_index_; }

  const WeightedQuery& weighted_query() const { return wq_; }

 private:
  struct Entry {
    BinaryCode mask;  // h XOR q, bits in sorted-weight order
    double dist;
  };

  static constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

  // True if seq_[pos-1] lies outside U^{j-1}, i.e. its rightmost flipped
  // sorted-bit position is >= j. Such entries are foreign to pointer j.
  bool foreign(std::uint64_t pos, int j) const {
    return seq_[static_cast<size_t>(pos - 1)].mask.any_at_or_above(j);
  }

  WeightedQuery wq_;
  int b_;
  std::vector<Entry> seq_;
  std::vector<std::uint64_t> p_;  // p_[j-1], 1-based sequence positions
  std::vector<std::uint64_t> l_;  // l_[j-1], window limits (saturating)

  std::size_t last_candidate_evals_ = 0;
  std::size_t max_candidate_evals_ = 0;
  std::size_t total_skip_steps_ = 0;
  std::size_t last_base_index_ = 0;
};

}  // namespace whs
