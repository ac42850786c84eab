#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "whs/bitcode.hpp"
#include "whs/search_result.hpp"

namespace whs {

// One hash table with codes as direct bucket addresses. Dense direct
// addressing up to 28 bits, an open hash map above that (b <= 32 always).
class SingleTable {
 public:
  static constexpr int kMaxWidth = 32;
  static constexpr int kDenseWidthLimit = 28;

  explicit SingleTable(const std::vector<BinaryCode>& codes);

  int width() const { return width_; }
  std::size_t item_count() const { return n_; }

  // Bucket for a code value; nullptr when empty.
  const std::vector<std::uint32_t>* bucket(const BinaryCode& code) const;

  std::size_t nonempty_buckets() const;

 private:
  int width_ = 0;
  std::size_t n_ = 0;
  bool dense_ = false;
  std::vector<std::vector<std::uint32_t>> dense_buckets_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> sparse_buckets_;
};

SingleTable build_single(const std::vector<BinaryCode>& codes);

// Algorithm: probe buckets in ascending weighted distance until more than K
// candidates are collected (the whole final bucket is kept; callers truncate).
SearchResult knn_single(const SingleTable& table, const BinaryCode& q, const WeightVector& w,
                        std::size_t k);

}  // namespace whs
