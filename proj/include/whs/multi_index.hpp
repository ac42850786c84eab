#pragma once

#include <cstdint>
#include <vector>

#include "whs/bitcode.hpp"
#include "whs/knn_heap.hpp"
#include "whs/search_result.hpp"
#include "whs/single_table.hpp"

namespace whs {

// m = round(b / log2 n), clamped to [1, b] and grown until every substring
// fits a single table (<= 32 bits).
int choose_m(int b, std::size_t n);

// m hash tables over disjoint contiguous substrings plus the full codes for
// exact re-ranking. The first (b mod m) slices get the extra bit.
class MultiIndex {
 public:
  struct Slice {
    int start;  // 1-based
    int len;
  };

  MultiIndex(std::vector<BinaryCode> codes, int m);

  int width() const { return width_; }
  int table_count() const { return static_cast<int>(tables_.size()); }
  std::size_t item_count() const { return codes_.size(); }
  const std::vector<Slice>& split() const { return split_; }
  const SingleTable& table(int k) const { return tables_[static_cast<size_t>(k)]; }
  const BinaryCode& code(std::uint32_t id) const { return codes_[id]; }

 private:
  int width_ = 0;
  std::vector<Slice> split_;
  std::vector<SingleTable> tables_;
  std::vector<BinaryCode> codes_;
};

MultiIndex build_multi(std::vector<BinaryCode> codes, int m);

// Per iteration every table's enumerator emits one bucket index; candidates
// are re-ranked with the full-code distance, deduplicated, and offered to a
// K-bounded max-heap. Stops when the heap is full and the heap top is at most
// the sum of the per-table probed-index distances, or on enumerator
// exhaustion (at which point every item has been seen).
SearchResult knn_multi(const MultiIndex& index, const BinaryCode& q, const WeightVector& w,
                       std::size_t k);

}  // namespace whs
