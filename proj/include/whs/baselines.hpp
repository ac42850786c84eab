#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "whs/bitcode.hpp"
#include "whs/search_result.hpp"

namespace whs {

// Exhaustive scan with per-bit WHD evaluation; the correctness anchor.
SearchResult linear_scan_knn(const std::vector<BinaryCode>& codes, const BinaryCode& q,
                             const WeightVector& w, std::size_t k);

// Per-query precomputed 256-entry tables, one per 8-bit chunk; entry v of
// chunk c is the weighted popcount of v under that chunk's weights, so the
// WHD to an item is the sum of one lookup per chunk of (q XOR g).
class ChunkTables {
 public:
  ChunkTables(const BinaryCode& q, const WeightVector& w);

  double distance(const BinaryCode& g) const;
  int chunk_count() const { return static_cast<int>(tables_.size()); }

 private:
  BinaryCode q_;
  std::vector<std::array<double, 256>> tables_;
};

// Exhaustive scan accelerated by ChunkTables; same results as linear scan.
SearchResult lookup_scan_knn(const std::vector<BinaryCode>& codes, const BinaryCode& q,
                             const WeightVector& w, std::size_t k);

// Independent best-first enumerator over subset states in sorted-weight
// order; cross-validates the constant-extension enumerator. Deliberately
// shares no code with it.
std::vector<std::pair<BinaryCode, double>> heap_sequence_oracle(const BinaryCode& q,
                                                                const WeightVector& w,
                                                                std::size_t count);

// Exact Euclidean KNN over raw vectors (row-major, n x dim); ground truth
// for precision@K.
std::vector<std::uint32_t> brute_force_knn(const std::vector<float>& vectors, std::size_t dim,
                                           const std::vector<float>& query, std::size_t k);

}  // namespace whs
