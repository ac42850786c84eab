#include "whs/single_table.hpp"

#include <algorithm>
#include <stdexcept>

#include "whs/enumerator.hpp"

namespace whs {

SingleTable::SingleTable(const std::vector<BinaryCode>& codes) : n_(codes.size()) {
  if (codes.empty()) return;
  width_ = codes.front().width();
  if (width_ > kMaxWidth)
    throw std::invalid_argument("SingleTable: width > 32, use a multi-index over substrings");
  for (const auto& c : codes)
    if (c.width() != width_) throw std::invalid_argument("SingleTable: mixed code widths");

  dense_ = width_ <= kDenseWidthLimit;
  if (dense_) {
    dense_buckets_.resize(std::size_t{1} << width_);
    for (std::uint32_t i = 0; i < codes.size(); ++i)
      dense_buckets_[codes[i].as_u32()].push_back(i);
  } else {
    sparse_buckets_.reserve(codes.size());
    for (std::uint32_t i = 0; i < codes.size(); ++i)
      sparse_buckets_[codes[i].as_u32()].push_back(i);
  }
}

const std::vector<std::uint32_t>* SingleTable::bucket(const BinaryCode& code) const {
  if (n_ == 0) return nullptr;
  if (code.width() != width_) throw std::invalid_argument("SingleTable::bucket: width mismatch");
  std::uint32_t key = code.as_u32();
  if (dense_) {
    const auto& b = dense_buckets_[key];
    return b.empty() ? nullptr : &b;
  }
  auto it = sparse_buckets_.find(key);
  return it == sparse_buckets_.end() ? nullptr : &it->second;
}

std::size_t SingleTable::nonempty_buckets() const {
  if (dense_) {
    std::size_t c = 0;
    for (const auto& b : dense_buckets_)
      if (!b.empty()) ++c;
    return c;
  }
  return sparse_buckets_.size();
}

SingleTable build_single(const std::vector<BinaryCode>& codes) { return SingleTable(codes); }

SearchResult knn_single(const SingleTable& table, const BinaryCode& q, const WeightVector& w,
                        std::size_t k) {
  if (k < 1) throw std::invalid_argument("knn_single: K must be >= 1");
  SearchResult res;
  if (table.item_count() == 0) return res;
  if (q.width() != table.width()) throw std::invalid_argument("knn_single: width mismatch");

  CseEnumerator e(q, w);
  std::size_t i = 0;
  while (res.neighbors.size() <= k) {
    std::pair<BinaryCode, double> elem;
    if (i == 0) {
      elem = e.element(1);
    } else {
      auto nx = e.next();
      if (!nx) break;  // probed every bucket index
      elem = *nx;
    }
    ++i;
    ++res.probes;
    if (const auto* b = table.bucket(elem.first))
      for (std::uint32_t id : *b) res.neighbors.push_back(Neighbor{id, elem.second});
  }
  res.sequence_length = e.emitted();
  res.max_candidate_evals = e.max_candidate_evals();
  // Bucket order is non-decreasing in distance, so neighbors are sorted.
  return res;
}

}  // namespace whs
