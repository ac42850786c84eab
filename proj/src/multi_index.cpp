#include "whs/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whs/enumerator.hpp"

namespace whs {

int choose_m(int b, std::size_t n) {
  if (b < 1) throw std::invalid_argument("choose_m: b must be >= 1");
  if (n < 2) throw std::invalid_argument("choose_m: n must be >= 2");
  int m = static_cast<int>(std::lround(b / std::log2(static_cast<double>(n))));
  m = std::clamp(m, 1, b);
  while ((b + m - 1) / m > SingleTable::kMaxWidth) ++m;
  return m;
}

MultiIndex::MultiIndex(std::vector<BinaryCode> codes, int m) : codes_(std::move(codes)) {
  if (codes_.empty()) throw std::invalid_argument("MultiIndex: empty code set");
  width_ = codes_.front().width();
  if (m < 1 || m > width_) throw std::invalid_argument("MultiIndex: m out of range");
  for (const auto& c : codes_)
    if (c.width() != width_) throw std::invalid_argument("MultiIndex: mixed code widths");

  int longer = width_ % m;  // first slices take the extra bit
  int base = width_ / m;
  int start = 1;
  for (int k = 0; k < m; ++k) {
    int len = base + (k < longer ? 1 : 0);
    if (len > SingleTable::kMaxWidth)
      throw std::invalid_argument("MultiIndex: substring longer than 32 bits, increase m");
    split_.push_back(Slice{start, len});
    start += len;
  }

  std::vector<BinaryCode> sub(codes_.size());
  for (const auto& sl : split_) {
    for (std::size_t i = 0; i < codes_.size(); ++i)
      sub[i] = extract_substring(codes_[i], sl.start, sl.len);
    tables_.emplace_back(sub);
  }
}

MultiIndex build_multi(std::vector<BinaryCode> codes, int m) {
  return MultiIndex(std::move(codes), m);
}

SearchResult knn_multi(const MultiIndex& index, const BinaryCode& q, const WeightVector& w,
                       std::size_t k) {
  if (k < 1) throw std::invalid_argument("knn_multi: K must be >= 1");
  if (q.width() != index.width() || w.width() != index.width())
    throw std::invalid_argument("knn_multi: width mismatch");

  const int m = index.table_count();
  std::vector<CseEnumerator> enums;
  enums.reserve(static_cast<size_t>(m));
  for (int t = 0; t < m; ++t) {
    const auto& sl = index.split()[static_cast<size_t>(t)];
    enums.emplace_back(extract_substring(q, sl.start, sl.len), w.slice(sl.start, sl.len));
  }

  SearchResult res;
  KnnHeap heap(k);
  std::vector<std::uint8_t> seen(index.item_count(), 0);
  std::vector<std::pair<BinaryCode, double>> probe(static_cast<size_t>(m));

  std::size_t L = 0;
  bool exhausted = false;
  while (!exhausted) {
    ++L;
    for (int t = 0; t < m; ++t) {
      if (L == 1) {
        probe[static_cast<size_t>(t)] = enums[static_cast<size_t>(t)].element(1);
      } else {
        auto nx = enums[static_cast<size_t>(t)].next();
        if (!nx) {
          // This table has probed every bucket, so every item was offered
          // to the heap already; the heap is exact.
          exhausted = true;
          break;
        }
        probe[static_cast<size_t>(t)] = *nx;
      }
    }
    if (exhausted) {
      --L;
      break;
    }

    double rhs = 0.0;
    for (int t = 0; t < m; ++t) {
      const auto& [code, dist] = probe[static_cast<size_t>(t)];
      rhs += dist;
      ++res.probes;
      if (const auto* b = index.table(t).bucket(code)) {
        for (std::uint32_t id : *b) {
          if (seen[id]) continue;
          seen[id] = 1;
          double d = weighted_distance(q, index.code(id), w);
          ++res.distance_computations;
          heap.offer(id, d);
        }
      }
    }

    if (heap.full() && heap.top_dist() <= rhs) {
      res.terminated_by_certificate = true;
      res.certificate_lhs = heap.top_dist();
      res.certificate_rhs = rhs;
      break;
    }
  }

  res.neighbors = heap.sorted();
  res.sequence_length = L;
  for (const auto& e : enums)
    res.max_candidate_evals = std::max(res.max_candidate_evals, e.max_candidate_evals());
  return res;
}

}  // namespace whs
