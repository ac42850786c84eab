#include "whs/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "whs/knn_heap.hpp"

namespace whs {

namespace {

// Direct per-bit evaluation of the weighted sum; this is the cost model the
// lookup acceleration is measured against, so it stays a plain bit loop.
double whd_per_bit(const BinaryCode& q, const BinaryCode& g, const double* w, int b) {
  double d = 0.0;
  std::uint64_t x = q.low() ^ g.low();
  int nlo = b < 64 ? b : 64;
  for (int j = 0; j < nlo; ++j) d += w[j] * static_cast<double>((x >> j) & 1u);
  if (b > 64) {
    x = q.high() ^ g.high();
    for (int j = 0; j < b - 64; ++j) d += w[j + 64] * static_cast<double>((x >> j) & 1u);
  }
  return d;
}

}  // namespace

SearchResult linear_scan_knn(const std::vector<BinaryCode>& codes, const BinaryCode& q,
                             const WeightVector& w, std::size_t k) {
  if (q.width() != w.width()) throw std::invalid_argument("linear_scan_knn: width mismatch");
  const int b = q.width();
  const double* wv = w.values().data();
  KnnHeap heap(k);
  for (std::uint32_t i = 0; i < codes.size(); ++i)
    heap.offer(i, whd_per_bit(q, codes[i], wv, b));
  SearchResult res;
  res.neighbors = heap.sorted();
  res.distance_computations = codes.size();
  return res;
}

ChunkTables::ChunkTables(const BinaryCode& q, const WeightVector& w) : q_(q) {
  if (q.width() != w.width()) throw std::invalid_argument("ChunkTables: width mismatch");
  const int b = q.width();
  const int nc = (b + 7) / 8;
  tables_.resize(static_cast<size_t>(nc));
  for (int c = 0; c < nc; ++c) {
    for (int v = 0; v < 256; ++v) {
      double d = 0.0;
      for (int jj = 0; jj < 8; ++jj) {
        int j = c * 8 + jj + 1;            // 1-based bit position
        if (j > b) break;                  // padding bits carry weight 0
        if ((v >> jj) & 1) d += w[j];
      }
      tables_[static_cast<size_t>(c)][static_cast<size_t>(v)] = d;
    }
  }
}

double ChunkTables::distance(const BinaryCode& g) const {
  std::uint64_t x0 = q_.low() ^ g.low();
  std::uint64_t x1 = q_.high() ^ g.high();
  double d = 0.0;
  const int nc = chunk_count();
  for (int c = 0; c < nc; ++c) {
    std::uint64_t word = c < 8 ? x0 : x1;
    unsigned byte = static_cast<unsigned>((word >> ((c & 7) * 8)) & 0xffu);
    d += tables_[static_cast<size_t>(c)][byte];
  }
  return d;
}

SearchResult lookup_scan_knn(const std::vector<BinaryCode>& codes, const BinaryCode& q,
                             const WeightVector& w, std::size_t k) {
  ChunkTables tables(q, w);
  KnnHeap heap(k);
  for (std::uint32_t i = 0; i < codes.size(); ++i) heap.offer(i, tables.distance(codes[i]));
  SearchResult res;
  res.neighbors = heap.sorted();
  res.distance_computations = codes.size();
  return res;
}

std::vector<std::pair<BinaryCode, double>> heap_sequence_oracle(const BinaryCode& q,
                                                                const WeightVector& w,
                                                                std::size_t count) {
  if (q.width() != w.width()) throw std::invalid_argument("heap_sequence_oracle: width mismatch");
  const int b = q.width();

  // Own argsort; this path must stay independent of the enumerator module.
  std::vector<int> order(static_cast<size_t>(b));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) { return w[a] < w[c]; });
  std::vector<double> sw(static_cast<size_t>(b));
  for (int s = 0; s < b; ++s) sw[static_cast<size_t>(s)] = w[order[static_cast<size_t>(s)]];

  // Subset states over sorted bit slots. Each state's children either append
  // the next slot or slide the last slot forward, so every non-empty subset
  // is reached exactly once.
  struct State {
    double dist;
    std::uint64_t lo, hi;  // flipped sorted slots
    int last;              // highest flipped slot, 1-based
  };
  auto cmp = [](const State& a, const State& c) { return a.dist > c.dist; };
  std::priority_queue<State, std::vector<State>, decltype(cmp)> pq(cmp);

  auto with_slot = [](State s, int slot) {
    if (slot <= 64)
      s.lo |= std::uint64_t{1} << (slot - 1);
    else
      s.hi |= std::uint64_t{1} << (slot - 65);
    return s;
  };
  auto without_slot = [](State s, int slot) {
    if (slot <= 64)
      s.lo &= ~(std::uint64_t{1} << (slot - 1));
    else
      s.hi &= ~(std::uint64_t{1} << (slot - 65));
    return s;
  };
  auto emit = [&](const State& s) {
    BinaryCode code = q;
    for (int slot = 1; slot <= b; ++slot) {
      bool set = slot <= 64 ? (s.lo >> (slot - 1)) & 1u : (s.hi >> (slot - 65)) & 1u;
      if (set) {
        int j = order[static_cast<size_t>(slot - 1)];
        code.set_bit(j, !code.bit(j));
      }
    }
    return code;
  };

  std::vector<std::pair<BinaryCode, double>> out;
  out.reserve(count);
  if (count == 0) return out;
  out.emplace_back(q, 0.0);

  if (b >= 1) {
    State first{sw[0], 0, 0, 1};
    pq.push(with_slot(first, 1));
  }
  while (out.size() < count && !pq.empty()) {
    State s = pq.top();
    pq.pop();
    out.emplace_back(emit(s), s.dist);
    if (s.last < b) {
      State append = with_slot(s, s.last + 1);
      append.dist = s.dist + sw[static_cast<size_t>(s.last)];
      append.last = s.last + 1;
      pq.push(append);

      State advance = with_slot(without_slot(s, s.last), s.last + 1);
      advance.dist = s.dist - sw[static_cast<size_t>(s.last - 1)] + sw[static_cast<size_t>(s.last)];
      advance.last = s.last + 1;
      pq.push(advance);
    }
  }
  return out;
}

std::vector<std::uint32_t> brute_force_knn(const std::vector<float>& vectors, std::size_t dim,
                                           const std::vector<float>& query, std::size_t k) {
  if (dim == 0 || vectors.size() % dim != 0)
    throw std::invalid_argument("brute_force_knn: bad matrix shape");
  if (query.size() != dim) throw std::invalid_argument("brute_force_knn: dimension mismatch");
  const std::size_t n = vectors.size() / dim;

  using RowMat = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> base(vectors.data(), static_cast<Eigen::Index>(n),
                                static_cast<Eigen::Index>(dim));
  Eigen::Map<const Eigen::VectorXf> qv(query.data(), static_cast<Eigen::Index>(dim));

  Eigen::VectorXf d2 = base.rowwise().squaredNorm();
  d2.noalias() -= 2.0f * (base * qv);
  // + |q|^2 is constant over rows; ranking does not need it.

  KnnHeap heap(k);
  for (std::uint32_t i = 0; i < n; ++i) heap.offer(i, static_cast<double>(d2[static_cast<Eigen::Index>(i)]));
  std::vector<std::uint32_t> ids;
  ids.reserve(k);
  for (const auto& nb : heap.sorted()) ids.push_back(nb.id);
  return ids;
}

}  // namespace whs
