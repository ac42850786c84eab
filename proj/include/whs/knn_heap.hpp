#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "whs/search_result.hpp"

namespace whs {

// Bounded max-heap over (id, distance); keeps the K smallest distances seen.
// Entries tying with the current top are not admitted.
class KnnHeap {
 public:
  explicit KnnHeap(std::size_t k) : k_(k) {}

  std::size_t size() const { return entries_.size(); }
  bool full() const { return entries_.size() == k_; }
  double top_dist() const { return entries_.front().dist; }

  void offer(std::uint32_t id, double dist) {
    if (entries_.size() < k_) {
      entries_.push_back(Neighbor{id, dist});
      std::push_heap(entries_.begin(), entries_.end(), cmp);
    } else if (dist < entries_.front().dist) {
      std::pop_heap(entries_.begin(), entries_.end(), cmp);
      entries_.back() = Neighbor{id, dist};
      std::push_heap(entries_.begin(), entries_.end(), cmp);
    }
  }

  // Entries sorted ascending by distance (ties by id, for determinism).
  std::vector<Neighbor> sorted() const {
    std::vector<Neighbor> out = entries_;
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      return a.id < b.id;
    });
    return out;
  }

 private:
  static bool cmp(const Neighbor& a, const Neighbor& b) { return a.dist < b.dist; }

  std::size_t k_;
  std::vector<Neighbor> entries_;
};

}  // namespace whs
