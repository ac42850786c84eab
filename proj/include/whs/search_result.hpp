#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace whs {

struct Neighbor {
  std::uint32_t id;
  double dist;
};

// Result of one KNN query plus the instrumentation the benchmarks report.
struct SearchResult {
  std::vector<Neighbor> neighbors;  // ascending by dist

  std::size_t probes = 0;                 // buckets probed, summed over tables
  std::size_t distance_computations = 0;  // full-code WHD evaluations
  std::size_t sequence_length = 0;        // enumerator elements consumed (per table)
  std::size_t max_candidate_evals = 0;    // worst per-extension scan width seen
  bool terminated_by_certificate = false;
  double certificate_lhs = 0.0;  // heap top at termination
  double certificate_rhs = 0.0;  // sum of per-table probed-index distances
};

}  // namespace whs
