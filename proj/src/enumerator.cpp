#include "whs/enumerator.hpp"

#include <stdexcept>

namespace whs {

WeightedQuery::WeightedQuery(BinaryCode query, WeightVector weights)
    : query_(std::move(query)), weights_(std::move(weights)) {
  if (query_.width() != weights_.width())
    throw std::invalid_argument("WeightedQuery: query/weights width mismatch");
  int b = query_.width();
  perm_.resize(static_cast<size_t>(b));
  std::iota(perm_.begin(), perm_.end(), 1);
  std::stable_sort(perm_.begin(), perm_.end(),
                   [&](int a, int c) { return weights_[a] < weights_[c]; });
  sorted_w_.resize(static_cast<size_t>(b));
  for (int s = 0; s < b; ++s) sorted_w_[static_cast<size_t>(s)] = weights_[perm_[static_cast<size_t>(s)]];
}

BinaryCode WeightedQuery::to_original(const BinaryCode& sorted_mask) const {
  BinaryCode out = query_;
  std::uint64_t x = sorted_mask.low();
  while (x) {
    int s = std::countr_zero(x) + 1;
    int j = perm(s);
    out.set_bit(j, !out.bit(j));
    x &= x - 1;
  }
  x = sorted_mask.high();
  while (x) {
    int s = std::countr_zero(x) + 65;
    int j = perm(s);
    out.set_bit(j, !out.bit(j));
    x &= x - 1;
  }
  return out;
}

CseEnumerator::CseEnumerator(BinaryCode query, WeightVector weights)
    : wq_(std::move(query), std::move(weights)), b_(wq_.width()) {
  seq_.push_back(Entry{BinaryCode(b_), 0.0});
  p_.assign(static_cast<size_t>(b_), 1);
  l_.resize(static_cast<size_t>(b_));
  for (int j = 1; j <= b_; ++j)
    l_[static_cast<size_t>(j - 1)] = (j >= 63) ? kUnbounded : (std::uint64_t{1} << j);
}

std::pair<BinaryCode, double> CseEnumerator::element(std::size_t i) const {
  if (i < 1 || i > seq_.size()) throw std::out_of_range("CseEnumerator::element: index out of range");
  const Entry& e = seq_[i - 1];
  return {wq_.to_original(e.mask), e.dist};
}

double CseEnumerator::distance_of(std::size_t i) const {
  if (i < 1 || i > seq_.size()) throw std::out_of_range("CseEnumerator::distance_of: index out of range");
  return seq_[i - 1].dist;
}

std::optional<std::pair<BinaryCode, double>> CseEnumerator::next() {
  const std::size_t n = seq_.size();
  double best = std::numeric_limits<double>::infinity();
  int t = -1;
  std::size_t evals = 0;

  for (int j = 1; j <= b_; ++j) {
    std::uint64_t& p = p_[static_cast<size_t>(j - 1)];
    std::uint64_t& l = l_[static_cast<size_t>(j - 1)];
    // Move the pointer past entries outside U^{j-1}; the window limit grows
    // with each skip so the pointer still covers all 2^(j-1) valid bases.
    while (p <= l && p <= n && foreign(p, j)) {
      ++p;
      if (l != kUnbounded) ++l;
      ++total_skip_steps_;
    }
    if (p > l || p > n) continue;
    ++evals;
    double cand = seq_[static_cast<size_t>(p - 1)].dist + wq_.sorted_weight(j);
    if (cand < best) {
      best = cand;
      t = j;
    }
  }

  last_candidate_evals_ = evals;
  max_candidate_evals_ = std::max(max_candidate_evals_, evals);
  if (t < 0) return std::nullopt;  // all 2^b codes emitted

  std::uint64_t& pt = p_[static_cast<size_t>(t - 1)];
  last_base_index_ = pt;
  BinaryCode mask = seq_[static_cast<size_t>(pt - 1)].mask;
  mask.set_bit(t, true);  // base is in U^{t-1}, so bit t is clear
  ++pt;
  seq_.push_back(Entry{mask, best});
  return element(seq_.size());
}

}  // namespace whs
