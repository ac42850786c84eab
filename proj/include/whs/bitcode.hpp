#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace whs {

// Fixed-width binary code, 1 <= width <= 128, packed into two 64-bit words.
// Bit positions are 1-based: position j lives in word (j-1)/64 at bit
// (j-1)%64, so position 1 is the least significant bit of word 0. Bits above
// `width` are always zero.
class BinaryCode {
 public:
  BinaryCode() = default;

  explicit BinaryCode(int width) : width_(check_width(width)) {}

  static BinaryCode from_words(int width, std::uint64_t lo, std::uint64_t hi = 0) {
    BinaryCode c(width);
    c.w_[0] = lo;
    c.w_[1] = hi;
    c.canonicalize();
    return c;
  }

  // Parses "1010..." where s[0] is bit position 1.
  static BinaryCode parse(std::string_view s) {
    BinaryCode c(static_cast<int>(s.size()));
    for (int j = 1; j <= c.width_; ++j) {
      char ch = s[static_cast<size_t>(j - 1)];
      if (ch != '0' && ch != '1') throw std::invalid_argument("BinaryCode::parse: bad char");
      if (ch == '1') c.set_bit(j, true);
    }
    return c;
  }

  int width() const { return width_; }

  int bit(int j) const {
    check_pos(j);
    return static_cast<int>((w_[(j - 1) >> 6] >> ((j - 1) & 63)) & 1u);
  }

  void set_bit(int j, bool v) {
    check_pos(j);
    std::uint64_t m = std::uint64_t{1} << ((j - 1) & 63);
    if (v)
      w_[(j - 1) >> 6] |= m;
    else
      w_[(j - 1) >> 6] &= ~m;
  }

  std::uint64_t low() const { return w_[0]; }
  std::uint64_t high() const { return w_[1]; }

  std::uint32_t as_u32() const {
    if (width_ > 32) throw std::invalid_argument("BinaryCode::as_u32: width > 32");
    return static_cast<std::uint32_t>(w_[0]);
  }

  bool is_zero() const { return w_[0] == 0 && w_[1] == 0; }

  // True if any set bit lies at position >= j (1-based).
  bool any_at_or_above(int j) const {
    if (j > width_) return false;
    int s = j - 1;
    if (s >= 64) return (w_[1] >> (s - 64)) != 0;
    return (w_[0] >> s) != 0 || w_[1] != 0;
  }

  int popcount() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }

  BinaryCode operator^(const BinaryCode& o) const {
    BinaryCode r(width_);
    r.w_[0] = w_[0] ^ o.w_[0];
    r.w_[1] = w_[1] ^ o.w_[1];
    return r;
  }

  bool operator==(const BinaryCode& o) const {
    return width_ == o.width_ && w_[0] == o.w_[0] && w_[1] == o.w_[1];
  }
  bool operator!=(const BinaryCode& o) const { return !(*this == o); }
  bool operator<(const BinaryCode& o) const {
    if (w_[1] != o.w_[1]) return w_[1] < o.w_[1];
    return w_[0] < o.w_[0];
  }

  std::string to_string() const {
    std::string s(static_cast<size_t>(width_), '0');
    for (int j = 1; j <= width_; ++j)
      if (bit(j)) s[static_cast<size_t>(j - 1)] = '1';
    return s;
  }

 private:
  static int check_width(int width) {
    if (width < 1 || width > 128) throw std::invalid_argument("BinaryCode: width must be in [1,128]");
    return width;
  }
  void check_pos(int j) const {
    if (j < 1 || j > width_) throw std::out_of_range("BinaryCode: bit position out of range");
  }
  void canonicalize() {
    if (width_ < 64) {
      w_[0] &= (std::uint64_t{1} << width_) - 1;
      w_[1] = 0;
    } else if (width_ < 128) {
      w_[1] &= (width_ == 64) ? 0 : (std::uint64_t{1} << (width_ - 64)) - 1;
    }
  }

  int width_ = 0;
  std::uint64_t w_[2] = {0, 0};
};

// Per-bit non-negative weights; length equals the code width it applies to.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty() || w_.size() > 128) throw std::invalid_argument("WeightVector: bad length");
    for (double x : w_)
      if (x < 0.0) throw std::invalid_argument("WeightVector: negative weight");
  }

  static WeightVector ones(int b) { return WeightVector(std::vector<double>(static_cast<size_t>(b), 1.0)); }

  int width() const { return static_cast<int>(w_.size()); }

  double operator[](int j) const {  // 1-based
    if (j < 1 || j > width()) throw std::out_of_range("WeightVector: index out of range");
    return w_[static_cast<size_t>(j - 1)];
  }

  const std::vector<double>& values() const { return w_; }

  WeightVector slice(int start, int len) const {
    if (start < 1 || len < 1 || start + len - 1 > width())
      throw std::out_of_range("WeightVector::slice: out of range");
    return WeightVector(std::vector<double>(w_.begin() + (start - 1), w_.begin() + (start - 1) + len));
  }

 private:
  std::vector<double> w_;
};

inline int hamming_distance(const BinaryCode& q, const BinaryCode& g) {
  if (q.width() != g.width()) throw std::invalid_argument("hamming_distance: width mismatch");
  return (q ^ g).popcount();
}

inline double weighted_distance(const BinaryCode& q, const BinaryCode& g, const WeightVector& w) {
  if (q.width() != g.width() || q.width() != w.width())
    throw std::invalid_argument("weighted_distance: width mismatch");
  double d = 0.0;
  std::uint64_t x = (q.low() ^ g.low());
  while (x) {
    d += w[std::countr_zero(x) + 1];
    x &= x - 1;
  }
  x = (q.high() ^ g.high());
  while (x) {
    d += w[std::countr_zero(x) + 65];
    x &= x - 1;
  }
  return d;
}

inline BinaryCode flip_bit(const BinaryCode& h, int j) {
  BinaryCode r = h;
  r.set_bit(j, !h.bit(j));
  return r;
}

inline BinaryCode extract_substring(const BinaryCode& g, int start, int len) {
  if (start < 1 || len < 1 || start + len - 1 > g.width())
    throw std::out_of_range("extract_substring: slice out of range");
  BinaryCode r(len);
  for (int j = 0; j < len; ++j)
    if (g.bit(start + j)) r.set_bit(j + 1, true);
  return r;
}

}  // namespace whs
