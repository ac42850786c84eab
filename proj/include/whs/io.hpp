#pragma once

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "whs/bitcode.hpp"

namespace whs {

// Malformed input; `what()` carries the byte offset of the failure.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& msg, std::uint64_t offset);
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

// Streaming readers for the BIGANN vector formats. Each record is a 4-byte
// little-endian dimension d followed by d elements (float32 / uint8 / int32).
// All records in a file must share d.
template <typename T>
class VecsStream {
 public:
  explicit VecsStream(const std::string& path);
  ~VecsStream();
  VecsStream(VecsStream&&) noexcept;
  VecsStream& operator=(VecsStream&&) noexcept;

  // Fills `out` with the next record; false at clean end-of-file.
  bool next(std::vector<T>& out);

  std::size_t dim() const { return dim_; }
  std::size_t records_read() const { return count_; }

 private:
  std::FILE* f_ = nullptr;
  std::string path_;
  std::size_t dim_ = 0;  // 0 until first record
  std::size_t count_ = 0;
  std::uint64_t offset_ = 0;
};

using FvecsStream = VecsStream<float>;
using BvecsStream = VecsStream<std::uint8_t>;
using IvecsStream = VecsStream<std::int32_t>;

// Whole-file convenience wrappers for small files.
std::vector<std::vector<float>> read_fvecs(const std::string& path);
std::vector<std::vector<std::uint8_t>> read_bvecs(const std::string& path);
std::vector<std::vector<std::int32_t>> read_ivecs(const std::string& path);

void write_fvecs(const std::string& path, const std::vector<std::vector<float>>& rows);
void write_bvecs(const std::string& path, const std::vector<std::vector<std::uint8_t>>& rows);
void write_ivecs(const std::string& path, const std::vector<std::vector<std::int32_t>>& rows);

// Packed code file: 4-byte magic "WHCF", u32 version, u32 width, u64 count,
// then count codes of ceil(width/8) bytes, little-endian, bit position 1 in
// the least significant bit of byte 0.
void write_codes(const std::string& path, const std::vector<BinaryCode>& codes);
std::vector<BinaryCode> read_codes(const std::string& path);

class CodeStream {
 public:
  explicit CodeStream(const std::string& path);
  ~CodeStream();

  int width() const { return width_; }
  std::uint64_t count() const { return count_; }

  bool next(BinaryCode& out);

 private:
  std::FILE* f_ = nullptr;
  std::string path_;
  int width_ = 0;
  std::uint64_t count_ = 0;
  std::uint64_t read_ = 0;
  std::uint64_t offset_ = 0;
};

}  // namespace whs
