#include "whs/io.hpp"

#include <cstring>
#include <stdexcept>

namespace whs {

namespace {

constexpr char kCodeMagic[4] = {'W', 'H', 'C', 'F'};
constexpr std::uint32_t kCodeVersion = 1;

std::FILE* open_or_throw(const std::string& path, const char* mode) {
  std::FILE* f = std::fopen(path.c_str(), mode);
  if (!f) throw std::runtime_error("cannot open " + path);
  return f;
}

}  // namespace

FormatError::FormatError(const std::string& msg, std::uint64_t offset)
    : std::runtime_error(msg + " (byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

template <typename T>
VecsStream<T>::VecsStream(const std::string& path) : f_(open_or_throw(path, "rb")), path_(path) {}

template <typename T>
VecsStream<T>::~VecsStream() {
  if (f_) std::fclose(f_);
}

template <typename T>
VecsStream<T>::VecsStream(VecsStream&& o) noexcept
    : f_(o.f_), path_(std::move(o.path_)), dim_(o.dim_), count_(o.count_), offset_(o.offset_) {
  o.f_ = nullptr;
}

template <typename T>
VecsStream<T>& VecsStream<T>::operator=(VecsStream&& o) noexcept {
  if (this != &o) {
    if (f_) std::fclose(f_);
    f_ = o.f_;
    path_ = std::move(o.path_);
    dim_ = o.dim_;
    count_ = o.count_;
    offset_ = o.offset_;
    o.f_ = nullptr;
  }
  return *this;
}

template <typename T>
bool VecsStream<T>::next(std::vector<T>& out) {
  std::uint32_t d = 0;
  std::size_t got = std::fread(&d, 1, 4, f_);
  if (got == 0) return false;  // clean EOF
  if (got != 4) throw FormatError(path_ + ": truncated record header", offset_ + got);
  if (d == 0) throw FormatError(path_ + ": zero dimension", offset_);
  if (dim_ == 0)
    dim_ = d;
  else if (d != dim_)
    throw FormatError(path_ + ": inconsistent dimension " + std::to_string(d) + " vs " +
                          std::to_string(dim_),
                      offset_);
  offset_ += 4;
  out.resize(d);
  std::size_t want = static_cast<std::size_t>(d) * sizeof(T);
  got = std::fread(out.data(), 1, want, f_);
  if (got != want) throw FormatError(path_ + ": truncated record payload", offset_ + got);
  offset_ += want;
  ++count_;
  return true;
}

template class VecsStream<float>;
template class VecsStream<std::uint8_t>;
template class VecsStream<std::int32_t>;

namespace {

template <typename T>
std::vector<std::vector<T>> read_all(const std::string& path) {
  VecsStream<T> s(path);
  std::vector<std::vector<T>> rows;
  std::vector<T> row;
  while (s.next(row)) rows.push_back(row);
  return rows;
}

template <typename T>
void write_all(const std::string& path, const std::vector<std::vector<T>>& rows) {
  std::FILE* f = open_or_throw(path, "wb");
  bool ok = true;
  for (const auto& r : rows) {
    std::uint32_t d = static_cast<std::uint32_t>(r.size());
    ok = ok && std::fwrite(&d, 1, 4, f) == 4 &&
         std::fwrite(r.data(), sizeof(T), r.size(), f) == r.size();
    if (!ok) break;
  }
  std::fclose(f);
  if (!ok) throw std::runtime_error("short write to " + path);
}

}  // namespace

std::vector<std::vector<float>> read_fvecs(const std::string& path) { return read_all<float>(path); }
std::vector<std::vector<std::uint8_t>> read_bvecs(const std::string& path) {
  return read_all<std::uint8_t>(path);
}
std::vector<std::vector<std::int32_t>> read_ivecs(const std::string& path) {
  return read_all<std::int32_t>(path);
}

void write_fvecs(const std::string& path, const std::vector<std::vector<float>>& rows) {
  write_all(path, rows);
}
void write_bvecs(const std::string& path, const std::vector<std::vector<std::uint8_t>>& rows) {
  write_all(path, rows);
}
void write_ivecs(const std::string& path, const std::vector<std::vector<std::int32_t>>& rows) {
  write_all(path, rows);
}

void write_codes(const std::string& path, const std::vector<BinaryCode>& codes) {
  if (codes.empty()) throw std::invalid_argument("write_codes: empty code set");
  int b = codes.front().width();
  for (const auto& c : codes)
    if (c.width() != b) throw std::invalid_argument("write_codes: mixed code widths");

  std::FILE* f = open_or_throw(path, "wb");
  std::uint32_t width = static_cast<std::uint32_t>(b);
  std::uint64_t count = codes.size();
  bool ok = std::fwrite(kCodeMagic, 1, 4, f) == 4 && std::fwrite(&kCodeVersion, 4, 1, f) == 1 &&
            std::fwrite(&width, 4, 1, f) == 1 && std::fwrite(&count, 8, 1, f) == 1;
  const int nb = (b + 7) / 8;
  for (const auto& c : codes) {
    if (!ok) break;
    std::uint8_t buf[16];
    for (int k = 0; k < nb; ++k) {
      std::uint64_t word = k < 8 ? c.low() : c.high();
      buf[k] = static_cast<std::uint8_t>((word >> ((k & 7) * 8)) & 0xffu);
    }
    ok = std::fwrite(buf, 1, static_cast<size_t>(nb), f) == static_cast<size_t>(nb);
  }
  std::fclose(f);
  if (!ok) throw std::runtime_error("short write to " + path);
}

CodeStream::CodeStream(const std::string& path) : f_(open_or_throw(path, "rb")), path_(path) {
  char magic[4];
  std::uint32_t version = 0, width = 0;
  if (std::fread(magic, 1, 4, f_) != 4 || std::memcmp(magic, kCodeMagic, 4) != 0)
    throw FormatError(path_ + ": bad code-file magic", 0);
  if (std::fread(&version, 4, 1, f_) != 1 || version != kCodeVersion)
    throw FormatError(path_ + ": unsupported code-file version", 4);
  if (std::fread(&width, 4, 1, f_) != 1 || width < 1 || width > 128)
    throw FormatError(path_ + ": bad code width", 8);
  if (std::fread(&count_, 8, 1, f_) != 1) throw FormatError(path_ + ": truncated header", 12);
  width_ = static_cast<int>(width);
  offset_ = 20;
}

CodeStream::~CodeStream() {
  if (f_) std::fclose(f_);
}

bool CodeStream::next(BinaryCode& out) {
  if (read_ == count_) {
    // The header promised exactly `count_` codes; trailing bytes are an error.
    std::uint8_t extra;
    if (std::fread(&extra, 1, 1, f_) == 1)
      throw FormatError(path_ + ": trailing bytes after last code", offset_);
    return false;
  }
  const int nb = (width_ + 7) / 8;
  std::uint8_t buf[16];
  std::size_t got = std::fread(buf, 1, static_cast<size_t>(nb), f_);
  if (got != static_cast<size_t>(nb))
    throw FormatError(path_ + ": truncated code record", offset_ + got);
  std::uint64_t lo = 0, hi = 0;
  for (int k = 0; k < nb; ++k) {
    std::uint64_t byte = buf[k];
    if (k < 8)
      lo |= byte << (k * 8);
    else
      hi |= byte << ((k - 8) * 8);
  }
  out = BinaryCode::from_words(width_, lo, hi);
  offset_ += static_cast<std::uint64_t>(nb);
  ++read_;
  return true;
}

std::vector<BinaryCode> read_codes(const std::string& path) {
  CodeStream s(path);
  std::vector<BinaryCode> codes;
  codes.reserve(s.count());
  BinaryCode c;
  while (s.next(c)) codes.push_back(c);
  return codes;
}

}  // namespace whs
