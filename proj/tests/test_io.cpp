#include "whs/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracle.hpp"

using namespace whs;
using namespace whs::testing;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }

  void write_bytes(const std::vector<unsigned char>& bytes) const {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<long>(bytes.size()));
  }
  std::vector<unsigned char> read_bytes() const {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }
};

}  // namespace

TEST_CASE("fvecs single record golden bytes") {
  TempFile t("t_one.fvecs");
  // d=2, values 1.0 and 2.0
  t.write_bytes({0x02, 0, 0, 0, 0, 0, 0x80, 0x3f, 0, 0, 0, 0x40});
  auto rows = read_fvecs(t.path);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == std::vector<float>{1.0f, 2.0f});
}

TEST_CASE("empty vecs file gives an empty list") {
  TempFile t("t_empty.fvecs");
  t.write_bytes({});
  CHECK(read_fvecs(t.path).empty());
  CHECK(read_ivecs(t.path).empty());
}

TEST_CASE("bvecs golden record and round trip") {
  TempFile t("t_one.bvecs");
  t.write_bytes({0x04, 0, 0, 0, 0, 255, 1, 2});
  auto rows = read_bvecs(t.path);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == std::vector<std::uint8_t>{0, 255, 1, 2});

  TempFile t2("t_rt.bvecs");
  write_bvecs(t2.path, rows);
  CHECK(t2.read_bytes() == t.read_bytes());
}

TEST_CASE("ivecs golden record") {
  TempFile t("t_one.ivecs");
  t.write_bytes({0x03, 0, 0, 0, 7, 0, 0, 0, 1, 0, 0, 0, 9, 0, 0, 0});
  auto rows = read_ivecs(t.path);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == std::vector<std::int32_t>{7, 1, 9});
}

TEST_CASE("vecs readers reject malformed input with a byte offset") {
  SUBCASE("truncated header") {
    TempFile t("t_trunc1.fvecs");
    t.write_bytes({0x02, 0});
    CHECK_THROWS_AS(read_fvecs(t.path), FormatError);
  }
  SUBCASE("truncated payload") {
    TempFile t("t_trunc2.fvecs");
    t.write_bytes({0x02, 0, 0, 0, 0, 0, 0x80, 0x3f});
    try {
      read_fvecs(t.path);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.offset() == 8);
      CHECK(std::string(e.what()).find("offset") != std::string::npos);
    }
  }
  SUBCASE("inconsistent dimension") {
    TempFile t("t_mixdim.fvecs");
    t.write_bytes({0x01, 0, 0, 0, 0, 0, 0x80, 0x3f, 0x02, 0, 0, 0,
                   0, 0, 0x80, 0x3f, 0, 0, 0, 0x40});
    CHECK_THROWS_AS(read_fvecs(t.path), FormatError);
  }
}

TEST_CASE("fvecs streaming matches whole-file read") {
  TempFile t("t_stream.fvecs");
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<float> uni(-5, 5);
  std::vector<std::vector<float>> rows(37, std::vector<float>(9));
  for (auto& r : rows)
    for (auto& x : r) x = uni(rng);
  write_fvecs(t.path, rows);

  FvecsStream s(t.path);
  std::vector<float> row;
  std::size_t i = 0;
  while (s.next(row)) {
    REQUIRE(i < rows.size());
    CHECK(row == rows[i]);
    ++i;
  }
  CHECK(i == rows.size());
  CHECK(s.dim() == 9);
}

TEST_CASE("code file golden bytes for a 3-bit code") {
  TempFile t("t_codes.whc");
  write_codes(t.path, {BinaryCode::parse("101")});
  auto bytes = t.read_bytes();
  // header: magic WHCF, version 1, width 3, count 1; payload: 0b00000101
  REQUIRE(bytes.size() == 21);
  CHECK(bytes[0] == 'W');
  CHECK(bytes[1] == 'H');
  CHECK(bytes[2] == 'C');
  CHECK(bytes[3] == 'F');
  CHECK(bytes[4] == 1);
  CHECK(bytes[8] == 3);
  CHECK(bytes[12] == 1);
  CHECK(bytes[20] == 0b00000101);

  auto codes = read_codes(t.path);
  REQUIRE(codes.size() == 1);
  CHECK(codes[0] == BinaryCode::parse("101"));
}

TEST_CASE("code file size arithmetic and round trip") {
  TempFile t("t_codes64.whc");
  std::mt19937_64 rng(51);
  std::vector<BinaryCode> codes;
  for (int i = 0; i < 1000; ++i) codes.push_back(random_code(64, rng));
  write_codes(t.path, codes);
  CHECK(std::filesystem::file_size(t.path) == 20 + 8 * codes.size());
  CHECK(read_codes(t.path) == codes);
}

TEST_CASE("code file round trip across widths") {
  std::mt19937_64 rng(52);
  for (int b : {1, 7, 8, 31, 33, 100, 128}) {
    TempFile t("t_codes_w.whc");
    std::vector<BinaryCode> codes;
    for (int i = 0; i < 200; ++i) codes.push_back(random_code(b, rng));
    write_codes(t.path, codes);
    CHECK(read_codes(t.path) == codes);
  }
}

TEST_CASE("corrupt code header is rejected outright") {
  TempFile t("t_bad.whc");
  write_codes(t.path, {BinaryCode::parse("101")});
  auto bytes = t.read_bytes();
  bytes[0] = 'X';
  t.write_bytes(bytes);
  CHECK_THROWS_AS(read_codes(t.path), FormatError);

  // truncated payload
  write_codes(t.path, {BinaryCode::parse("10101010101")});
  bytes = t.read_bytes();
  bytes.pop_back();
  t.write_bytes(bytes);
  CHECK_THROWS_AS(read_codes(t.path), FormatError);
}
