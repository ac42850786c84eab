#include "whs/encode.hpp"

#include <cstdio>
#include <random>

#include "doctest.h"

using namespace whs;

TEST_CASE("lsh_train is deterministic in the seed") {
  auto a = lsh_train(16, 32, 7);
  auto b = lsh_train(16, 32, 7);
  auto c = lsh_train(16, 32, 8);
  CHECK(a.projections() == b.projections());
  CHECK(a.projections() != c.projections());
}

TEST_CASE("lsh_encode sign conventions") {
  auto m = lsh_train(8, 16, 3);
  std::vector<float> zero(8, 0.0f);
  BinaryCode z = lsh_encode(m, zero);
  for (int j = 1; j <= 16; ++j) CHECK(z.bit(j) == 1);  // dot = 0 maps to 1

  std::mt19937_64 rng(40);
  std::uniform_real_distribution<float> uni(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<float> v(8), v2(8), vneg(8);
    for (std::size_t i = 0; i < 8; ++i) {
      v[i] = uni(rng);
      v2[i] = 2.0f * v[i];
      vneg[i] = -v[i];
    }
    CHECK(lsh_encode(m, v) == lsh_encode(m, v2));  // scale invariance
    BinaryCode a = lsh_encode(m, v), b = lsh_encode(m, vneg);
    for (int j = 1; j <= 16; ++j) {
      float dot = (m.projections().row(j - 1) *
                   Eigen::Map<const Eigen::VectorXf>(v.data(), 8))(0);
      if (dot != 0.0f) CHECK(a.bit(j) != b.bit(j));
    }
  }
  CHECK_THROWS_AS(lsh_encode(m, std::vector<float>(7)), std::invalid_argument);
}

TEST_CASE("asym weights are |projection| and scale with the query") {
  auto m = lsh_train(8, 12, 5);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<float> uni(-1, 1);
  std::vector<float> v(8), v3(8);
  for (std::size_t i = 0; i < 8; ++i) {
    v[i] = uni(rng);
    v3[i] = 3.0f * v[i];
  }
  auto [code, w] = asym_weights(m, v);
  CHECK(code == lsh_encode(m, v));
  for (int j = 1; j <= 12; ++j) {
    float dot = (m.projections().row(j - 1) * Eigen::Map<const Eigen::VectorXf>(v.data(), 8))(0);
    CHECK(w[j] == doctest::Approx(std::abs(dot)).epsilon(1e-5));
  }
  auto [code3, w3] = asym_weights(m, v3);
  CHECK(code3 == code);
  for (int j = 1; j <= 12; ++j) CHECK(w3[j] == doctest::Approx(3.0 * w[j]).epsilon(1e-4));

  // reproducible under the same seed
  auto m2 = lsh_train(8, 12, 5);
  auto [c2, w2] = asym_weights(m2, v);
  CHECK(c2 == code);
  for (int j = 1; j <= 12; ++j) CHECK(w2[j] == w[j]);
}

TEST_CASE("batch encode equals per-vector encode") {
  auto m = lsh_train(24, 48, 9);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<float> uni(-1, 1);
  std::size_t n = 300;
  std::vector<float> data(n * 24);
  for (auto& x : data) x = uni(rng);
  auto codes = lsh_encode_all(m, data, 24);
  REQUIRE(codes.size() == n);
  for (std::size_t i = 0; i < n; i += 37) {
    std::vector<float> v(data.begin() + static_cast<long>(i * 24),
                         data.begin() + static_cast<long>((i + 1) * 24));
    CHECK(codes[i] == lsh_encode(m, v));
  }
}

TEST_CASE("model round trip through a file") {
  auto m = lsh_train(10, 20, 77);
  std::string path = "test_model.bin";
  save_model(path, m);
  auto r = load_model(path);
  CHECK(r.dim() == 10);
  CHECK(r.bits() == 20);
  CHECK(r.seed() == 77);
  CHECK(r.projections() == m.projections());
  std::remove(path.c_str());
}

TEST_CASE("synthetic dataset is deterministic and random-access") {
  SynthDataset a(100, 16, 5), b(100, 16, 5), c(100, 16, 6);
  CHECK(a.row(42) == b.row(42));
  CHECK(a.row(42) != c.row(42));
  auto block = a.rows(40, 45);
  CHECK(std::vector<float>(block.begin(), block.begin() + 16) == a.row(40));
  CHECK_THROWS_AS(a.row(100), std::out_of_range);
}

TEST_CASE("synthetic clusters dominate true nearest neighbors") {
  // with separated component means, a row's nearest neighbors should mostly
  // share its component; verify indirectly: NN distance is far below the
  // typical inter-point distance
  SynthDataset d(400, 16, 11, 4);
  auto flat = d.rows(0, 400);
  double nn = 0, avg = 0;
  int pairs = 0;
  for (int i = 0; i < 20; ++i) {
    double best = 1e30;
    for (int j = 0; j < 400; ++j) {
      if (i == j) continue;
      double s = 0;
      for (int c = 0; c < 16; ++c) {
        double diff = flat[static_cast<size_t>(i * 16 + c)] - flat[static_cast<size_t>(j * 16 + c)];
        s += diff * diff;
      }
      best = std::min(best, s);
      avg += s;
      ++pairs;
    }
    nn += best;
  }
  CHECK(nn / 20 < 0.2 * (avg / pairs));
}
