#include "whs/encode.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <stdexcept>

namespace whs {

namespace {

// splitmix64; decorrelates per-row seeds from the dataset seed.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::VectorXf project(const LshModel& model, const std::vector<float>& v) {
  if (static_cast<int>(v.size()) != model.dim())
    throw std::invalid_argument("lsh_encode: dimension mismatch");
  Eigen::Map<const Eigen::VectorXf> x(v.data(), static_cast<Eigen::Index>(v.size()));
  return model.projections() * x;
}

BinaryCode code_from_signs(const Eigen::VectorXf& y) {
  BinaryCode c(static_cast<int>(y.size()));
  for (int j = 0; j < y.size(); ++j)
    if (y[j] >= 0.0f) c.set_bit(j + 1, true);
  return c;
}

}  // namespace

LshModel lsh_train(int dim, int bits, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("lsh_train: dim must be >= 1");
  if (bits < 1 || bits > 128) throw std::invalid_argument("lsh_train: bits must be in [1,128]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  Eigen::MatrixXf proj(bits, dim);
  for (int r = 0; r < bits; ++r)
    for (int c = 0; c < dim; ++c) proj(r, c) = gauss(rng);
  return LshModel(dim, bits, seed, std::move(proj));
}

BinaryCode lsh_encode(const LshModel& model, const std::vector<float>& v) {
  return code_from_signs(project(model, v));
}

std::pair<BinaryCode, WeightVector> asym_weights(const LshModel& model,
                                                 const std::vector<float>& v) {
  Eigen::VectorXf y = project(model, v);
  std::vector<double> w(static_cast<size_t>(y.size()));
  for (int j = 0; j < y.size(); ++j) w[static_cast<size_t>(j)] = std::abs(static_cast<double>(y[j]));
  return {code_from_signs(y), WeightVector(std::move(w))};
}

std::vector<BinaryCode> lsh_encode_all(const LshModel& model, const std::vector<float>& data,
                                       std::size_t dim) {
  if (dim != static_cast<std::size_t>(model.dim()) || data.size() % dim != 0)
    throw std::invalid_argument("lsh_encode_all: bad matrix shape");
  const std::size_t n = data.size() / dim;
  std::vector<BinaryCode> out;
  out.reserve(n);

  using RowMat = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const std::size_t block = 65536;
  Eigen::MatrixXf y;
  for (std::size_t lo = 0; lo < n; lo += block) {
    std::size_t hi = std::min(n, lo + block);
    Eigen::Map<const RowMat> x(data.data() + lo * dim, static_cast<Eigen::Index>(hi - lo),
                               static_cast<Eigen::Index>(dim));
    y.noalias() = model.projections() * x.transpose();  // bits x rows
    for (Eigen::Index i = 0; i < y.cols(); ++i) {
      BinaryCode c(model.bits());
      for (int j = 0; j < model.bits(); ++j)
        if (y(j, i) >= 0.0f) c.set_bit(j + 1, true);
      out.push_back(c);
    }
  }
  return out;
}

namespace {
constexpr char kModelMagic[4] = {'W', 'H', 'L', 'M'};
constexpr std::uint32_t kModelVersion = 1;
}  // namespace

void save_model(const std::string& path, const LshModel& model) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("save_model: cannot open " + path);
  std::uint32_t dim = static_cast<std::uint32_t>(model.dim());
  std::uint32_t bits = static_cast<std::uint32_t>(model.bits());
  std::uint64_t seed = model.seed();
  bool ok = std::fwrite(kModelMagic, 1, 4, f) == 4 &&
            std::fwrite(&kModelVersion, 4, 1, f) == 1 && std::fwrite(&dim, 4, 1, f) == 1 &&
            std::fwrite(&bits, 4, 1, f) == 1 && std::fwrite(&seed, 8, 1, f) == 1;
  for (int r = 0; ok && r < model.bits(); ++r)
    for (int c = 0; ok && c < model.dim(); ++c) {
      float v = model.projections()(r, c);
      ok = std::fwrite(&v, 4, 1, f) == 1;
    }
  std::fclose(f);
  if (!ok) throw std::runtime_error("save_model: short write to " + path);
}

LshModel load_model(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("load_model: cannot open " + path);
  char magic[4];
  std::uint32_t version = 0, dim = 0, bits = 0;
  std::uint64_t seed = 0;
  bool ok = std::fread(magic, 1, 4, f) == 4 && std::memcmp(magic, kModelMagic, 4) == 0 &&
            std::fread(&version, 4, 1, f) == 1 && version == kModelVersion &&
            std::fread(&dim, 4, 1, f) == 1 && std::fread(&bits, 4, 1, f) == 1 &&
            std::fread(&seed, 8, 1, f) == 1;
  if (!ok) {
    std::fclose(f);
    throw std::runtime_error("load_model: bad header in " + path);
  }
  Eigen::MatrixXf proj(bits, dim);
  for (std::uint32_t r = 0; ok && r < bits; ++r)
    for (std::uint32_t c = 0; ok && c < dim; ++c) {
      float v;
      ok = std::fread(&v, 4, 1, f) == 1;
      proj(r, c) = v;
    }
  std::fclose(f);
  if (!ok) throw std::runtime_error("load_model: truncated payload in " + path);
  return LshModel(static_cast<int>(dim), static_cast<int>(bits), seed, std::move(proj));
}

SynthDataset::SynthDataset(std::size_t n, std::size_t dim, std::uint64_t seed, int components)
    : n_(n), dim_(dim), seed_(seed), components_(components) {
  if (n < 1 || dim < 1 || components < 1) throw std::invalid_argument("SynthDataset: bad shape");
  std::mt19937_64 rng(mix64(seed ^ 0xc0ffee));
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  means_.resize(static_cast<size_t>(components) * dim);
  // Component means at scale 4 vs unit noise keep clusters well separated.
  for (auto& m : means_) m = 4.0f * gauss(rng);
}

std::vector<float> SynthDataset::row(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("SynthDataset::row: index out of range");
  std::mt19937_64 rng(mix64(seed_) ^ mix64(i + 1));
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  int comp = static_cast<int>(rng() % static_cast<std::uint64_t>(components_));
  std::vector<float> v(dim_);
  const float* mean = means_.data() + static_cast<size_t>(comp) * dim_;
  for (std::size_t d = 0; d < dim_; ++d) v[d] = mean[d] + gauss(rng);
  return v;
}

std::vector<float> SynthDataset::rows(std::size_t begin, std::size_t end) const {
  if (begin > end || end > n_) throw std::out_of_range("SynthDataset::rows: bad range");
  std::vector<float> out;
  out.reserve((end - begin) * dim_);
  for (std::size_t i = begin; i < end; ++i) {
    auto v = row(i);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace whs
