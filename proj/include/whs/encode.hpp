#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "whs/bitcode.hpp"

namespace whs {

// Random-projection (LSH) model: b hyperplanes over dim-dimensional input.
// Bit j is 1 iff row_j . v >= 0 (the zero dot product maps to 1).
class LshModel {
 public:
  LshModel(int dim, int bits, std::uint64_t seed, Eigen::MatrixXf projections)
      : dim_(dim), bits_(bits), seed_(seed), proj_(std::move(projections)) {}

  int dim() const { return dim_; }
  int bits() const { return bits_; }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXf& projections() const { return proj_; }

 private:
  int dim_;
  int bits_;
  std::uint64_t seed_;
  Eigen::MatrixXf proj_;  // bits x dim
};

LshModel lsh_train(int dim, int bits, std::uint64_t seed);

BinaryCode lsh_encode(const LshModel& model, const std::vector<float>& v);

// Query-adaptive weights: w_j = |row_j . v|, the (unnormalized) distance of
// the raw query to hyperplane j. A stand-in for learned weighting schemes;
// satisfies w_j >= 0 and preserves rankings under positive scaling of v.
std::pair<BinaryCode, WeightVector> asym_weights(const LshModel& model,
                                                 const std::vector<float>& v);

// Batch encode of a row-major n x dim matrix.
std::vector<BinaryCode> lsh_encode_all(const LshModel& model, const std::vector<float>& data,
                                       std::size_t dim);

void save_model(const std::string& path, const LshModel& model);
LshModel load_model(const std::string& path);

// Deterministic Gaussian-mixture dataset (16 components by default) with
// random access by row, so arbitrarily large sets stream in bounded memory.
class SynthDataset {
 public:
  SynthDataset(std::size_t n, std::size_t dim, std::uint64_t seed, int components = 16);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }

  std::vector<float> row(std::size_t i) const;

  // Materializes rows [begin, end) as a flat row-major block.
  std::vector<float> rows(std::size_t begin, std::size_t end) const;

 private:
  std::size_t n_;
  std::size_t dim_;
  std::uint64_t seed_;
  int components_;
  std::vector<float> means_;  // components x dim, row-major
};

}  // namespace whs
