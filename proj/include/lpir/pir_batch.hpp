// Copyright 2026 The lpir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpir/gf256.hpp"
#include "lpir/pir_goldberg.hpp"
#include "lpir/sharing.hpp"
#include "lpir/spectrumdb.hpp"

// Batched Shamir-shared retrieval for a client that knows its upcoming
// locations: each server answers q stacked queries with one matrix product.
namespace lpir {

class RandomSource;

// Dense row-major matrix over GF(2^8).
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  FieldMatrix(std::size_t rows, std::size_t cols, std::vector<gf256::Element> data);

  static FieldMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  gf256::Element at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  gf256::Element& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const gf256::Element> row(std::size_t i) const {
    return std::span<const gf256::Element>(data_).subspan(i * cols_, cols_);
  }
  std::span<gf256::Element> row(std::size_t i) {
    return std::span<gf256::Element>(data_).subspan(i * cols_, cols_);
  }
  std::span<const gf256::Element> data() const { return data_; }

  bool operator==(const FieldMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<gf256::Element> data_;
};

inline constexpr std::size_t kDefaultStrassenCutoff = 64;

struct StrassenStats {
  // Products computed without recursion (leaves).
  std::uint64_t leaf_multiplications = 0;
};

// Reference schoolbook product.
FieldMatrix naive_mul(const FieldMatrix& a, const FieldMatrix& b);

// Strassen recursion over GF(2^8). Blocks whose smallest dimension is below
// `cutoff` (or equal to 1) are multiplied directly: schoolbook for few rows,
// otherwise with a table of the 256 multiples of each column of `a`, which
// turns the q lookups per entry of `b` into one q-byte XOR. Odd dimensions are
// padded with zeros at each level and stripped on return. Exact: additions are
// XOR.
FieldMatrix strassen_mul(const FieldMatrix& a, const FieldMatrix& b,
                         std::size_t cutoff = kDefaultStrassenCutoff,
                         StrassenStats* stats = nullptr);

// Same, with the database as right operand (no copy).
FieldMatrix strassen_mul(const FieldMatrix& a, const DatabaseMatrix& b,
                         std::size_t cutoff = kDefaultStrassenCutoff,
                         StrassenStats* stats = nullptr);

struct QueryMatrix {
  gf256::Element alpha = 0;
  FieldMatrix rows;  // q x r, row j is the share of query j
};

struct ResponseMatrix {
  std::uint16_t server_id = 0;
  gf256::Element alpha = 0;
  FieldMatrix rows;  // q x s
};

// q independent query sharings, drawn in the order of `betas`, stacked per
// server. With one beta the rows are bit-identical to goldberg_build_queries.
std::vector<QueryMatrix> batch_build_queries(std::span<const std::uint64_t> betas,
                                             std::uint64_t r, int threshold,
                                             const EvalPointSet& points,
                                             RandomSource& rng);

ResponseMatrix batch_server_answer(std::uint16_t server_id, const QueryMatrix& query,
                                   const DatabaseMatrix& db,
                                   std::size_t cutoff = kDefaultStrassenCutoff);

// Row-wise goldberg_recover.
std::vector<RecoveryReport> batch_recover(std::span<const ResponseMatrix> responses,
                                          int degree);

}  // namespace lpir
