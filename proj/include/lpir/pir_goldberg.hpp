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
#include <set>
#include <span>
#include <vector>

#include "lpir/gf256.hpp"
#include "lpir/sharing.hpp"
#include "lpir/spectrumdb.hpp"

// Shamir-shared retrieval over GF(2^8). t-private, recovers from any k > t
// responses and corrects up to floor((k - t - 1) / 2) wrong ones.
//
// Byzantine correction is unique decoding (Berlekamp-Welch). List decoding
// reaches further (theta < k - floor(sqrt(k t))) but is not implemented; the
// decoder is a parameter of goldberg_recover so one can be slotted in.
namespace lpir {

class RandomSource;

struct GoldbergQuery {
  gf256::Element alpha = 0;
  std::vector<gf256::Element> rho;  // rho[j] = f_j(alpha)
};

struct GoldbergResponse {
  std::uint16_t server_id = 0;
  gf256::Element alpha = 0;
  std::vector<gf256::Element> values;  // rho . D
};

enum class RecoveryPath { kEasy, kHard };

const char* recovery_path_name(RecoveryPath path);

struct RecoveryStats {
  std::uint64_t field_multiplications = 0;
  // Responses the polynomial was fitted to on the easy path.
  std::size_t interpolation_points = 0;
};

struct RecoveryReport {
  std::vector<std::uint8_t> record;
  std::set<std::uint16_t> honest;
  std::set<std::uint16_t> byzantine;
  RecoveryPath path = RecoveryPath::kEasy;
  RecoveryStats stats;
};

// Query i is the Shamir share of e_beta at points[i]. threshold 0 degenerates
// to plain e_beta for every server.
std::vector<GoldbergQuery> goldberg_build_queries(std::uint64_t beta, std::uint64_t r,
                                                  int threshold,
                                                  const EvalPointSet& points,
                                                  RandomSource& rng);

// Vector-matrix product over GF(2^8): one table lookup and one XOR per word of
// the database, independent of the query content.
std::vector<gf256::Element> goldberg_answer(std::span<const gf256::Element> rho,
                                            const DatabaseMatrix& db);

GoldbergResponse goldberg_server_answer(std::uint16_t server_id,
                                        const GoldbergQuery& query,
                                        const DatabaseMatrix& db);

// Table lookups one server answer performs.
inline std::uint64_t goldberg_server_operations(const DatabaseMatrix& db) {
  return db.rows() * db.words_per_row();
}

// Recovers the record from k responses that are shares of a polynomial of the
// given degree (t for plain retrieval, t + tau against a shared database).
//
// Easy path: interpolate every word from the degree+1 lowest server ids and
// check every other response lies on the same polynomial. Any inconsistency
// escalates the whole record to the hard path, which decodes each word with
// `decoder` and blames every server flagged in any word.
RecoveryReport goldberg_recover(std::span<const GoldbergResponse> responses,
                                int degree,
                                const gf256::Decoder& decoder = gf256::rs_decode);

}  // namespace lpir
