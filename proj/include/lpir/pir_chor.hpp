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

#include "lpir/bitvec.hpp"
#include "lpir/spectrumdb.hpp"

// XOR-based retrieval over l replicated databases. (l-1)-private; neither
// robust to silent servers nor able to attribute a wrong answer.
namespace lpir {

class RandomSource;

struct ChorQuerySet {
  // shares[i] goes to server i + 1.
  std::vector<BitVector> shares;
};

struct ChorResponse {
  std::uint16_t server_id = 0;
  std::vector<std::uint8_t> block;
};

// l-1 uniform r-bit strings, the last one fixing the XOR to e_beta.
ChorQuerySet chor_build_query(std::uint64_t beta, std::uint64_t r,
                              std::size_t servers, RandomSource& rng);

// XOR of the rows whose selection bit is set.
std::vector<std::uint8_t> chor_answer(const BitVector& rho, const DatabaseMatrix& db);

ChorResponse chor_server_answer(std::uint16_t server_id, const BitVector& rho,
                                const DatabaseMatrix& db);

// Needs one response from every server; Error(kIncompleteResponse) otherwise.
std::vector<std::uint8_t> chor_reconstruct(std::span<const ChorResponse> responses,
                                           std::size_t servers);

// Selection kernel shared with the partitioned scheme: XORs into `acc` every
// row j of `rows` whose bit rho[bit_offset + j] is set.
void xor_selected_rows(const BitVector& rho, std::size_t bit_offset,
                       std::span<const std::uint8_t> rows, std::size_t row_bytes,
                       std::span<std::uint8_t> acc);

}  // namespace lpir
