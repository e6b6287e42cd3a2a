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

#include "lpir/pir_chor.hpp"

#include <bit>
#include <set>
#include <string>

#include "lpir/errors.hpp"
#include "lpir/random.hpp"

namespace lpir {

ChorQuerySet chor_build_query(std::uint64_t beta, std::uint64_t r,
                              std::size_t servers, RandomSource& rng) {
  if (servers < 2) fail(ErrorCode::kParameter, "Chor retrieval needs at least two servers");
  BitVector last = basis_vector(beta, r);
  ChorQuerySet q;
  q.shares.reserve(servers);
  for (std::size_t i = 0; i + 1 < servers; ++i) {
    q.shares.push_back(BitVector::random(r, rng));
    last ^= q.shares.back();
  }
  q.shares.push_back(std::move(last));
  return q;
}

void xor_selected_rows(const BitVector& rho, std::size_t bit_offset,
                       std::span<const std::uint8_t> rows, std::size_t row_bytes,
                       std::span<std::uint8_t> acc) {
  const std::size_t count = row_bytes == 0 ? 0 : rows.size() / row_bytes;
  if (bit_offset + count > rho.size() || acc.size() != row_bytes) {
    fail(ErrorCode::kProtocol, "selection vector does not match the stored rows");
  }
  std::uint8_t* out = acc.data();
  for (std::size_t j = 0; j < count; ++j) {
    if (!rho.get(bit_offset + j)) continue;
    const std::uint8_t* row = rows.data() + j * row_bytes;
    for (std::size_t c = 0; c < row_bytes; ++c) out[c] ^= row[c];
  }
}

std::vector<std::uint8_t> chor_answer(const BitVector& rho, const DatabaseMatrix& db) {
  if (rho.size() != db.rows()) {
    fail(ErrorCode::kProtocol, "query length " + std::to_string(rho.size()) +
                                   " does not match r=" + std::to_string(db.rows()));
  }
  std::vector<std::uint8_t> acc(db.record_bytes(), 0);
  const std::size_t b = db.record_bytes();
  const auto lanes = rho.lanes();
  const std::uint8_t* base = db.data().data();
  for (std::size_t li = 0; li < lanes.size(); ++li) {
    std::uint64_t lane = lanes[li];
    while (lane != 0) {
      const std::size_t j = li * 64 + static_cast<std::size_t>(std::countr_zero(lane));
      lane &= lane - 1;
      const std::uint8_t* row = base + j * b;
      for (std::size_t c = 0; c < b; ++c) acc[c] ^= row[c];
    }
  }
  return acc;
}

ChorResponse chor_server_answer(std::uint16_t server_id, const BitVector& rho,
                                const DatabaseMatrix& db) {
  return {server_id, chor_answer(rho, db)};
}

std::vector<std::uint8_t> chor_reconstruct(std::span<const ChorResponse> responses,
                                           std::size_t servers) {
  if (responses.size() != servers || servers == 0) {
    fail(ErrorCode::kIncompleteResponse,
         "XOR reconstruction needs all " + std::to_string(servers) +
             " responses, got " + std::to_string(responses.size()));
  }
  std::set<std::uint16_t> ids;
  for (const auto& r : responses) ids.insert(r.server_id);
  if (ids.size() != servers) {
    fail(ErrorCode::kIncompleteResponse, "duplicate responses from one server");
  }
  std::vector<std::uint8_t> block = responses.front().block;
  for (std::size_t i = 1; i < responses.size(); ++i) {
    if (responses[i].block.size() != block.size()) {
      fail(ErrorCode::kProtocol, "responses have different block sizes");
    }
    for (std::size_t c = 0; c < block.size(); ++c) block[c] ^= responses[i].block[c];
  }
  return block;
}

}  // namespace lpir
