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

#include "lpir/pir_raid.hpp"

#include <string>

#include "lpir/byteio.hpp"
#include "lpir/errors.hpp"
#include "lpir/random.hpp"

namespace lpir {

ChunkLayout::ChunkLayout(std::size_t servers, std::size_t redundancy,
                         std::uint64_t total_rows)
    : servers_(servers), redundancy_(redundancy), total_rows_(total_rows) {
  if (redundancy < 2 || redundancy > servers) {
    fail(ErrorCode::kParameter, "redundancy must satisfy 2 <= pi <= l (pi=" +
                                    std::to_string(redundancy) + ")");
  }
  if (total_rows == 0 || total_rows % servers != 0) {
    fail(ErrorCode::kParameter, "row count " + std::to_string(total_rows) +
                                    " is not a multiple of l=" + std::to_string(servers));
  }
  if (servers > 255) fail(ErrorCode::kParameter, "at most 255 servers");
}

std::vector<std::size_t> ChunkLayout::chunks_of(std::size_t server) const {
  if (server == 0 || server > servers_) fail(ErrorCode::kParameter, "no such server");
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < redundancy_; ++m) out.push_back((server - 1 + m) % servers_ + 1);
  return out;
}

std::vector<std::size_t> ChunkLayout::holders_of(std::size_t chunk) const {
  if (chunk == 0 || chunk > servers_) fail(ErrorCode::kParameter, "no such chunk");
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < redundancy_; ++m) {
    out.push_back((chunk - 1 + servers_ - m) % servers_ + 1);
  }
  return out;
}

crypto::Digest ChunkLayout::digest() const {
  ByteWriter w(Endian::kBig);
  w.put(static_cast<std::uint64_t>(servers_));
  w.put(static_cast<std::uint64_t>(redundancy_));
  w.put(total_rows_);
  return crypto::sha256(w.buffer());
}

std::vector<ChunkStore> raid_partition(const DatabaseMatrix& db, std::size_t servers,
                                       std::size_t redundancy) {
  const ChunkLayout layout(servers, redundancy, db.rows());
  const std::uint64_t cr = layout.chunk_rows();
  const std::uint64_t b = db.record_bytes();
  std::vector<ChunkStore> stores;
  for (std::size_t s = 1; s <= servers; ++s) {
    std::vector<std::uint8_t> data;
    data.reserve(redundancy * cr * b);
    for (auto chunk : layout.chunks_of(s)) {
      const auto first = db.data().subspan((chunk - 1) * cr * b, cr * b);
      data.insert(data.end(), first.begin(), first.end());
    }
    stores.push_back({static_cast<std::uint16_t>(s), layout,
                      DatabaseMatrix(redundancy * cr, b, std::move(data))});
  }
  return stores;
}

BitVector expand_part(const RaidSeed& seed, std::size_t chunk, std::uint64_t bits) {
  const auto stream =
      crypto::aes128_ctr_stream(seed, static_cast<std::uint32_t>(chunk), packed_bytes(bits));
  return BitVector::from_bytes(stream, bits);
}

std::vector<RaidQuery> raid_build_queries(std::uint64_t beta, const ChunkLayout& layout,
                                          RandomSource& rng) {
  const std::uint64_t r = layout.total_rows();
  if (beta == 0 || beta > r) fail(ErrorCode::kIndex, "row index out of range");
  const std::uint64_t cr = layout.chunk_rows();
  const std::size_t l = layout.servers();

  std::vector<RaidQuery> q(l);
  for (std::size_t i = 0; i < l; ++i) {
    q[i].server = static_cast<std::uint16_t>(i + 1);
    rng.fill(q[i].seed);
  }
  const std::size_t target_chunk = static_cast<std::size_t>((beta - 1) / cr) + 1;
  for (std::size_t chunk = 1; chunk <= l; ++chunk) {
    const auto holders = layout.holders_of(chunk);
    BitVector flip(cr);
    if (chunk == target_chunk) flip.set((beta - 1) % cr, true);
    for (std::size_t m = 1; m < holders.size(); ++m) {
      flip ^= expand_part(q[holders[m] - 1].seed, chunk, cr);
    }
    q[holders.front() - 1].flip = std::move(flip);
  }
  return q;
}

ChorResponse raid_server_answer(const RaidQuery& query, const ChunkStore& store) {
  const auto& layout = store.layout;
  const std::uint64_t cr = layout.chunk_rows();
  const std::uint64_t b = store.rows.record_bytes();
  if (query.flip.size() != cr) {
    fail(ErrorCode::kProtocol, "flip chunk has " + std::to_string(query.flip.size()) +
                                   " bits, layout needs " + std::to_string(cr));
  }
  if (store.rows.rows() != cr * layout.redundancy()) {
    fail(ErrorCode::kProtocol, "chunk store does not match its layout");
  }
  std::vector<std::uint8_t> acc(b, 0);
  const auto chunks = layout.chunks_of(store.server);
  for (std::size_t m = 0; m < chunks.size(); ++m) {
    const auto rows = store.rows.data().subspan(m * cr * b, cr * b);
    if (m == 0) {
      xor_selected_rows(query.flip, 0, rows, b, acc);
    } else {
      xor_selected_rows(expand_part(query.seed, chunks[m], cr), 0, rows, b, acc);
    }
  }
  return {store.server, std::move(acc)};
}

std::vector<std::uint8_t> raid_reconstruct(std::span<const ChorResponse> responses,
                                           std::size_t servers) {
  return chor_reconstruct(responses, servers);
}

}  // namespace lpir
