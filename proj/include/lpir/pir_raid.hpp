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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lpir/bitvec.hpp"
#include "lpir/crypto.hpp"
#include "lpir/pir_chor.hpp"
#include "lpir/spectrumdb.hpp"

// XOR retrieval over a partitioned database. The r rows are cut into l chunks
// of r/l rows; server i (1-based) stores the pi chunks i, i+1, ..., i+pi-1
// (mod l), so each chunk lives on pi servers and each server scans pi/l of the
// data. (pi-1)-private.
//
// A server's query part for its first stored chunk (the flip chunk) is sent
// explicitly; its parts for the other pi-1 chunks are expanded from a 128-bit
// seed with AES-128-CTR, nonce = chunk number. For every chunk the XOR of the
// pi holders' parts is e_beta restricted to that chunk. The flip chunks hide
// beta information-theoretically; the seeded parts only computationally.
namespace lpir {

class RandomSource;

inline constexpr std::size_t kSeedBytes = 16;  // kappa = 128 bits
using RaidSeed = std::array<std::uint8_t, kSeedBytes>;

class ChunkLayout {
 public:
  // Error(kParameter) unless 2 <= pi <= l and l | r.
  ChunkLayout(std::size_t servers, std::size_t redundancy, std::uint64_t total_rows);

  std::size_t servers() const { return servers_; }
  std::size_t redundancy() const { return redundancy_; }
  std::uint64_t total_rows() const { return total_rows_; }
  std::uint64_t chunk_rows() const { return total_rows_ / servers_; }

  // 1-based chunk numbers stored by a 1-based server, flip chunk first.
  std::vector<std::size_t> chunks_of(std::size_t server) const;
  // 1-based servers storing a chunk; the first one holds it as flip chunk.
  std::vector<std::size_t> holders_of(std::size_t chunk) const;

  crypto::Digest digest() const;

  bool operator==(const ChunkLayout&) const = default;

 private:
  std::size_t servers_;
  std::size_t redundancy_;
  std::uint64_t total_rows_;
};

struct ChunkStore {
  std::uint16_t server = 0;
  ChunkLayout layout;
  // Rows of chunks_of(server), in that order.
  DatabaseMatrix rows;
};

std::vector<ChunkStore> raid_partition(const DatabaseMatrix& db, std::size_t servers,
                                       std::size_t redundancy);

struct RaidQuery {
  std::uint16_t server = 0;
  BitVector flip;  // chunk_rows bits
  RaidSeed seed{};
};

// Part of `chunk` (1-based) derived from a seed.
BitVector expand_part(const RaidSeed& seed, std::size_t chunk, std::uint64_t bits);

// Draws one seed per server (server 1 first) from rng.
std::vector<RaidQuery> raid_build_queries(std::uint64_t beta, const ChunkLayout& layout,
                                          RandomSource& rng);

// XOR-select over every stored chunk, combined into one block.
ChorResponse raid_server_answer(const RaidQuery& query, const ChunkStore& store);

// Needs all l responses.
std::vector<std::uint8_t> raid_reconstruct(std::span<const ChorResponse> responses,
                                           std::size_t servers);

// Rows the server scans per answer.
inline std::uint64_t raid_rows_scanned(const ChunkStore& store) { return store.rows.rows(); }

}  // namespace lpir
