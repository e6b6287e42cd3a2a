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

#include "lpir/stores.hpp"

#include "lpir/crypto.hpp"
#include "lpir/errors.hpp"
#include "lpir/pir_tau.hpp"

namespace lpir {

std::vector<StoredDatabase> make_share_stores(const StoredDatabase& plain, int tau,
                                              const EvalPointSet& points,
                                              RandomSource& rng) {
  if (plain.meta.kind != StoreKind::kPlain) {
    fail(ErrorCode::kParameter, "only a plaintext database can be shared");
  }
  auto set = pu_encode_database(plain.matrix, tau, points, rng);
  crypto::Sha256 group;
  for (const auto& m : set.replicas) group.update(body_digest(m));
  const auto digest = group.finish();

  std::vector<StoredDatabase> out;
  for (std::size_t i = 0; i < set.replicas.size(); ++i) {
    StoredDatabase s{std::move(set.replicas[i]), plain.meta};
    s.meta.kind = StoreKind::kShare;
    s.meta.group_digest = digest;
    s.meta.tau = static_cast<std::uint8_t>(tau);
    s.meta.alpha = points[i];
    s.meta.servers = static_cast<std::uint8_t>(points.size());
    s.meta.total_rows = plain.matrix.rows();
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<StoredDatabase> make_chunk_stores(const StoredDatabase& plain,
                                              std::size_t servers,
                                              std::size_t redundancy) {
  if (plain.meta.kind != StoreKind::kPlain) {
    fail(ErrorCode::kParameter, "only a plaintext database can be partitioned");
  }
  auto parts = raid_partition(plain.matrix, servers, redundancy);
  std::vector<StoredDatabase> out;
  for (auto& p : parts) {
    StoredDatabase s{std::move(p.rows), plain.meta};
    s.meta.kind = StoreKind::kChunk;
    s.meta.group_digest = plain.meta.group_digest;
    s.meta.servers = static_cast<std::uint8_t>(servers);
    s.meta.redundancy = static_cast<std::uint8_t>(redundancy);
    s.meta.first_chunk = p.server;
    s.meta.total_rows = plain.matrix.rows();
    out.push_back(std::move(s));
  }
  return out;
}

ChunkStore chunk_store_of(const StoredDatabase& stored) {
  if (stored.meta.kind != StoreKind::kChunk) fail(ErrorCode::kFormat, "not a chunk store");
  ChunkLayout layout(stored.meta.servers, stored.meta.redundancy, stored.meta.total_rows);
  if (stored.meta.first_chunk == 0 || stored.meta.first_chunk > layout.servers() ||
      stored.matrix.rows() != layout.chunk_rows() * layout.redundancy()) {
    fail(ErrorCode::kFormat, "chunk store does not match its layout");
  }
  return {stored.meta.first_chunk, layout, stored.matrix};
}

}  // namespace lpir
