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
#include <vector>

#include "lpir/pir_raid.hpp"
#include "lpir/sharing.hpp"
#include "lpir/spectrumdb.hpp"

// Turns a plaintext database into the per-server stores of a deployment.
namespace lpir {

class RandomSource;

// One share store per point. Every store carries the same group digest: the
// hash of the concatenated per-replica body digests.
std::vector<StoredDatabase> make_share_stores(const StoredDatabase& plain, int tau,
                                              const EvalPointSet& points,
                                              RandomSource& rng);

// One chunk store per server. The group digest is the plaintext body digest.
std::vector<StoredDatabase> make_chunk_stores(const StoredDatabase& plain,
                                              std::size_t servers,
                                              std::size_t redundancy);

// Rebuilds the in-memory chunk store from a loaded chunk-store file.
ChunkStore chunk_store_of(const StoredDatabase& stored);

}  // namespace lpir
