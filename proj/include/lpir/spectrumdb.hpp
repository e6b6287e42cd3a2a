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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lpir/bitvec.hpp"
#include "lpir/crypto.hpp"

namespace lpir {

// Coverage grid agreed between clients and servers. Rows of the database are
// laid out cell-major, then channel, then time slot.
struct GridConfig {
  double origin_lat = 44.5646;  // south-west corner
  double origin_lon = -123.2620;
  double cell_size_m = 100.0;
  std::uint32_t width = 16;     // cells east-west
  std::uint32_t height = 16;    // cells north-south
  std::uint32_t channels = 4;
  std::uint32_t first_channel = 21;
  std::uint32_t timeslots = 4;

  std::uint64_t key_count() const {
    return std::uint64_t{width} * height * channels * timeslots;
  }
  // A grid of `rows` keys: one channel, one slot, a single strip of cells.
  static GridConfig strip(std::uint64_t rows);
  void validate() const;
  bool operator==(const GridConfig&) const = default;
};

struct SpectrumKey {
  double lat = 0;
  double lon = 0;
  std::uint32_t channel = 0;
  std::uint32_t timeslot = 0;
};

inline constexpr double kMetersPerDegreeLat = 111320.0;

// 1-based row index of the key. Throws Error(kCoverage) outside the grid.
std::uint64_t inv_index(const SpectrumKey& key, const GridConfig& grid);

// Centre of the cell that owns row beta.
SpectrumKey key_for_index(std::uint64_t beta, const GridConfig& grid);

// e_beta of length r. Throws Error(kIndex) unless 1 <= beta <= r.
BitVector basis_vector(std::uint64_t beta, std::uint64_t r);

// r x s matrix of 8-bit words, row-major. Row beta (1-based) is record beta.
class DatabaseMatrix {
 public:
  static constexpr unsigned kWordBits = 8;

  DatabaseMatrix() = default;
  DatabaseMatrix(std::uint64_t rows, std::uint64_t words_per_row);
  DatabaseMatrix(std::uint64_t rows, std::uint64_t words_per_row,
                 std::vector<std::uint8_t> data);

  std::uint64_t rows() const { return rows_; }
  std::uint64_t words_per_row() const { return words_; }
  std::uint64_t record_bytes() const { return words_; }
  std::uint64_t record_bits() const { return words_ * kWordBits; }
  std::uint64_t bits() const { return rows_ * words_ * kWordBits; }

  std::span<const std::uint8_t> row(std::uint64_t beta) const;
  std::span<std::uint8_t> mutable_row(std::uint64_t beta);

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> mutable_data() { return data_; }

  bool operator==(const DatabaseMatrix&) const = default;

 private:
  std::uint64_t rows_ = 0;
  std::uint64_t words_ = 0;
  std::vector<std::uint8_t> data_;
};

// Record payload layout (little-endian):
//   [0]      availability flag (0 or 1)
//   [1..2]   maximum permitted EIRP, centi-dBm (int16)
//   [3..6]   validity window start, seconds since epoch
//   [7..10]  validity window end
//   [11..b-5] opaque filler
//   [b-4..]  CRC-32 of bytes [0..b-5]
inline constexpr std::size_t kMinRecordBytes = 16;
inline constexpr std::size_t kDefaultRecordBytes = 560;

struct SpectrumRecord {
  bool available = false;
  std::int16_t max_power_centi_dbm = 0;
  std::uint32_t valid_from = 0;
  std::uint32_t valid_until = 0;
};

bool record_checksum_ok(std::span<const std::uint8_t> payload);
SpectrumRecord decode_record(std::span<const std::uint8_t> payload);

// Payload of row beta as a keyed hash of (seed, beta). Lets any retrieval be
// validated without the database at hand.
std::vector<std::uint8_t> make_record(std::uint64_t seed, std::uint64_t beta,
                                      std::size_t record_bytes);

// Overwrite the trailing checksum of a payload.
void seal_record(std::span<std::uint8_t> payload);

enum class StoreKind : std::uint8_t { kPlain = 0, kShare = 1, kChunk = 2 };

// Everything in a database file besides the body.
struct StoreMetadata {
  StoreKind kind = StoreKind::kPlain;
  GridConfig grid;
  std::uint64_t seed = 0;
  std::uint64_t padding_rows = 0;
  // Identical across every replica/share/chunk store of one deployment;
  // servers advertise it at HELLO so clients can detect unsynchronised stores.
  crypto::Digest group_digest{};
  std::uint8_t tau = 0;          // share stores
  std::uint8_t alpha = 0;        // share stores
  std::uint8_t servers = 0;      // chunk stores: l
  std::uint8_t redundancy = 0;   // chunk stores: pi
  std::uint16_t first_chunk = 0; // chunk stores, 1-based
  std::uint64_t total_rows = 0;  // rows of the full logical database
};

struct StoredDatabase {
  DatabaseMatrix matrix;
  StoreMetadata meta;
};

StoredDatabase generate_database(const GridConfig& grid,
                                 std::size_t record_bytes, std::uint64_t seed,
                                 std::uint64_t row_multiple = 1);

crypto::Digest body_digest(const DatabaseMatrix& m);

inline constexpr std::uint16_t kDatabaseFormatVersion = 1;
inline constexpr std::size_t kDatabaseHeaderBytes = 64;

std::vector<std::uint8_t> encode_database(const StoredDatabase& db);
// Throws kFormat (bad magic), kVersion, kTruncated, kDigest.
StoredDatabase decode_database(std::span<const std::uint8_t> bytes);

void store_database(const StoredDatabase& db, const std::filesystem::path& path);
StoredDatabase load_database(const std::filesystem::path& path);

}  // namespace lpir
