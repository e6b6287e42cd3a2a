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

#include "lpir/spectrumdb.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>

#include "lpir/byteio.hpp"
#include "lpir/errors.hpp"

namespace lpir {
namespace {

constexpr char kMagic[4] = {'S', 'P', 'D', 'B'};
constexpr std::uint32_t kExtensionBytes = 128;

double meters_per_degree_lon(double lat) {
  return kMetersPerDegreeLat * std::cos(lat * std::numbers::pi / 180.0);
}

std::vector<std::uint8_t> encode_extension(const StoreMetadata& meta) {
  ByteWriter w(Endian::kLittle);
  w.put_f64(meta.grid.origin_lat);
  w.put_f64(meta.grid.origin_lon);
  w.put_f64(meta.grid.cell_size_m);
  w.put(meta.grid.width);
  w.put(meta.grid.height);
  w.put(meta.grid.channels);
  w.put(meta.grid.first_channel);
  w.put(meta.grid.timeslots);
  w.put(meta.seed);
  w.put(meta.padding_rows);
  w.put(meta.total_rows);
  w.put_bytes(meta.group_digest);
  w.put(meta.tau);
  w.put(meta.alpha);
  w.put(meta.servers);
  w.put(meta.redundancy);
  w.put(meta.first_chunk);
  w.put_zeros(kExtensionBytes - w.size());
  return w.take();
}

StoreMetadata decode_extension(std::span<const std::uint8_t> ext,
                               std::uint8_t kind) {
  ByteReader r(ext, Endian::kLittle, ErrorCode::kFormat);
  StoreMetadata meta;
  if (kind > static_cast<std::uint8_t>(StoreKind::kChunk)) {
    fail(ErrorCode::kFormat, "unknown store kind");
  }
  meta.kind = static_cast<StoreKind>(kind);
  meta.grid.origin_lat = r.get_f64();
  meta.grid.origin_lon = r.get_f64();
  meta.grid.cell_size_m = r.get_f64();
  meta.grid.width = r.get<std::uint32_t>();
  meta.grid.height = r.get<std::uint32_t>();
  meta.grid.channels = r.get<std::uint32_t>();
  meta.grid.first_channel = r.get<std::uint32_t>();
  meta.grid.timeslots = r.get<std::uint32_t>();
  meta.seed = r.get<std::uint64_t>();
  meta.padding_rows = r.get<std::uint64_t>();
  meta.total_rows = r.get<std::uint64_t>();
  auto g = r.get_bytes(32);
  std::copy(g.begin(), g.end(), meta.group_digest.begin());
  meta.tau = r.get<std::uint8_t>();
  meta.alpha = r.get<std::uint8_t>();
  meta.servers = r.get<std::uint8_t>();
  meta.redundancy = r.get<std::uint8_t>();
  meta.first_chunk = r.get<std::uint16_t>();
  return meta;
}

}  // namespace

GridConfig GridConfig::strip(std::uint64_t rows) {
  if (rows == 0 || rows > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorCode::kParameter, "strip grid needs 1..2^32-1 rows");
  }
  GridConfig g;
  g.width = static_cast<std::uint32_t>(rows);
  g.height = 1;
  g.channels = 1;
  g.timeslots = 1;
  return g;
}

void GridConfig::validate() const {
  if (width == 0 || height == 0 || channels == 0 || timeslots == 0) {
    fail(ErrorCode::kParameter, "grid dimensions must be positive");
  }
  if (!(cell_size_m > 0)) fail(ErrorCode::kParameter, "cell size must be positive");
  if (origin_lat < -90 || origin_lat > 90 || origin_lon < -180 || origin_lon > 180) {
    fail(ErrorCode::kParameter, "grid origin is not a valid WGS-84 position");
  }
}

std::uint64_t inv_index(const SpectrumKey& key, const GridConfig& grid) {
  if (key.lat < -90 || key.lat > 90 || key.lon < -180 || key.lon > 180) {
    fail(ErrorCode::kCoverage, "position is not a valid WGS-84 coordinate");
  }
  const double north_m = (key.lat - grid.origin_lat) * kMetersPerDegreeLat;
  const double east_m = (key.lon - grid.origin_lon) * meters_per_degree_lon(grid.origin_lat);
  const double row_f = std::floor(north_m / grid.cell_size_m);
  const double col_f = std::floor(east_m / grid.cell_size_m);
  if (row_f < 0 || col_f < 0 || row_f >= grid.height || col_f >= grid.width) {
    fail(ErrorCode::kCoverage, "position outside the grid coverage");
  }
  if (key.channel < grid.first_channel ||
      key.channel - grid.first_channel >= grid.channels) {
    fail(ErrorCode::kCoverage, "channel outside the configured channel set");
  }
  if (key.timeslot >= grid.timeslots) {
    fail(ErrorCode::kCoverage, "time slot outside the configured horizon");
  }
  const auto cell_row = static_cast<std::uint64_t>(row_f);
  const auto cell_col = static_cast<std::uint64_t>(col_f);
  const std::uint64_t channel_idx = key.channel - grid.first_channel;
  return ((cell_row * grid.width + cell_col) * grid.channels + channel_idx) *
             grid.timeslots +
         key.timeslot + 1;
}

SpectrumKey key_for_index(std::uint64_t beta, const GridConfig& grid) {
  if (beta == 0 || beta > grid.key_count()) {
    fail(ErrorCode::kIndex, "row index outside the key lattice");
  }
  std::uint64_t z = beta - 1;
  SpectrumKey key;
  key.timeslot = static_cast<std::uint32_t>(z % grid.timeslots);
  z /= grid.timeslots;
  key.channel = grid.first_channel + static_cast<std::uint32_t>(z % grid.channels);
  z /= grid.channels;
  const std::uint64_t cell_col = z % grid.width;
  const std::uint64_t cell_row = z / grid.width;
  key.lat = grid.origin_lat +
            (static_cast<double>(cell_row) + 0.5) * grid.cell_size_m / kMetersPerDegreeLat;
  key.lon = grid.origin_lon + (static_cast<double>(cell_col) + 0.5) * grid.cell_size_m /
                                  meters_per_degree_lon(grid.origin_lat);
  return key;
}

BitVector basis_vector(std::uint64_t beta, std::uint64_t r) {
  if (beta == 0 || beta > r) fail(ErrorCode::kIndex, "row index out of range");
  BitVector e(r);
  e.set(beta - 1, true);
  return e;
}

DatabaseMatrix::DatabaseMatrix(std::uint64_t rows, std::uint64_t words_per_row)
    : rows_(rows), words_(words_per_row), data_(rows * words_per_row, 0) {}

DatabaseMatrix::DatabaseMatrix(std::uint64_t rows, std::uint64_t words_per_row,
                               std::vector<std::uint8_t> data)
    : rows_(rows), words_(words_per_row), data_(std::move(data)) {
  if (data_.size() != rows * words_per_row) {
    fail(ErrorCode::kParameter, "matrix data does not match its dimensions");
  }
}

std::span<const std::uint8_t> DatabaseMatrix::row(std::uint64_t beta) const {
  if (beta == 0 || beta > rows_) fail(ErrorCode::kIndex, "row index out of range");
  return std::span<const std::uint8_t>(data_).subspan((beta - 1) * words_, words_);
}

std::span<std::uint8_t> DatabaseMatrix::mutable_row(std::uint64_t beta) {
  if (beta == 0 || beta > rows_) fail(ErrorCode::kIndex, "row index out of range");
  return std::span<std::uint8_t>(data_).subspan((beta - 1) * words_, words_);
}

bool record_checksum_ok(std::span<const std::uint8_t> payload) {
  if (payload.size() < kMinRecordBytes) return false;
  const auto body = payload.first(payload.size() - 4);
  ByteReader r(payload.last(4), Endian::kLittle);
  return r.get<std::uint32_t>() == crypto::crc32(body);
}

void seal_record(std::span<std::uint8_t> payload) {
  if (payload.size() < kMinRecordBytes) {
    fail(ErrorCode::kParameter, "record payload too small");
  }
  const std::uint32_t crc = crypto::crc32(payload.first(payload.size() - 4));
  for (int i = 0; i < 4; ++i) {
    payload[payload.size() - 4 + static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(crc >> (8 * i));
  }
}

SpectrumRecord decode_record(std::span<const std::uint8_t> payload) {
  if (payload.size() < kMinRecordBytes) {
    fail(ErrorCode::kParameter, "record payload too small");
  }
  ByteReader r(payload, Endian::kLittle);
  SpectrumRecord rec;
  rec.available = r.get<std::uint8_t>() != 0;
  rec.max_power_centi_dbm = r.get<std::int16_t>();
  rec.valid_from = r.get<std::uint32_t>();
  rec.valid_until = r.get<std::uint32_t>();
  return rec;
}

std::vector<std::uint8_t> make_record(std::uint64_t seed, std::uint64_t beta,
                                      std::size_t record_bytes) {
  if (record_bytes < kMinRecordBytes) {
    fail(ErrorCode::kParameter, "record must be at least 16 bytes");
  }
  std::vector<std::uint8_t> stream;
  stream.reserve(record_bytes + 32);
  for (std::uint32_t counter = 0; stream.size() < record_bytes; ++counter) {
    ByteWriter w(Endian::kLittle);
    w.put(seed);
    w.put(beta);
    w.put(counter);
    const auto d = crypto::sha256(w.buffer());
    stream.insert(stream.end(), d.begin(), d.end());
  }
  stream.resize(record_bytes);

  ByteReader r(stream, Endian::kLittle);
  const std::uint8_t flag = r.get<std::uint8_t>() & 1U;
  const auto power = static_cast<std::int16_t>(r.get<std::uint16_t>() % 4001);
  const std::uint32_t from = 1700000000U + r.get<std::uint32_t>() % (86400U * 365U);
  const std::uint32_t until = from + 3600U * (1U + r.get<std::uint8_t>() % 48U);

  ByteWriter head(Endian::kLittle);
  head.put(flag);
  head.put(power);
  head.put(from);
  head.put(until);
  std::copy(head.buffer().begin(), head.buffer().end(), stream.begin());
  seal_record(stream);
  return stream;
}

StoredDatabase generate_database(const GridConfig& grid, std::size_t record_bytes,
                                 std::uint64_t seed, std::uint64_t row_multiple) {
  grid.validate();
  if (record_bytes < kMinRecordBytes) {
    fail(ErrorCode::kParameter, "record size must be at least 16 bytes");
  }
  if (row_multiple == 0) fail(ErrorCode::kParameter, "row multiple must be positive");
  const std::uint64_t keys = grid.key_count();
  const std::uint64_t rows = (keys + row_multiple - 1) / row_multiple * row_multiple;

  StoredDatabase db;
  db.matrix = DatabaseMatrix(rows, record_bytes);
  for (std::uint64_t beta = 1; beta <= rows; ++beta) {
    const auto rec = make_record(seed, beta, record_bytes);
    std::copy(rec.begin(), rec.end(), db.matrix.mutable_row(beta).begin());
  }
  db.meta.kind = StoreKind::kPlain;
  db.meta.grid = grid;
  db.meta.seed = seed;
  db.meta.padding_rows = rows - keys;
  db.meta.total_rows = rows;
  db.meta.group_digest = body_digest(db.matrix);
  return db;
}

crypto::Digest body_digest(const DatabaseMatrix& m) { return crypto::sha256(m.data()); }

std::vector<std::uint8_t> encode_database(const StoredDatabase& db) {
  const auto ext = encode_extension(db.meta);
  crypto::Sha256 h;
  h.update(ext);
  h.update(db.matrix.data());
  const auto digest = h.finish();

  ByteWriter w(Endian::kLittle);
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  w.put(kDatabaseFormatVersion);
  w.put(static_cast<std::uint8_t>(DatabaseMatrix::kWordBits));
  w.put(static_cast<std::uint8_t>(db.meta.kind));
  w.put(db.matrix.rows());
  w.put(db.matrix.words_per_row());
  w.put(static_cast<std::uint32_t>(ext.size()));
  w.put(std::uint32_t{0});
  w.put_bytes(digest);
  w.put_bytes(ext);
  w.put_bytes(db.matrix.data());
  return w.take();
}

StoredDatabase decode_database(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kDatabaseHeaderBytes) {
    fail(ErrorCode::kTruncated, "database file shorter than its header");
  }
  if (!std::equal(kMagic, kMagic + 4, bytes.begin())) {
    fail(ErrorCode::kFormat, "not a spectrum database file (bad magic)");
  }
  ByteReader r(bytes, Endian::kLittle, ErrorCode::kTruncated);
  r.skip(4);
  const auto version = r.get<std::uint16_t>();
  if (version != kDatabaseFormatVersion) {
    fail(ErrorCode::kVersion,
         "unsupported database format version " + std::to_string(version));
  }
  const auto w = r.get<std::uint8_t>();
  const auto kind = r.get<std::uint8_t>();
  const auto rows = r.get<std::uint64_t>();
  const auto words = r.get<std::uint64_t>();
  const auto ext_len = r.get<std::uint32_t>();
  r.skip(4);
  const auto stored_digest = r.get_bytes(32);
  if (w != DatabaseMatrix::kWordBits) {
    fail(ErrorCode::kFormat, "unsupported word width");
  }
  if (words != 0 && rows > std::numeric_limits<std::uint64_t>::max() / words) {
    fail(ErrorCode::kTruncated, "header dimensions overflow");
  }
  const std::uint64_t body = rows * words;
  if (bytes.size() - kDatabaseHeaderBytes < ext_len ||
      bytes.size() - kDatabaseHeaderBytes - ext_len != body) {
    fail(ErrorCode::kTruncated, "file length does not match header r*s");
  }
  const auto ext = r.get_bytes(ext_len);
  const auto body_bytes = r.get_bytes(body);

  crypto::Sha256 h;
  h.update(ext);
  h.update(body_bytes);
  const auto digest = h.finish();
  if (!std::equal(digest.begin(), digest.end(), stored_digest.begin())) {
    fail(ErrorCode::kDigest, "database content digest mismatch");
  }
  StoredDatabase db;
  db.meta = decode_extension(ext, kind);
  db.matrix = DatabaseMatrix(rows, words,
                             std::vector<std::uint8_t>(body_bytes.begin(), body_bytes.end()));
  return db;
}

void store_database(const StoredDatabase& db, const std::filesystem::path& path) {
  const auto bytes = encode_database(db);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "write failed: " + path.string());
}

StoredDatabase load_database(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_database(bytes);
}

}  // namespace lpir
