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
#include <string>
#include <vector>

#include "lpir/bitvec.hpp"
#include "lpir/crypto.hpp"
#include "lpir/pir_batch.hpp"
#include "lpir/pir_raid.hpp"
#include "lpir/spectrumdb.hpp"

// Wire format. Every frame is
//
//   u32 length | u8 version | u8 kind | u8 protocol | body
//
// with `length` counting everything after itself. All integers big-endian.
// Field elements are GF(2^8) bytes under the modulus 0x11B; bit vectors are
// packed LSB-first (bit j is bit j % 8 of byte j / 8). RAID seeds expand with
// AES-128-CTR, key = seed, initial counter = chunk number (u32) || 0^96.
namespace lpir::wire {

inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kLengthPrefixBytes = 4;
inline constexpr std::size_t kFrameHeaderBytes = 3;
inline constexpr std::size_t kDefaultMaxFrame = 64u << 20;

enum class Kind : std::uint8_t {
  kHello = 1,
  kHelloAck = 2,
  kQuery = 3,
  kResponse = 4,
  kError = 5,
};

enum class Protocol : std::uint8_t {
  kNone = 0,
  kChor = 1,
  kGold = 2,
  kBatch = 3,
  kRaid = 4,
};

const char* protocol_name(Protocol p);
// Accepts "chor", "gold", "batch", "raid" (any case). Error(kParameter).
Protocol parse_protocol(const std::string& name);
inline std::uint8_t protocol_bit(Protocol p) {
  return static_cast<std::uint8_t>(1u << static_cast<unsigned>(p));
}

enum class ErrorReply : std::uint16_t {
  kMalformed = 1,
  kDimension = 2,
  kUnsupportedProtocol = 3,
  kVersion = 4,
  kInternal = 5,
};

struct Frame {
  std::uint8_t version = kVersion;
  Kind kind = Kind::kHello;
  Protocol protocol = Protocol::kNone;
  std::vector<std::uint8_t> body;
};

// Full frame including the length prefix.
std::vector<std::uint8_t> encode_frame(const Frame& frame);
// Parses the bytes after the length prefix. Error(kProtocol) if shorter than
// the frame header. Does not check the version.
Frame decode_frame(std::span<const std::uint8_t> payload);

// HELLO has an empty body. The acknowledgement describes the store.
struct HelloAck {
  std::uint16_t server_id = 0;
  std::uint8_t alpha = 0;
  std::uint8_t protocols = 0;  // bitmap of protocol_bit()
  crypto::Digest digest{};     // group digest of the deployment
  StoreKind kind = StoreKind::kPlain;
  std::uint8_t tau = 0;
  std::uint8_t servers = 0;
  std::uint8_t redundancy = 0;
  std::uint64_t rows = 0;        // rows this server holds
  std::uint64_t total_rows = 0;  // rows of the logical database
  std::uint64_t record_bytes = 0;
  GridConfig grid;
};
std::vector<std::uint8_t> encode_hello_ack(const HelloAck& ack);
HelloAck decode_hello_ack(std::span<const std::uint8_t> body);

// Query bodies.
//   CHOR:  r u64 | ceil(r/8) bytes
//   GOLD:  r u64 | t u8 | alpha u8 | r bytes
//   BATCH: q u32 | alpha u8 | t u8 | r u64 | q*r bytes
//   RAID:  layout digest[32] | chunk_rows u64 | ceil(chunk_rows/8) bytes | seed[16]
struct ChorQueryMsg {
  BitVector rho;
};
struct GoldQueryMsg {
  std::uint8_t t = 0;
  std::uint8_t alpha = 0;
  std::vector<std::uint8_t> rho;
};
struct BatchQueryMsg {
  std::uint8_t alpha = 0;
  std::uint8_t t = 0;
  FieldMatrix rows;
};
struct RaidQueryMsg {
  crypto::Digest layout{};
  BitVector flip;
  RaidSeed seed{};
};

// Response bodies.
//   CHOR/RAID: server_id u16 | compute_ns u64 | b/8 bytes
//   GOLD:      server_id u16 | compute_ns u64 | alpha u8 | s bytes
//   BATCH:     server_id u16 | compute_ns u64 | alpha u8 | q u32 | q*s bytes
struct BlockResponseMsg {
  std::uint16_t server_id = 0;
  std::uint64_t compute_ns = 0;
  std::vector<std::uint8_t> block;
};
struct GoldResponseMsg {
  std::uint16_t server_id = 0;
  std::uint64_t compute_ns = 0;
  std::uint8_t alpha = 0;
  std::vector<std::uint8_t> values;
};
struct BatchResponseMsg {
  std::uint16_t server_id = 0;
  std::uint64_t compute_ns = 0;
  std::uint8_t alpha = 0;
  FieldMatrix rows;
};

//   ERROR: code u16 | message (rest of the body, UTF-8)
struct ErrorMsg {
  ErrorReply code = ErrorReply::kInternal;
  std::string message;
};

std::vector<std::uint8_t> encode(const ChorQueryMsg& m);
std::vector<std::uint8_t> encode(const GoldQueryMsg& m);
std::vector<std::uint8_t> encode(const BatchQueryMsg& m);
std::vector<std::uint8_t> encode(const RaidQueryMsg& m);
std::vector<std::uint8_t> encode(const BlockResponseMsg& m);
std::vector<std::uint8_t> encode(const GoldResponseMsg& m);
std::vector<std::uint8_t> encode(const BatchResponseMsg& m);
std::vector<std::uint8_t> encode(const ErrorMsg& m);

// Decoders throw Error(kProtocol) on short or over-long bodies.
ChorQueryMsg decode_chor_query(std::span<const std::uint8_t> body);
GoldQueryMsg decode_gold_query(std::span<const std::uint8_t> body);
BatchQueryMsg decode_batch_query(std::span<const std::uint8_t> body);
RaidQueryMsg decode_raid_query(std::span<const std::uint8_t> body);
BlockResponseMsg decode_block_response(std::span<const std::uint8_t> body);
GoldResponseMsg decode_gold_response(std::span<const std::uint8_t> body);
BatchResponseMsg decode_batch_response(std::span<const std::uint8_t> body);
ErrorMsg decode_error(std::span<const std::uint8_t> body);

// PIR payload carried by a message: the query vector, seed or answer, in bits.
// Dimension fields, ids and timing are framing.
std::uint64_t payload_bits(const ChorQueryMsg& m);
std::uint64_t payload_bits(const GoldQueryMsg& m);
std::uint64_t payload_bits(const BatchQueryMsg& m);
std::uint64_t payload_bits(const RaidQueryMsg& m);
std::uint64_t payload_bits(const BlockResponseMsg& m);
std::uint64_t payload_bits(const GoldResponseMsg& m);
std::uint64_t payload_bits(const BatchResponseMsg& m);

}  // namespace lpir::wire
