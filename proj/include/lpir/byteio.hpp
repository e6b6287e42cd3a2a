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
#include <cstring>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "lpir/errors.hpp"

namespace lpir {

enum class Endian { kLittle, kBig };

class ByteWriter {
 public:
  explicit ByteWriter(Endian endian) : endian_(endian) {}

  template <typename T>
  void put(T value) {
    static_assert(std::is_integral_v<T>);
    std::uint8_t raw[sizeof(T)];
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      const std::size_t pos = endian_ == Endian::kLittle ? i : sizeof(T) - 1 - i;
      raw[pos] = static_cast<std::uint8_t>(u & 0xFF);
      if constexpr (sizeof(T) > 1) u >>= 8;
    }
    buf_.insert(buf_.end(), raw, raw + sizeof(T));
  }

  void put_f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put(bits);
  }

  void put_bytes(std::span<const std::uint8_t> bytes) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  }

  void put_zeros(std::size_t n) { buf_.insert(buf_.end(), n, 0); }

  std::size_t size() const { return buf_.size(); }
  std::vector<std::uint8_t>& buffer() { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  Endian endian_;
  std::vector<std::uint8_t> buf_;
};

// Bounds-checked reader. Short reads throw Error(short_read_code).
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> data, Endian endian,
             ErrorCode short_read_code = ErrorCode::kProtocol)
      : data_(data), endian_(endian), code_(short_read_code) {}

  template <typename T>
  T get() {
    static_assert(std::is_integral_v<T>);
    need(sizeof(T));
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      const std::size_t pos = endian_ == Endian::kLittle ? sizeof(T) - 1 - i : i;
      if constexpr (sizeof(T) > 1) u <<= 8;
      u |= data_[pos_ + pos];
    }
    pos_ += sizeof(T);
    return static_cast<T>(u);
  }

  double get_f64() {
    const auto bits = get<std::uint64_t>();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  std::span<const std::uint8_t> get_bytes(std::size_t n) {
    need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  void skip(std::size_t n) { need(n); pos_ += n; }
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t position() const { return pos_; }
  std::span<const std::uint8_t> rest() const { return data_.subspan(pos_); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) fail(code_, "unexpected end of data");
  }

  std::span<const std::uint8_t> data_;
  Endian endian_;
  ErrorCode code_;
  std::size_t pos_ = 0;
};

}  // namespace lpir
