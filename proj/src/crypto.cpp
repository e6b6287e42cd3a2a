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

#include "lpir/crypto.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <memory>

#include "lpir/errors.hpp"

namespace lpir::crypto {

Digest sha256(std::span<const std::uint8_t> data) {
  Sha256 h;
  h.update(data);
  return h.finish();
}

Sha256::Sha256() : ctx_(EVP_MD_CTX_new()) {
  if (ctx_ == nullptr ||
      EVP_DigestInit_ex(static_cast<EVP_MD_CTX*>(ctx_), EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kInternal, "SHA-256 initialisation failed");
  }
}

Sha256::~Sha256() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_)); }

void Sha256::update(std::span<const std::uint8_t> data) {
  if (data.empty()) return;
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size());
}

Digest Sha256::finish() {
  Digest d{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), d.data(), &len);
  return d;
}

std::vector<std::uint8_t> aes128_ctr_stream(
    std::span<const std::uint8_t, 16> key, std::uint32_t nonce,
    std::size_t bytes) {
  std::array<std::uint8_t, 16> iv{};
  iv[0] = static_cast<std::uint8_t>(nonce >> 24);
  iv[1] = static_cast<std::uint8_t>(nonce >> 16);
  iv[2] = static_cast<std::uint8_t>(nonce >> 8);
  iv[3] = static_cast<std::uint8_t>(nonce);

  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(
      EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ctr(), nullptr,
                                 key.data(), iv.data()) != 1) {
    fail(ErrorCode::kInternal, "AES-CTR initialisation failed");
  }
  std::vector<std::uint8_t> zeros(bytes, 0);
  std::vector<std::uint8_t> out(bytes + 16);
  int len = 0;
  if (bytes > 0 && EVP_EncryptUpdate(ctx.get(), out.data(), &len, zeros.data(),
                                     static_cast<int>(bytes)) != 1) {
    fail(ErrorCode::kInternal, "AES-CTR keystream generation failed");
  }
  out.resize(bytes);
  return out;
}

std::uint32_t crc32(std::span<const std::uint8_t> data) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, data.data(), static_cast<uInt>(data.size())));
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(data.size() * 2);
  for (auto b : data) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

}  // namespace lpir::crypto
