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

#include "lpir/sharing.hpp"

#include <string>

#include "lpir/errors.hpp"
#include "lpir/random.hpp"

namespace lpir {

EvalPointSet::EvalPointSet(std::vector<gf256::Element> alphas)
    : alphas_(std::move(alphas)) {
  if (alphas_.empty() || alphas_.size() > 255) {
    fail(ErrorCode::kParameter, "evaluation point set must hold 1..255 points");
  }
  std::set<gf256::Element> seen;
  for (auto a : alphas_) {
    if (a == 0) fail(ErrorCode::kParameter, "evaluation points must be nonzero");
    if (!seen.insert(a).second) {
      fail(ErrorCode::kParameter, "evaluation points must be distinct");
    }
  }
}

EvalPointSet EvalPointSet::sequential(std::size_t count) {
  if (count == 0 || count > 255) {
    fail(ErrorCode::kParameter, "server count must be in 1..255");
  }
  std::vector<gf256::Element> a(count);
  for (std::size_t i = 0; i < count; ++i) a[i] = static_cast<gf256::Element>(i + 1);
  return EvalPointSet(std::move(a));
}

std::vector<ShareVector> share_vector(std::span<const gf256::Element> secret,
                                      int threshold, const EvalPointSet& points,
                                      RandomSource& rng) {
  if (threshold < 0 || static_cast<std::size_t>(threshold) >= points.size()) {
    fail(ErrorCode::kParameter,
         "threshold must satisfy 0 <= t < number of shares (t=" +
             std::to_string(threshold) + ")");
  }
  const std::size_t t = static_cast<std::size_t>(threshold);
  const std::size_t n = secret.size();
  std::vector<gf256::Element> coeffs(n * t);
  rng.fill(coeffs);

  std::vector<ShareVector> shares(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    shares[i].alpha = points[i];
    shares[i].values.resize(n);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const gf256::Element* by_alpha = gf256::mul_row(points[i]);
    auto& out = shares[i].values;
    for (std::size_t j = 0; j < n; ++j) {
      // Horner over sigma_t..sigma_1, then the constant term.
      gf256::Element acc = 0;
      const gf256::Element* c = coeffs.data() + j * t;
      for (std::size_t m = t; m > 0; --m) acc = by_alpha[acc] ^ c[m - 1];
      out[j] = by_alpha[acc] ^ secret[j];
    }
  }
  return shares;
}

std::vector<gf256::Element> reconstruct(std::span<const ShareVector> shares,
                                        int threshold) {
  if (threshold < 0 || shares.size() < static_cast<std::size_t>(threshold) + 1) {
    fail(ErrorCode::kInsufficientShares,
         "reconstruction needs at least t+1 shares");
  }
  const auto used = shares.first(static_cast<std::size_t>(threshold) + 1);
  std::vector<gf256::Element> xs;
  for (const auto& s : used) {
    if (s.alpha == 0) fail(ErrorCode::kDomain, "share at evaluation point zero");
    xs.push_back(s.alpha);
  }
  const auto w = gf256::lagrange_weights(xs, 0);
  const std::size_t n = used.front().values.size();
  std::vector<gf256::Element> secret(n, 0);
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i].values.size() != n) {
      fail(ErrorCode::kProtocol, "shares have different lengths");
    }
    const gf256::Element* row = gf256::mul_row(w[i]);
    for (std::size_t j = 0; j < n; ++j) secret[j] ^= row[used[i].values[j]];
  }
  return secret;
}

ErrorTolerantSecret reconstruct_with_errors(std::span<const ShareVector> shares,
                                            int threshold) {
  if (threshold < 0 || shares.size() <= static_cast<std::size_t>(threshold)) {
    fail(ErrorCode::kInsufficientShares,
         "error-tolerant reconstruction needs more than t shares");
  }
  const std::size_t n = shares.front().values.size();
  ErrorTolerantSecret result;
  result.secret.resize(n);
  std::vector<gf256::Point> pts(shares.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < shares.size(); ++i) {
      if (shares[i].values.size() != n) {
        fail(ErrorCode::kProtocol, "shares have different lengths");
      }
      pts[i] = {shares[i].alpha, shares[i].values[j]};
    }
    gf256::DecodeResult decoded;
    try {
      decoded = gf256::rs_decode(pts, threshold);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDecodeFailure) throw;
      fail(ErrorCode::kByzantineOverload,
           "coordinate " + std::to_string(j) + ": " + e.what());
    }
    result.secret[j] = decoded.polynomial.coefficient(0);
    for (auto idx : decoded.corrupted) result.byzantine_alphas.insert(shares[idx].alpha);
  }
  return result;
}

}  // namespace lpir
