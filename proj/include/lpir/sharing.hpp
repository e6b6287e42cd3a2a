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
#include <set>
#include <span>
#include <vector>

#include "lpir/gf256.hpp"

namespace lpir {

class RandomSource;

// Distinct nonzero evaluation points, one per server.
class EvalPointSet {
 public:
  explicit EvalPointSet(std::vector<gf256::Element> alphas);

  // alpha_i = i for servers 1..count; the default handshake agreement.
  static EvalPointSet sequential(std::size_t count);

  std::size_t size() const { return alphas_.size(); }
  gf256::Element operator[](std::size_t i) const { return alphas_[i]; }
  const std::vector<gf256::Element>& alphas() const { return alphas_; }

 private:
  std::vector<gf256::Element> alphas_;
};

struct ShareVector {
  gf256::Element alpha = 0;
  std::vector<gf256::Element> values;
};

// Draws, for every coordinate j in order, the t coefficients sigma_1..sigma_t
// of f_j (so f_j(0) = secret[j]) and evaluates f_j at every point. threshold 0
// yields plain copies of the secret. Requires threshold < points.size().
std::vector<ShareVector> share_vector(std::span<const gf256::Element> secret,
                                      int threshold, const EvalPointSet& points,
                                      RandomSource& rng);

// Coordinate-wise Lagrange interpolation at zero from the first threshold+1
// shares. Throws Error(kInsufficientShares) below threshold+1.
std::vector<gf256::Element> reconstruct(std::span<const ShareVector> shares,
                                        int threshold);

struct ErrorTolerantSecret {
  std::vector<gf256::Element> secret;
  std::set<gf256::Element> byzantine_alphas;
};

// Coordinate-wise Reed-Solomon decoding. Throws Error(kByzantineOverload) when
// any coordinate carries more errors than the unique decoding radius.
ErrorTolerantSecret reconstruct_with_errors(std::span<const ShareVector> shares,
                                            int threshold);

}  // namespace lpir
