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

#include "lpir/pir_goldberg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lpir/errors.hpp"
#include "lpir/random.hpp"

namespace lpir {

const char* recovery_path_name(RecoveryPath path) {
  return path == RecoveryPath::kEasy ? "easy" : "hard";
}

std::vector<GoldbergQuery> goldberg_build_queries(std::uint64_t beta, std::uint64_t r,
                                                  int threshold,
                                                  const EvalPointSet& points,
                                                  RandomSource& rng) {
  if (threshold < 0 || static_cast<std::size_t>(threshold) >= points.size()) {
    fail(ErrorCode::kParameter, "privacy threshold must satisfy 0 < t < l");
  }
  if (beta == 0 || beta > r) fail(ErrorCode::kIndex, "row index out of range");
  std::vector<gf256::Element> e(r, 0);
  e[beta - 1] = 1;
  auto shares = share_vector(e, threshold, points, rng);
  std::vector<GoldbergQuery> queries(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i) {
    queries[i].alpha = shares[i].alpha;
    queries[i].rho = std::move(shares[i].values);
  }
  return queries;
}

std::vector<gf256::Element> goldberg_answer(std::span<const gf256::Element> rho,
                                            const DatabaseMatrix& db) {
  if (rho.size() != db.rows()) {
    fail(ErrorCode::kProtocol, "query length " + std::to_string(rho.size()) +
                                   " does not match r=" + std::to_string(db.rows()));
  }
  const std::size_t s = db.words_per_row();
  std::vector<gf256::Element> acc(s, 0);
  const std::uint8_t* row = db.data().data();
  gf256::Element* out = acc.data();
  for (std::size_t j = 0; j < rho.size(); ++j, row += s) {
    const gf256::Element* by_coeff = gf256::mul_row(rho[j]);
    for (std::size_t c = 0; c < s; ++c) out[c] ^= by_coeff[row[c]];
  }
  return acc;
}

GoldbergResponse goldberg_server_answer(std::uint16_t server_id,
                                        const GoldbergQuery& query,
                                        const DatabaseMatrix& db) {
  return {server_id, query.alpha, goldberg_answer(query.rho, db)};
}

RecoveryReport goldberg_recover(std::span<const GoldbergResponse> responses,
                                int degree, const gf256::Decoder& decoder) {
  const std::size_t k = responses.size();
  if (degree < 0) fail(ErrorCode::kParameter, "degree must be non-negative");
  if (k <= static_cast<std::size_t>(degree)) {
    fail(ErrorCode::kInsufficientShares,
         "insufficient responses: need more than " + std::to_string(degree) +
             ", got " + std::to_string(k));
  }
  const std::size_t s = responses.front().values.size();
  {
    std::set<gf256::Element> alphas;
    std::set<std::uint16_t> ids;
    for (const auto& r : responses) {
      if (r.values.size() != s) fail(ErrorCode::kProtocol, "responses differ in length");
      if (r.alpha == 0) fail(ErrorCode::kProtocol, "response at evaluation point zero");
      if (!alphas.insert(r.alpha).second || !ids.insert(r.server_id).second) {
        fail(ErrorCode::kProtocol, "duplicate response");
      }
    }
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return responses[a].server_id < responses[b].server_id;
  });

  RecoveryReport report;
  report.record.assign(s, 0);
  const std::size_t basis_n = static_cast<std::size_t>(degree) + 1;
  std::vector<gf256::Element> basis_x;
  for (std::size_t i = 0; i < basis_n; ++i) basis_x.push_back(responses[order[i]].alpha);

  // weights[0] interpolates at zero; weights[m] predicts checked response m.
  std::vector<std::vector<gf256::Element>> weights;
  weights.push_back(gf256::lagrange_weights(basis_x, 0));
  for (std::size_t m = basis_n; m < k; ++m) {
    weights.push_back(gf256::lagrange_weights(basis_x, responses[order[m]].alpha));
  }
  report.stats.interpolation_points = basis_n;

  bool consistent = true;
  for (std::size_t c = 0; c < s && consistent; ++c) {
    gf256::Element secret = 0;
    for (std::size_t i = 0; i < basis_n; ++i) {
      secret ^= gf256::mul(weights[0][i], responses[order[i]].values[c]);
    }
    report.stats.field_multiplications += basis_n;
    report.record[c] = secret;
    for (std::size_t m = basis_n; m < k; ++m) {
      gf256::Element predicted = 0;
      const auto& w = weights[m - basis_n + 1];
      for (std::size_t i = 0; i < basis_n; ++i) {
        predicted ^= gf256::mul(w[i], responses[order[i]].values[c]);
      }
      report.stats.field_multiplications += basis_n;
      if (predicted != responses[order[m]].values[c]) {
        consistent = false;
        break;
      }
    }
  }

  if (consistent) {
    report.path = RecoveryPath::kEasy;
    for (const auto& r : responses) report.honest.insert(r.server_id);
    return report;
  }

  if (gf256::max_correctable(static_cast<int>(k), degree) < 1) {
    fail(ErrorCode::kByzantineOverload,
         "inconsistent responses and no redundancy to correct them (k=" +
             std::to_string(k) + ", degree=" + std::to_string(degree) + ")");
  }
  report.path = RecoveryPath::kHard;
  std::vector<gf256::Point> pts(k);
  for (std::size_t c = 0; c < s; ++c) {
    for (std::size_t i = 0; i < k; ++i) {
      pts[i] = {responses[order[i]].alpha, responses[order[i]].values[c]};
    }
    gf256::DecodeResult decoded;
    try {
      decoded = decoder(pts, degree);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDecodeFailure) throw;
      fail(ErrorCode::kByzantineOverload,
           "too many byzantine responses (word " + std::to_string(c) +
               "): " + e.what());
    }
    report.record[c] = decoded.polynomial.coefficient(0);
    for (auto idx : decoded.corrupted) {
      report.byzantine.insert(responses[order[idx]].server_id);
    }
  }
  for (const auto& r : responses) {
    if (!report.byzantine.contains(r.server_id)) report.honest.insert(r.server_id);
  }
  return report;
}

}  // namespace lpir
