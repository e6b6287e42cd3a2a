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

#include "lpir/pir_tau.hpp"

#include <string>

#include "lpir/errors.hpp"
#include "lpir/random.hpp"

namespace lpir {

SharedDatabaseSet pu_encode_database(const DatabaseMatrix& plain, int tau,
                                     const EvalPointSet& points, RandomSource& rng) {
  if (tau < 0 || static_cast<std::size_t>(tau) >= points.size()) {
    fail(ErrorCode::kParameter, "tau must satisfy 0 <= tau < l");
  }
  SharedDatabaseSet set{{}, points, tau};
  auto shares = share_vector(plain.data(), tau, points, rng);
  set.replicas.reserve(points.size());
  for (auto& s : shares) {
    set.replicas.emplace_back(plain.rows(), plain.words_per_row(), std::move(s.values));
  }
  return set;
}

void pu_add_record(SharedDatabaseSet& set, std::uint64_t beta,
                   std::span<const std::uint8_t> record, RandomSource& rng) {
  if (set.replicas.empty()) fail(ErrorCode::kParameter, "empty share set");
  const auto& first = set.replicas.front();
  if (beta == 0 || beta > first.rows()) fail(ErrorCode::kIndex, "row index out of range");
  if (record.size() != first.record_bytes()) {
    fail(ErrorCode::kParameter, "record size does not match the database");
  }
  auto shares = share_vector(record, set.tau, set.points, rng);
  for (std::size_t i = 0; i < set.replicas.size(); ++i) {
    auto row = set.replicas[i].mutable_row(beta);
    std::copy(shares[i].values.begin(), shares[i].values.end(), row.begin());
  }
}

void validate_tau_parameters(int t, int tau, std::size_t k, std::size_t servers) {
  const bool ok = t > 0 && tau >= 0 && static_cast<std::size_t>(t + tau) < k && k <= servers;
  if (!ok) {
    fail(ErrorCode::kParameter,
         "need 0 < t <= t+tau < k <= l (t=" + std::to_string(t) + ", tau=" +
             std::to_string(tau) + ", k=" + std::to_string(k) +
             ", l=" + std::to_string(servers) + ")");
  }
}

RecoveryReport tau_recover(std::span<const GoldbergResponse> responses, int t, int tau) {
  if (t < 0 || tau < 0) fail(ErrorCode::kParameter, "t and tau must be non-negative");
  return goldberg_recover(responses, t + tau);
}

}  // namespace lpir
