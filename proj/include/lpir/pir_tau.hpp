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
#include <vector>

#include "lpir/pir_goldberg.hpp"
#include "lpir/sharing.hpp"
#include "lpir/spectrumdb.hpp"

// Database content secret-shared across servers so that no tau of them learn
// it. Server i holds D^(i), whose word (j, c) is g_jc(alpha_i) for a random
// degree-tau polynomial g_jc with g_jc(0) = W_jc.
//
// A degree-t query share f_j(alpha_i) multiplied into D^(i) gives server i the
// value sum_j f_j(alpha_i) g_jc(alpha_i): the evaluation at alpha_i of a
// polynomial of degree t + tau whose constant term is sum_j e_beta[j] W_jc =
// W_beta,c. The client therefore interpolates with t + tau + 1 responses and
// the servers run the plain answer code unchanged; they cannot tell a shared
// database from a replicated one.
namespace lpir {

class RandomSource;

struct SharedDatabaseSet {
  std::vector<DatabaseMatrix> replicas;  // replicas[i] for server i + 1
  EvalPointSet points;
  int tau = 0;
};

// Word-wise Shamir sharing of the plaintext, randomness drawn row-major then
// coefficient order. tau 0 yields identical replicas.
SharedDatabaseSet pu_encode_database(const DatabaseMatrix& plain, int tau,
                                     const EvalPointSet& points, RandomSource& rng);

// Re-shares row beta with fresh randomness; every other row is untouched.
void pu_add_record(SharedDatabaseSet& set, std::uint64_t beta,
                   std::span<const std::uint8_t> record, RandomSource& rng);

// 0 < t <= t + tau < k <= l. Throws Error(kParameter).
void validate_tau_parameters(int t, int tau, std::size_t k, std::size_t servers);

// goldberg_recover at degree t + tau. Error(kInsufficientShares) unless
// k > t + tau.
RecoveryReport tau_recover(std::span<const GoldbergResponse> responses, int t, int tau);

}  // namespace lpir
