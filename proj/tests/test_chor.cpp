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

#include <gtest/gtest.h>

#include "lpir/errors.hpp"
#include "lpir/pir_chor.hpp"
#include "lpir/random.hpp"
#include "oracles.hpp"

namespace {

using namespace lpir;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

const DatabaseMatrix kFour(4, 1, {0xAA, 0xBB, 0xCC, 0xDD});

TEST(Chor, HandQuery) {
  oracle::ScriptedRandom rng({0x0D});  // 1011, bit 1 first
  const auto q = chor_build_query(3, 4, 2, rng);
  ASSERT_EQ(q.shares.size(), 2u);
  EXPECT_EQ(q.shares[0].to_string(), "1011");
  EXPECT_EQ(q.shares[1].to_string(), "1001");
  EXPECT_EQ(rng.remaining(), 0u);
}

TEST(Chor, HandAnswersAndReconstruction) {
  const auto r1 = chor_server_answer(1, BitVector::from_string("1011"), kFour);
  const auto r2 = chor_server_answer(2, BitVector::from_string("1001"), kFour);
  EXPECT_EQ(r1.block, std::vector<std::uint8_t>{0xBB});
  EXPECT_EQ(r2.block, std::vector<std::uint8_t>{0x77});
  const std::vector<ChorResponse> both{r1, r2};
  EXPECT_EQ(chor_reconstruct(both, 2), std::vector<std::uint8_t>{0xCC});
}

TEST(Chor, SelectionEdgeCases) {
  for (std::uint64_t beta = 1; beta <= 4; ++beta) {
    EXPECT_EQ(chor_answer(basis_vector(beta, 4), kFour)[0], kFour.row(beta)[0]);
  }
  EXPECT_EQ(chor_answer(BitVector(4), kFour), std::vector<std::uint8_t>{0x00});
  EXPECT_EQ(code_of([] { chor_answer(BitVector(5), kFour); }), ErrorCode::kProtocol);
}

TEST(Chor, ParameterErrors) {
  SeededRandom rng(1);
  EXPECT_EQ(code_of([&] { chor_build_query(1, 4, 1, rng); }), ErrorCode::kParameter);
  EXPECT_EQ(code_of([&] { chor_build_query(5, 4, 2, rng); }), ErrorCode::kIndex);
  EXPECT_EQ(code_of([&] { chor_build_query(0, 4, 2, rng); }), ErrorCode::kIndex);
}

TEST(Chor, SharesXorToTheBasisVector) {
  SeededRandom rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t r = 1 + trial % 200;
    const std::uint64_t beta = 1 + (trial * 7919) % r;
    const std::size_t l = 2 + trial % 5;
    const auto q = chor_build_query(beta, r, l, rng);
    BitVector acc(r);
    for (const auto& s : q.shares) acc ^= s;
    ASSERT_EQ(acc, basis_vector(beta, r));
  }
}

TEST(Chor, MissingServerIsIncomplete) {
  const std::vector<ChorResponse> one{chor_server_answer(1, BitVector::from_string("1011"), kFour)};
  EXPECT_EQ(code_of([&] { chor_reconstruct(one, 2); }), ErrorCode::kIncompleteResponse);
  const std::vector<ChorResponse> dup{one[0], one[0]};
  EXPECT_NE(code_of([&] { chor_reconstruct(dup, 2); }), ErrorCode{});
}

std::vector<std::uint8_t> run(std::uint64_t beta, const DatabaseMatrix& db, std::size_t l,
                              RandomSource& rng) {
  const auto q = chor_build_query(beta, db.rows(), l, rng);
  std::vector<ChorResponse> resp;
  for (std::size_t i = 0; i < l; ++i) {
    resp.push_back(chor_server_answer(static_cast<std::uint16_t>(i + 1), q.shares[i], db));
  }
  return chor_reconstruct(resp, l);
}

TEST(Chor, ExhaustiveSmallDatabases) {
  SeededRandom rng(5);
  for (std::uint64_t r = 1; r <= 64; ++r) {
    const auto db = generate_database(GridConfig::strip(r), 16, r);
    for (std::uint64_t beta = 1; beta <= r; ++beta) {
      const auto got = run(beta, db.matrix, 3, rng);
      const auto want = db.matrix.row(beta);
      ASSERT_TRUE(std::equal(got.begin(), got.end(), want.begin(), want.end()));
    }
  }
}

TEST(Chor, RandomTrialsVerifyChecksums) {
  const auto db = generate_database(GridConfig::strip(10000), kDefaultRecordBytes, 1);
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    SeededRandom rng(seed);
    const std::uint64_t beta = 1 + (seed * 2654435761u) % 10000;
    const auto got = run(beta, db.matrix, 2 + seed % 5, rng);
    ASSERT_TRUE(record_checksum_ok(got)) << "seed " << seed;
    const auto want = db.matrix.row(beta);
    ASSERT_TRUE(std::equal(got.begin(), got.end(), want.begin(), want.end()));
  }
}

// r = 8, l = 3: any two shares are jointly uniform on GF(2)^16 whatever beta.
TEST(Chor, PrivacyOfAnyTwoShares) {
  constexpr int kTrials = 400000;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::uint64_t beta : {1u, 6u}) {
    std::vector<std::uint64_t> joint[3];
    for (auto& j : joint) j.assign(65536, 0);
    oracle::FastRandom rng(beta);
    for (int i = 0; i < kTrials; ++i) {
      const auto q = chor_build_query(beta, 8, 3, rng);
      for (int p = 0; p < 3; ++p) {
        const auto a = q.shares[pairs[p][0]].to_bytes()[0];
        const auto b = q.shares[pairs[p][1]].to_bytes()[0];
        ++joint[p][a << 8 | b];
      }
    }
    for (const auto& j : joint) EXPECT_GT(oracle::chi_square_uniform_pvalue(j), 1e-4);
  }
}

TEST(Chor, XorKernelMatchesRowLoop) {
  const auto db = generate_database(GridConfig::strip(777), 24, 9);
  oracle::FastRandom rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = BitVector::random(777, rng);
    std::vector<std::uint8_t> want(24, 0);
    for (std::uint64_t j = 0; j < 777; ++j) {
      if (!rho.get(j)) continue;
      for (int c = 0; c < 24; ++c) want[c] ^= db.matrix.row(j + 1)[c];
    }
    EXPECT_EQ(chor_answer(rho, db.matrix), want);
  }
}

}  // namespace
