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

#include "lpir/errors.hpp"

namespace lpir {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kDigest: return "digest";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kVersion: return "version";
    case ErrorCode::kCoverage: return "coverage";
    case ErrorCode::kIndex: return "index";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kIncompleteResponse: return "incomplete-response";
    case ErrorCode::kInsufficientShares: return "insufficient-shares";
    case ErrorCode::kByzantineOverload: return "byzantine-overload";
    case ErrorCode::kDecodeFailure: return "decode-failure";
    case ErrorCode::kRobustnessFailure: return "robustness-failure";
    case ErrorCode::kNetwork: return "network";
    case ErrorCode::kCorrectness: return "correctness";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace lpir
