// Copyright 2026 The lipproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lipproj/error.hpp"

namespace lipproj {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kIndex: return "index";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kResource: return "resource";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kCheckFailed: return "check-failed";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace lipproj
