// Copyright 2026 The lindsieve Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace lindsieve {

enum class ErrorCode {
  kInvalidArgument = 1,
  kInvalidTruncation = 2,
  kUnderResolved = 3,
  kConditionViolated = 4,
  kIntegrationQuality = 5,
  kDimensionMismatch = 6,
  kTruncatedSpectrum = 7,
  kIo = 8,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception; the C API maps
// `code()` onto its integer status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace lindsieve
