// Copyright 2026 The tripowmin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIPOWMIN_ERROR_HPP_
#define TRIPOWMIN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tripowmin {

enum class ErrorCode {
  kDegenerateTriangle,
  kInvalidExponent,
  kPointNotInterior,
  kPointNotFeasible,
  kDidNotConverge,
  kInvalidArgument,
};

inline std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::kInvalidExponent: return "InvalidExponent";
    case ErrorCode::kPointNotInterior: return "PointNotInterior";
    case ErrorCode::kPointNotFeasible: return "PointNotFeasible";
    case ErrorCode::kDidNotConverge: return "DidNotConverge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ToString(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tripowmin

#endif  // TRIPOWMIN_ERROR_HPP_
