// Copyright 2026 The hexwall Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HEXWALL_ERRORS_HPP_
#define HEXWALL_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hexwall {

enum class ErrorCode {
  kUnreachable,
  kJointLimitViolation,
  kOutOfRange,
  kSingular,
  kCommandInfeasible,
  kDegenerateSupport,
  kInfeasiblePins,
  kLeverSingular,
  kForceLimit,
  kParseError,
  kInvariantViolation,
  kIoError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kJointLimitViolation: return "JointLimitViolation";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kCommandInfeasible: return "CommandInfeasible";
    case ErrorCode::kDegenerateSupport: return "DegenerateSupport";
    case ErrorCode::kInfeasiblePins: return "InfeasiblePins";
    case ErrorCode::kLeverSingular: return "LeverSingular";
    case ErrorCode::kForceLimit: return "ForceLimit";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

// Library failure tagged with an ErrorCode; what() is "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// what() without the leading code name.
  std::string detail() const {
    const std::string w = what();
    const std::size_t n = to_string(code_).size() + 2;
    return w.size() >= n ? w.substr(n) : w;
  }

 private:
  ErrorCode code_;
};

// Raised when a config value breaks a structural invariant; `invariant()` is
// the human-readable invariant name, e.g. "law-of-cosines closure".
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& where)
      : Error(ErrorCode::kInvariantViolation, invariant + " (" + where + ")"),
        invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace hexwall

#endif  // HEXWALL_ERRORS_HPP_
