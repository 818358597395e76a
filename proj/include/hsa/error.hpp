/* Copyright 2026 The HSA Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsa {

enum class ErrorCode {
  kDivisionByZero,
  kSingular,
  kDuplicatePoints,
  kNotPrime,
  kInvalidIndex,
  kInvalidParams,
  kSizeMismatch,
  kMissingMessage,
  kNoValidG,
  kNoValidBeta,
  kConstructionFailed,
  kStateSpaceTooLarge,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kDuplicatePoints: return "DuplicatePoints";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kInvalidIndex: return "InvalidIndex";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kMissingMessage: return "MissingMessage";
    case ErrorCode::kNoValidG: return "NoValidG";
    case ErrorCode::kNoValidBeta: return "NoValidBeta";
    case ErrorCode::kConstructionFailed: return "ConstructionFailed";
    case ErrorCode::kStateSpaceTooLarge: return "StateSpaceTooLarge";
  }
  return "Unknown";
}

// All library failures are reported through this one exception type; the
// code tells callers (and the CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Singular carries the rank that elimination actually reached.
class SingularError : public Error {
 public:
  SingularError(std::size_t rank, const std::string& what)
      : Error(ErrorCode::kSingular, what + " (rank " + std::to_string(rank) + ")"),
        rank_(rank) {}

  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

// MissingMessage identifies the absent link as (user, relay), 1-based.
class MissingMessageError : public Error {
 public:
  MissingMessageError(int user, int relay)
      : Error(ErrorCode::kMissingMessage,
              "no message from user " + std::to_string(user) + " to relay " +
                  std::to_string(relay)),
        user_(user),
        relay_(relay) {}

  int user() const noexcept { return user_; }
  int relay() const noexcept { return relay_; }

 private:
  int user_;
  int relay_;
};

}  // namespace hsa
