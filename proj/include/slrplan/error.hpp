// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#ifndef SLRPLAN_ERROR_HPP
#define SLRPLAN_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace slrplan {

enum class ErrorCode {
  // embedding-store
  DimensionMismatch,
  MalformedNumber,
  EmptyModel,
  NoCoverage,
  DuplicateModel,
  UnknownModel,
  // similarity-engine
  ZeroVector,
  EmptyCorpus,
  EmptyQuery,
  ModelMismatch,
  // corpus-store
  DuplicateId,
  MissingField,
  MalformedRecord,
  IoFailure,
  // evaluation
  LengthMismatch,
  TooFew,
  ConstantInput,
  NoPositives,
  KOutOfRange,
  MalformedAnnotation,
  UnknownDocument,
  // gateway
  MalformedRequest,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library. `line()` is set for
/// errors raised while parsing a line-oriented file (1-based).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(message), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace slrplan

#endif  // SLRPLAN_ERROR_HPP
