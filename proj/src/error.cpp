// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
#include "slrplan/error.hpp"

namespace slrplan {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MalformedNumber: return "MalformedNumber";
    case ErrorCode::EmptyModel: return "EmptyModel";
    case ErrorCode::NoCoverage: return "NoCoverage";
    case ErrorCode::DuplicateModel: return "DuplicateModel";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFew: return "TooFew";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::NoPositives: return "NoPositives";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::MalformedAnnotation: return "MalformedAnnotation";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::MalformedRequest: return "MalformedRequest";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace slrplan
