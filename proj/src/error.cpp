// Copyright 2026 The IBGN Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ibgn/error.hpp"

namespace ibgn {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOrderViolation: return "OrderViolation";
    case ErrorCode::kDegenerateInterval: return "DegenerateInterval";
    case ErrorCode::kEmptyRelationSet: return "EmptyRelationSet";
    case ErrorCode::kClassCountMismatch: return "ClassCountMismatch";
    case ErrorCode::kEmptyConstraint: return "EmptyConstraint";
    case ErrorCode::kInstanceTooLong: return "InstanceTooLong";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kNoModels: return "NoModels";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInsufficientClassInstances:
      return "InsufficientClassInstances";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kUnknownRelation: return "UnknownRelation";
    case ErrorCode::kInternalInvariant: return "InternalInvariant";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

}  // namespace ibgn
