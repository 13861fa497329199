// Copyright 2026 The hardylab Authors
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

#include "hardylab/error.hpp"

namespace hardylab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kOutsideDomain: return "OutsideDomain";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
    case ErrorCode::kNoCrossing: return "NoCrossing";
    case ErrorCode::kInvalidAngle: return "InvalidAngle";
    case ErrorCode::kInvalidParam: return "InvalidParam";
    case ErrorCode::kEmptyRight: return "EmptyRight";
    case ErrorCode::kUnknownDomain: return "UnknownDomain";
    case ErrorCode::kInvalidAlpha: return "InvalidAlpha";
    case ErrorCode::kBadRange: return "BadRange";
    case ErrorCode::kToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorCode::kInvalidOmega: return "InvalidOmega";
    case ErrorCode::kPathOutsideDomain: return "PathOutsideDomain";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kStartOutsideDomain: return "StartOutsideDomain";
    case ErrorCode::kRadiusTooSmall: return "RadiusTooSmall";
    case ErrorCode::kCapContamination: return "CapContamination";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kValidation: return "Validation";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace hardylab
