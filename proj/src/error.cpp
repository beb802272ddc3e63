// Copyright 2026 The nogo Authors
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

#include "nogo/error.hpp"

namespace nogo {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptySet:
            return "EmptySet";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::NonFiniteEntry:
            return "NonFiniteEntry";
        case ErrorCode::LinearlyDependentInput:
            return "LinearlyDependentInput";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NonConvergence:
            return "NonConvergence";
        case ErrorCode::NullVector:
            return "NullVector";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::NullSuperposition:
            return "NullSuperposition";
        case ErrorCode::InvalidParams:
            return "InvalidParams";
        case ErrorCode::MeasurementMismatch:
            return "MeasurementMismatch";
        case ErrorCode::WrongSetSize:
            return "WrongSetSize";
        case ErrorCode::DependentOutputs:
            return "DependentOutputs";
        case ErrorCode::InvalidConfig:
            return "InvalidConfig";
        case ErrorCode::Io:
            return "Io";
        case ErrorCode::Internal:
            return "Internal";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
}

}  // namespace nogo
