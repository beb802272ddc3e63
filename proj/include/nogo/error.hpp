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

#ifndef NOGO_ERROR_HPP
#define NOGO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nogo {

enum class ErrorCode {
    EmptySet,
    DimensionMismatch,
    NonFiniteEntry,
    LinearlyDependentInput,
    NotHermitian,
    NonConvergence,
    NullVector,
    InvalidState,
    NullSuperposition,
    InvalidParams,
    MeasurementMismatch,
    WrongSetSize,
    DependentOutputs,
    InvalidConfig,
    Io,
    Internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// C API and the CLI map them onto status values and exit codes.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace nogo

#endif
