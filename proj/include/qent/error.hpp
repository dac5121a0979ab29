// Copyright 2026 The qent Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qent {

enum class ErrorCode {
    NotHermitian,
    NoConvergence,
    InvalidWeights,
    NonOrthonormalFrame,
    InvalidState,
    OutOfRange,
    NegativeEigenvalueBeyondTolerance,
    UnsupportedFamily,
    InsufficientBins,
    InvalidConfig,
    Io,
};

inline const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NoConvergence:
            return "NoConvergence";
        case ErrorCode::InvalidWeights:
            return "InvalidWeights";
        case ErrorCode::NonOrthonormalFrame:
            return "NonOrthonormalFrame";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::OutOfRange:
            return "OutOfRange";
        case ErrorCode::NegativeEigenvalueBeyondTolerance:
            return "NegativeEigenvalueBeyondTolerance";
        case ErrorCode::UnsupportedFamily:
            return "UnsupportedFamily";
        case ErrorCode::InsufficientBins:
            return "InsufficientBins";
        case ErrorCode::InvalidConfig:
            return "InvalidConfig";
        case ErrorCode::Io:
            return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace qent
