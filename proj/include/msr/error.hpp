// Copyright 2026 The msrcode Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace msr {

enum class Errc {
  kInvalidArgument,
  kConstruction,
  kDivisionByZero,
  kFieldMismatch,
  kDimensionMismatch,
  kSingularMatrix,
  kInconsistentSystem,
  kSearchExhausted,
  kUnrecoverable,
  kNotMds,
  kUnsupported,
  kSubspaceProperty,
  kFormat,
  kChecksum,
  kIo,
};

const char* errc_name(Errc code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "invalid argument";
    case Errc::kConstruction: return "construction error";
    case Errc::kDivisionByZero: return "division by zero";
    case Errc::kFieldMismatch: return "field mismatch";
    case Errc::kDimensionMismatch: return "dimension mismatch";
    case Errc::kSingularMatrix: return "singular matrix";
    case Errc::kInconsistentSystem: return "inconsistent system";
    case Errc::kSearchExhausted: return "search exhausted";
    case Errc::kUnrecoverable: return "unrecoverable";
    case Errc::kNotMds: return "code is not MDS";
    case Errc::kUnsupported: return "unsupported";
    case Errc::kSubspaceProperty: return "subspace property violated";
    case Errc::kFormat: return "format error";
    case Errc::kChecksum: return "checksum mismatch";
    case Errc::kIo: return "i/o error";
  }
  return "error";
}

}  // namespace msr
