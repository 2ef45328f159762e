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

#include <vector>

#include "msr/code_spec.hpp"

namespace msr {

// Right-multiplies every systematic column by an invertible block:
// C[s,j] = A[s,j] * B_j, S[i,j] = S_i * B_j for systematic helpers, parity
// helpers keep S_i. The result is re-verified (MDS and subspace property)
// and stores the full per-helper repairing grid. Errors: kSingularMatrix for
// a singular B_j, kInvalidArgument for a per-helper layout or wrong count,
// kNotMds / kSubspaceProperty if verification fails.
CodeSpec apply_block_diagonal(const CodeSpec& code, const std::vector<Matrix>& blocks);

// B_j = V_j^{-1}, where V_j stacks node j's eigenspace bases in provenance
// order. Errors: kInvalidArgument without provenance.
CodeSpec access_lowering(const CodeSpec& code);

// The V_j matrix used above.
Matrix eigenspace_matrix(const CodeSpec& code, std::size_t node);

}  // namespace msr
