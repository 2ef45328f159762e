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

#include "msr/transform.hpp"

#include <string>

#include "msr/error.hpp"
#include "msr/verify.hpp"

namespace msr {

CodeSpec apply_block_diagonal(const CodeSpec& code, const std::vector<Matrix>& blocks) {
  if (blocks.size() != code.k) {
    throw Error(Errc::kInvalidArgument, "need one block per systematic node");
  }
  if (!code.identical_repair_layout()) {
    throw Error(Errc::kInvalidArgument,
                "transform needs one repairing subspace per erased node");
  }
  for (std::size_t j = 0; j < code.k; ++j) {
    const Matrix& b = blocks[j];
    if (b.field() != code.field || b.rows() != code.l || b.cols() != code.l) {
      throw Error(Errc::kDimensionMismatch, "block " + std::to_string(j) + " has wrong shape");
    }
    if (!is_invertible(b)) {
      throw Error(Errc::kSingularMatrix, "block " + std::to_string(j) + " is singular");
    }
  }

  CodeSpec out = code;
  for (std::size_t s = 0; s < code.r; ++s) {
    for (std::size_t j = 0; j < code.k; ++j) out.encoding[s][j] = code.a(s, j) * blocks[j];
  }
  for (std::size_t i = 0; i < code.k; ++i) {
    const Subspace& si = code.s(i, code.k);
    for (std::size_t j = 0; j < code.k; ++j) {
      if (j != i) out.repairing[i][j] = si.image(blocks[j]);
    }
  }
  out.provenance.clear();
  out.transform = "block-diagonal";
  out.validate();

  const auto mds = check_mds(out);
  if (!mds.ok) throw Error(Errc::kNotMds, "transformed code lost the MDS property");
  const auto sub = check_subspace_property(out);
  if (!sub.ok) throw Error(Errc::kSubspaceProperty, sub.witness->reason);
  return out;
}

Matrix eigenspace_matrix(const CodeSpec& code, std::size_t node) {
  if (!code.has_provenance()) {
    throw Error(Errc::kInvalidArgument, "code carries no eigenspace provenance");
  }
  std::vector<Subspace> spaces;
  for (const auto& e : code.provenance.at(node).eigenspaces) spaces.push_back(e.space);
  return stack_bases(spaces);
}

CodeSpec access_lowering(const CodeSpec& code) {
  std::vector<Matrix> blocks;
  for (std::size_t j = 0; j < code.k; ++j) blocks.push_back(invert(eigenspace_matrix(code, j)));
  CodeSpec out = apply_block_diagonal(code, blocks);
  out.transform = "access-lowering";
  return out;
}

}  // namespace msr
