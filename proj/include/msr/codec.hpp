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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "msr/code_spec.hpp"
#include "msr/rational.hpp"

namespace msr {

// One codeword: n columns of l field elements, std::nullopt where erased.
struct StorageArray {
  std::vector<std::optional<Vector>> columns;

  std::size_t size() const noexcept { return columns.size(); }
  bool present(std::size_t node) const { return columns.at(node).has_value(); }
  const Vector& column(std::size_t node) const;
  void erase(std::size_t node) { columns.at(node).reset(); }
  std::vector<std::size_t> erased() const;
};

// data: k columns of l canonical elements. Parity k+s is
// sum_j A[s,j] * C_j.
StorageArray encode(const CodeSpec& code, const std::vector<Vector>& data);

struct NodeTransfer {
  std::size_t node = 0;
  std::size_t accessed = 0;     // stored symbols read
  std::size_t transmitted = 0;  // symbols sent
  Vector payload;               // empty for bulk repairs
};

struct RepairTranscript {
  std::size_t erased_node = 0;
  // False when the node was rebuilt by the parity fallback.
  bool optimal = true;
  std::size_t stripes = 1;
  std::size_t surviving_symbols = 0;  // (n - 1) * l * stripes
  std::vector<NodeTransfer> helpers;
  Vector recovered;  // empty for bulk repairs

  std::size_t total_transmitted() const noexcept;
  std::size_t total_accessed() const noexcept;
  Rational bandwidth_fraction() const;
  Rational access_fraction() const;
};

// Linear repair recipe for one node. Helper h sends projections[h] * C_h;
// the lost column is decode * (concatenated payloads).
struct RepairPlan {
  std::size_t node = 0;
  bool optimal = true;
  std::vector<std::size_t> helpers;
  std::vector<Matrix> projections;
  std::vector<std::vector<std::size_t>> accessed;  // per helper, sorted
  Matrix decode;
};

// Systematic nodes get the subspace repair; it requires the subspace
// property (Error(kSubspaceProperty) otherwise). Parity nodes get the
// non-optimal fallback that re-encodes from all systematic nodes.
RepairPlan plan_repair(const CodeSpec& code, std::size_t node);

// Exactly one erasure, at a systematic node. Errors: kInvalidArgument for
// any other erasure pattern, kUnsupported for a parity node.
RepairTranscript repair_systematic(const CodeSpec& code, StorageArray& array);
// As above, but a lone parity erasure is rebuilt through the fallback plan.
RepairTranscript repair(const CodeSpec& code, StorageArray& array);

// Recovers every erased column from the survivors.
struct ReconstructPlan {
  std::vector<std::size_t> erased;
  std::vector<std::size_t> lost_systematic;
  // Surviving systematic nodes, then the parities used.
  std::vector<std::size_t> sources;
  // Maps the stacked source columns to the stacked lost systematic columns.
  Matrix decode;
};

// Errors: kUnrecoverable for more than r erasures, kNotMds if the selected
// system is singular.
ReconstructPlan plan_reconstruct(const CodeSpec& code,
                                 const std::vector<std::size_t>& erased);
void reconstruct(const CodeSpec& code, StorageArray& array);

// Bulk layout. A node block stores l planes back to back; plane p holds the
// p-th symbol of every stripe as little-endian elements of
// field.element_width() bytes.
using Block = std::vector<std::uint8_t>;

struct BlockArray {
  std::size_t stripes = 0;
  std::vector<std::optional<Block>> nodes;

  std::vector<std::size_t> erased() const;
};

std::size_t plane_bytes(const CodeSpec& code, std::size_t stripes);

// Reads plane `plane` of node `node` into `out` (plane_bytes long).
using PlaneReader =
    std::function<void(std::size_t node, std::size_t plane, std::span<std::uint8_t> out)>;

BlockArray encode_blocks(const CodeSpec& code, const std::vector<Block>& data,
                         std::size_t stripes);

// Rebuilds plan.node reading only the planes listed in plan.accessed.
// Fills `transcript` counts (without payloads) when given.
Block repair_block(const CodeSpec& code, const RepairPlan& plan,
                   std::size_t stripes, const PlaneReader& read,
                   RepairTranscript* transcript = nullptr);

// In-memory conveniences over the two functions above.
RepairTranscript repair_blocks(const CodeSpec& code, BlockArray& array);
void reconstruct_blocks(const CodeSpec& code, BlockArray& array);

}  // namespace msr
