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
#include <optional>
#include <string>
#include <vector>

#include "msr/code_spec.hpp"
#include "msr/rational.hpp"

namespace msr {

// A parity-row / systematic-column block selection whose tl x tl submatrix
// of the encoding grid is singular.
struct MdsWitness {
  std::vector<std::size_t> parity_rows;
  std::vector<std::size_t> systematic_cols;
};

struct MdsResult {
  bool ok = false;
  std::optional<MdsWitness> witness;
  std::size_t submatrices_checked = 0;

  explicit operator bool() const noexcept { return ok; }
};

enum class MdsMethod {
  kAuto,
  // Every t x t block submatrix for t in [1, r].
  kBlockSubmatrices,
  // r = 2 with identity first row: A_x invertible and A_x - A_y invertible.
  kPairwiseDifference,
};

MdsResult check_mds(const CodeSpec& code, MdsMethod method = MdsMethod::kAuto);

struct SubspaceWitness {
  std::size_t node = 0;
  std::optional<std::size_t> helper;  // systematic helper j (alignment failure)
  std::optional<std::size_t> parity;  // parity index t in [0, r)
  std::string reason;
};

struct SubspaceResult {
  bool ok = false;
  std::optional<SubspaceWitness> witness;

  explicit operator bool() const noexcept { return ok; }
};

// For systematic node i: span(S[i,k+t] A[t,j]) = span(S[i,j]) for every
// systematic j != i and parity t, and sum_t S[i,k+t] A[t,i] = F^l. Handles
// both identical and per-helper repairing subspaces.
SubspaceResult check_subspace_property(const CodeSpec& code);
SubspaceResult check_subspace_property(const CodeSpec& code, std::size_t node);

struct MetricsReport {
  std::vector<Rational> bandwidth_fraction;  // per systematic node
  std::vector<std::size_t> access;           // beta(i)
  Rational access_ratio;
  // update_counts[i][c]: stored symbols written when symbol c of node i
  // changes.
  std::vector<std::vector<std::size_t>> update_counts;
  Rational average_update;
  std::vector<std::size_t> optimal_access_nodes;
  bool optimal_update = false;
  bool mds = false;
  bool subspace_property = false;
};

// Symbols read at helper j while repairing node i: the number of
// coordinates on which S[i,j] is not identically zero.
std::size_t access_count(const CodeSpec& code, std::size_t node,
                         std::size_t helper);

MetricsReport compute_metrics(const CodeSpec& code);

}  // namespace msr
