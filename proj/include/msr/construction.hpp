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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msr/code_spec.hpp"

namespace msr {

// r-ary digits of a in [0, r^m), most significant first:
// a = sum_i digits[i] * r^(m-1-i).
std::vector<std::size_t> digit_expand(std::size_t a, std::size_t r, std::size_t m);
std::size_t digit_compose(const std::vector<std::size_t>& digits, std::size_t r);

// The (r+1)m subspaces P[i][u] of F^l, l = r^m, digit i in [0, m), u in
// [0, r]. For u < r, P[i][u] is spanned by the e_a whose i-th digit is u;
// P[i][r] by the sums of e_a' over each class of indices agreeing with a
// outside digit i.
struct EigenFamily {
  std::size_t r = 0;
  std::size_t m = 0;
  std::size_t l = 0;
  std::vector<std::vector<Subspace>> p;

  const Subspace& at(std::size_t i, std::size_t u) const { return p.at(i).at(u); }
  // "P[i,u]" with i 1-based.
  static std::string label(std::size_t i, std::size_t u);
};

EigenFamily build_eigen_family(std::size_t r, std::size_t m, const Field& field);

// Builds the r-parity eigenspace code from explicit eigenvalues. For node
// u*m + i, eigenvalues[node][v] belongs to the v-th eigenspace P[i][u'] in
// ascending u' (u' != u). No MDS check.
CodeSpec build_general_with_eigenvalues(
    std::size_t r, std::size_t m, const Field& field,
    const std::vector<std::vector<std::uint32_t>>& eigenvalues);

struct GeneralOptions {
  // Fixed field; when unset the search starts at the smallest prime > r and
  // moves to the smallest prime >= 2q each time a field is exhausted.
  std::optional<Field> field;
  std::uint64_t seed = 1;
  std::size_t max_tries = 200;  // eigenvalue assignments per field
};

// (n, k, l) = ((r+1)m + r, (r+1)m, r^m). Eigenvalues are drawn at random
// (seeded) until the block-submatrix MDS check passes.
CodeSpec build_general(std::size_t r, std::size_t m, const GeneralOptions& opts = {});

struct TwoParityOptions {
  std::optional<Field> field;  // default: smallest prime >= 2m+1
  // (lambda[i][0], lambda[i][1]) per digit i; 2m distinct nonzero values.
  // Default over F_q: (q - (i+1), i+1).
  std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>> lambdas;
};

// (3m+2, 3m, 2^m) code with the fixed eigenvalue assignment table. Throws
// Error(kNotMds) if the exhaustive check fails.
CodeSpec build_two_parity(std::size_t m, const TwoParityOptions& opts = {});

struct OptimalUpdateParams {
  std::uint32_t x = 1;
  std::uint32_t y = 2;
  std::uint32_t lambda = 1;
  std::uint32_t mu = 2;
  // Per-node nonzero scale of the encoding matrix (all eigenvalues of the
  // node multiplied by it). Empty means all ones.
  std::vector<std::uint32_t> multipliers;
};

// (2m+2, 2m, 2^m) code with generalized-permutation encoding matrices.
// Nodes 0..m-1 are A_i^Q (eigenspaces P_i -> lambda, R_i -> mu, repaired by
// Q_i); nodes m..2m-1 are A_i^P (Q_i -> xy, O_i -> -xy, repaired by P_i).
// No MDS check. Requires odd characteristic, x^2 != y^2, lambda != mu.
CodeSpec build_optimal_update_with(std::size_t m, const Field& field,
                                   const OptimalUpdateParams& params);

struct OptimalUpdateOptions {
  std::optional<Field> field;  // default: odd primes from 3 upward
  // Fixed values; unset ones are searched. The first candidate in every
  // field is x=1, y=2, lambda=1, mu=2 with unit multipliers.
  std::optional<std::uint32_t> x, y, lambda, mu;
  std::optional<std::vector<std::uint32_t>> multipliers;
  std::uint64_t seed = 1;
  std::size_t max_tries = 500;
};

CodeSpec build_optimal_update(std::size_t m, const OptimalUpdateOptions& opts = {});

}  // namespace msr
