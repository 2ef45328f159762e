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

#include "msr/verify.hpp"

#include <string>

#include "msr/error.hpp"

namespace msr {

namespace {

// Advances `idx` (a sorted t-subset of [0, n)) to the next subset in
// lexicographic order; false when exhausted.
bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t t = idx.size();
  for (std::size_t pos = t; pos-- > 0;) {
    if (idx[pos] < n - t + pos) {
      ++idx[pos];
      for (std::size_t q = pos + 1; q < t; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_subset(std::size_t t) {
  std::vector<std::size_t> idx(t);
  for (std::size_t i = 0; i < t; ++i) idx[i] = i;
  return idx;
}

bool first_row_identity(const CodeSpec& code) {
  for (std::size_t j = 0; j < code.k; ++j) {
    if (!code.a(0, j).is_identity()) return false;
  }
  return true;
}

MdsResult check_blocks(const CodeSpec& code) {
  MdsResult res;
  for (std::size_t t = 1; t <= code.r && t <= code.k; ++t) {
    auto rows = first_subset(t);
    do {
      auto cols = first_subset(t);
      do {
        std::vector<std::vector<Matrix>> grid(t);
        for (std::size_t a = 0; a < t; ++a)
          for (std::size_t b = 0; b < t; ++b)
            grid[a].push_back(code.a(rows[a], cols[b]));
        ++res.submatrices_checked;
        const Matrix sub = block_matrix(grid);
        if (rank(sub) != sub.rows()) {
          res.ok = false;
          res.witness = MdsWitness{rows, cols};
          return res;
        }
      } while (next_subset(cols, code.k));
    } while (next_subset(rows, code.r));
  }
  res.ok = true;
  return res;
}

MdsResult check_pairwise(const CodeSpec& code) {
  MdsResult res;
  for (std::size_t x = 0; x < code.k; ++x) {
    ++res.submatrices_checked;
    if (!is_invertible(code.a(1, x))) {
      res.witness = MdsWitness{{1}, {x}};
      return res;
    }
  }
  for (std::size_t x = 0; x < code.k; ++x) {
    for (std::size_t y = x + 1; y < code.k; ++y) {
      ++res.submatrices_checked;
      if (!is_invertible(code.a(1, x) - code.a(1, y))) {
        res.witness = MdsWitness{{0, 1}, {x, y}};
        return res;
      }
    }
  }
  res.ok = true;
  return res;
}

}  // namespace

MdsResult check_mds(const CodeSpec& code, MdsMethod method) {
  const bool pairwise_ok = code.r == 2 && first_row_identity(code);
  switch (method) {
    case MdsMethod::kPairwiseDifference:
      if (!pairwise_ok) {
        throw Error(Errc::kUnsupported,
                    "pairwise MDS check needs r = 2 and identity first row");
      }
      return check_pairwise(code);
    case MdsMethod::kBlockSubmatrices:
      return check_blocks(code);
    case MdsMethod::kAuto:
      break;
  }
  return pairwise_ok ? check_pairwise(code) : check_blocks(code);
}

SubspaceResult check_subspace_property(const CodeSpec& code, std::size_t i) {
  if (i >= code.k) {
    throw Error(Errc::kInvalidArgument,
                "node " + std::to_string(i) + " is not systematic");
  }
  SubspaceResult res;
  auto fail = [&](std::optional<std::size_t> helper,
                  std::optional<std::size_t> parity, std::string reason) {
    res.ok = false;
    res.witness = SubspaceWitness{i, helper, parity, std::move(reason)};
    return res;
  };
  const std::size_t d = code.l / code.r;
  for (std::size_t j = 0; j < code.n; ++j) {
    if (j != i && code.s(i, j).dim() != d) {
      return fail(j, std::nullopt, "repairing subspace does not have dimension l/r");
    }
  }
  for (std::size_t t = 0; t < code.r; ++t) {
    const Matrix& sp = code.s(i, code.k + t).basis();
    for (std::size_t j = 0; j < code.k; ++j) {
      if (j == i) continue;
      if (!(Subspace::span(sp * code.a(t, j)) == code.s(i, j))) {
        return fail(j, t, "interference from helper is not aligned");
      }
    }
  }
  std::vector<Subspace> images;
  for (std::size_t t = 0; t < code.r; ++t) {
    images.push_back(Subspace::span(code.s(i, code.k + t).basis() * code.a(t, i)));
  }
  if (span_sum(images).dim() != code.l) {
    return fail(std::nullopt, std::nullopt,
                "parity projections do not span the lost column");
  }
  res.ok = true;
  return res;
}

SubspaceResult check_subspace_property(const CodeSpec& code) {
  for (std::size_t i = 0; i < code.k; ++i) {
    auto res = check_subspace_property(code, i);
    if (!res.ok) return res;
  }
  return SubspaceResult{true, std::nullopt};
}

std::size_t access_count(const CodeSpec& code, std::size_t node,
                         std::size_t helper) {
  return nonzero_column_count(code.s(node, helper).basis());
}

MetricsReport compute_metrics(const CodeSpec& code) {
  MetricsReport rep;
  const auto n = static_cast<std::int64_t>(code.n);
  const auto k = static_cast<std::int64_t>(code.k);
  const auto l = static_cast<std::int64_t>(code.l);
  std::int64_t access_total = 0;
  for (std::size_t i = 0; i < code.k; ++i) {
    std::int64_t transmitted = 0;
    std::size_t beta = 0;
    for (std::size_t j = 0; j < code.n; ++j) {
      if (j == i) continue;
      transmitted += static_cast<std::int64_t>(code.s(i, j).dim());
      beta += access_count(code, i, j);
    }
    rep.bandwidth_fraction.emplace_back(transmitted, (n - 1) * l);
    rep.access.push_back(beta);
    access_total += static_cast<std::int64_t>(beta);
    if (beta * code.r == (code.n - 1) * code.l) rep.optimal_access_nodes.push_back(i);
  }
  rep.access_ratio = Rational(access_total, k * (n - 1) * l);

  std::int64_t update_total = 0;
  rep.optimal_update = true;
  for (std::size_t i = 0; i < code.k; ++i) {
    std::vector<std::size_t> counts(code.l, 1);
    for (std::size_t s = 0; s < code.r; ++s) {
      const Matrix& a = code.a(s, i);
      if (!is_generalized_permutation(a)) rep.optimal_update = false;
      for (std::size_t c = 0; c < code.l; ++c) counts[c] += nonzero_count_in_column(a, c);
    }
    for (auto c : counts) update_total += static_cast<std::int64_t>(c);
    rep.update_counts.push_back(std::move(counts));
  }
  rep.average_update = Rational(update_total, k * l);
  rep.mds = check_mds(code).ok;
  rep.subspace_property = check_subspace_property(code).ok;
  return rep;
}

}  // namespace msr
