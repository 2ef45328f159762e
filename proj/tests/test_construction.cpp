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

#include <cmath>
#include <functional>
#include <set>

#include "doctest.h"
#include "msr/construction.hpp"
#include "msr/error.hpp"
#include "msr/verify.hpp"
#include "support.hpp"

using namespace msr;
using msr::testing::Dense;

namespace {

Subspace span_of(const Field& f, const Dense& rows) {
  return Subspace::span(Matrix::from_rows(f, rows));
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("digits are most significant first") {
  CHECK(digit_expand(5, 3, 4) == std::vector<std::size_t>{0, 0, 1, 2});
  for (std::size_t a = 0; a < 81; ++a) CHECK(digit_compose(digit_expand(a, 3, 4), 3) == a);
  CHECK_THROWS_AS(digit_expand(81, 3, 4), Error);
}

TEST_CASE("eigen family matches the index-arithmetic reference") {
  const Field f = Field::prime(7);
  for (auto [r, m] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 2}, {4, 1}, {3, 3}}) {
    const EigenFamily fam = build_eigen_family(r, m, f);
    CHECK(fam.l == static_cast<std::size_t>(std::pow(r, m)));
    for (std::size_t i = 0; i < fam.m; ++i) {
      for (std::size_t u = 0; u <= fam.r; ++u) {
        CHECK(fam.at(i, u) == span_of(f, msr::testing::ref_eigenspace(r, m, i, u)));
        CHECK(fam.at(i, u).dim() == fam.l / fam.r);
      }
    }
  }
}

TEST_CASE("the r = 3, m = 2 family lists the expected bases") {
  const Field f = Field::prime(5);
  const EigenFamily fam = build_eigen_family(3, 2, f);
  auto e = [&](std::vector<std::size_t> idx) {
    return Subspace::coordinate(f, 9, idx);
  };
  CHECK(fam.at(0, 0) == e({0, 1, 2}));
  CHECK(fam.at(0, 1) == e({3, 4, 5}));
  CHECK(fam.at(0, 2) == e({6, 7, 8}));
  CHECK(fam.at(1, 0) == e({0, 3, 6}));
  CHECK(fam.at(1, 2) == e({2, 5, 8}));
  Matrix sums(f, 3, 9);
  for (std::size_t row = 0; row < 3; ++row) {
    for (std::size_t v = 0; v < 3; ++v) sums(row, 3 * row + v) = 1;
  }
  CHECK(fam.at(1, 3) == Subspace::span(sums));
  CHECK(EigenFamily::label(0, 3) == "P[1,3]");
}

TEST_CASE("any r subspaces of one digit form a direct sum") {
  const Field f = Field::prime(11);
  for (auto [r, m] : {std::pair{2, 2}, {3, 2}, {4, 1}}) {
    const EigenFamily fam = build_eigen_family(r, m, f);
    for (std::size_t i = 0; i < fam.m; ++i) {
      for (std::size_t skip = 0; skip <= fam.r; ++skip) {
        std::vector<Subspace> parts;
        for (std::size_t u = 0; u <= fam.r; ++u) {
          if (u != skip) parts.push_back(fam.at(i, u));
        }
        CHECK(span_sum(parts).dim() == fam.l);
      }
    }
  }
}

TEST_CASE("general codes have the requested eigen structure") {
  for (auto [r, m] : {std::pair{2, 2}, {3, 2}}) {
    const CodeSpec code = build_general(r, m);
    CHECK(code.family == Family::kGeneral);
    CHECK(code.k == static_cast<std::size_t>((r + 1) * m));
    CHECK(code.n == code.k + r);
    REQUIRE(code.has_provenance());
    const Field& f = code.field;
    for (std::size_t node = 0; node < code.k; ++node) {
      const Matrix& a = code.a(1, node);
      CHECK(code.a(0, node).is_identity());
      for (std::size_t s = 2; s < code.r; ++s) CHECK(code.a(s, node) == code.a(s - 1, node) * a);
      const std::size_t u = node / m, i = node % m;
      // Repairing subspace and eigenspaces against the reference family.
      CHECK(code.s(node, code.k) == span_of(f, msr::testing::ref_eigenspace(r, m, i, u)));
      std::set<std::uint32_t> values;
      std::size_t at = 0;
      for (std::size_t up = 0; up <= code.r; ++up) {
        if (up == u) continue;
        const auto& eig = code.provenance[node].eigenspaces[at++];
        values.insert(eig.eigenvalue);
        const Dense basis = msr::testing::ref_eigenspace(r, m, i, up);
        const Dense image = msr::testing::ref_product(f, basis, a.to_rows());
        for (std::size_t row = 0; row < basis.size(); ++row) {
          for (std::size_t c = 0; c < code.l; ++c) {
            CHECK(image[row][c] == msr::testing::ref_mul(f, eig.eigenvalue, basis[row][c]));
          }
        }
      }
      CHECK(values.size() == code.r);
      CHECK(values.count(0) == 0);
    }
    CHECK(check_mds(code).ok);
    CHECK(check_subspace_property(code).ok);
  }
}

TEST_CASE("general search is deterministic in the seed") {
  GeneralOptions opts;
  opts.seed = 7;
  const CodeSpec a = build_general(2, 2, opts);
  const CodeSpec b = build_general(2, 2, opts);
  CHECK(a.encoding == b.encoding);
  CHECK(a.construction == b.construction);
  CHECK(a.construction.at("seed") == 7);
}

TEST_CASE("general search honours a fixed field and reports exhaustion") {
  GeneralOptions opts;
  opts.field = Field::prime(3);
  opts.max_tries = 5;
  CHECK(code_of([&] { build_general(2, 2, opts); }) == Errc::kSearchExhausted);
  opts.field = Field::prime(2);
  CHECK(code_of([&] { build_general(2, 2, opts); }) == Errc::kConstruction);
  opts.field = Field::binary(5);
  opts.max_tries = 200;
  const CodeSpec code = build_general(2, 2, opts);
  CHECK(code.field == Field::binary(5));
  CHECK(check_mds(code).ok);
}

TEST_CASE("two-parity eigenvalue table reproduces the m = 2 example") {
  // Per-node (1st, 2nd) eigenvalues in the table's eigenspace order:
  // u = 0 lists (P[i,2], P[i,1]); u = 1 lists (P[i,0], P[i,2]); u = 2 lists
  // (P[i,0], P[i,1]).
  const std::uint32_t first[6] = {1, 2, 1, 2, 4, 3};
  const std::uint32_t second[6] = {4, 3, 4, 3, 1, 2};
  std::vector<std::vector<std::uint32_t>> ascending(6);
  for (std::size_t node = 0; node < 6; ++node) {
    ascending[node] = node < 2 ? std::vector{second[node], first[node]}
                               : std::vector{first[node], second[node]};
  }
  const Field f5 = Field::prime(5);
  const CodeSpec literal = build_general_with_eigenvalues(2, 2, f5, ascending);
  const CodeSpec table = build_two_parity(2);
  CHECK(table.field == f5);
  CHECK(table.encoding == literal.encoding);
  CHECK(check_mds(literal).ok);
}

TEST_CASE("two-parity codes use the smallest prime field of size at least 2m+1") {
  for (std::size_t m = 1; m <= 4; ++m) {
    const CodeSpec code = build_two_parity(m);
    CHECK(code.field.order() == next_prime(static_cast<std::uint32_t>(2 * m + 1)));
    CHECK(code.n == 3 * m + 2);
    CHECK(code.l == (1u << m));
    CHECK(check_mds(code, MdsMethod::kBlockSubmatrices).ok);
  }
}

TEST_CASE("two-parity over a binary field") {
  TwoParityOptions opts;
  opts.field = Field::binary(3);
  const CodeSpec code = build_two_parity(3, opts);
  CHECK(check_mds(code, MdsMethod::kBlockSubmatrices).ok);
}

TEST_CASE("two-parity input validation") {
  TwoParityOptions opts;
  opts.field = Field::prime(3);
  CHECK(code_of([&] { build_two_parity(2, opts); }) == Errc::kConstruction);
  opts.field = Field::prime(5);
  opts.lambdas = std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 2}, {2, 3}};
  CHECK(code_of([&] { build_two_parity(2, opts); }) == Errc::kConstruction);
  opts.lambdas = std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 0}, {2, 3}};
  CHECK(code_of([&] { build_two_parity(2, opts); }) == Errc::kConstruction);
}

TEST_CASE("optimal-update codes use generalized permutations") {
  for (std::size_t m = 1; m <= 3; ++m) {
    const CodeSpec code = build_optimal_update(m);
    CHECK(code.family == Family::kOptimalUpdate);
    CHECK(code.n == 2 * m + 2);
    for (const auto& row : code.encoding) {
      for (const auto& a : row) CHECK(is_generalized_permutation(a));
    }
    CHECK(check_mds(code, MdsMethod::kBlockSubmatrices).ok);
    CHECK(check_subspace_property(code).ok);
    CHECK(code.field.characteristic() != 2);
  }
}

TEST_CASE("shared eigenvalues without multipliers never give an MDS code for m >= 2") {
  // e_0 lies in P_1 and P_2, so it is an eigenvector of both A_1^Q and A_2^Q
  // with the same eigenvalue and their difference is singular.
  for (std::uint32_t q : {5u, 7u, 11u, 13u}) {
    const CodeSpec code = build_optimal_update_with(2, Field::prime(q), {});
    const auto res = check_mds(code, MdsMethod::kBlockSubmatrices);
    CHECK_FALSE(res.ok);
    REQUIRE(res.witness.has_value());
    CHECK(check_subspace_property(code).ok);
  }
}

TEST_CASE("optimal-update parameter validation") {
  const Field f7 = Field::prime(7);
  OptimalUpdateParams p;
  p.y = 6;  // y = -x
  CHECK(code_of([&] { build_optimal_update_with(2, f7, p); }) == Errc::kConstruction);
  p = {};
  p.mu = p.lambda;
  CHECK(code_of([&] { build_optimal_update_with(2, f7, p); }) == Errc::kConstruction);
  p = {};
  p.multipliers = {1, 2, 3};
  CHECK(code_of([&] { build_optimal_update_with(2, f7, p); }) == Errc::kInvalidArgument);
  CHECK(code_of([&] { build_optimal_update_with(2, Field::binary(3), {}); }) ==
        Errc::kConstruction);
  OptimalUpdateOptions opts;
  opts.field = Field::prime(3);
  CHECK(code_of([&] { build_optimal_update(2, opts); }) == Errc::kSearchExhausted);
}

TEST_CASE("parameter limits") {
  CHECK(code_of([] { build_general(1, 2); }) == Errc::kInvalidArgument);
  CHECK(code_of([] { build_general(2, 0); }) == Errc::kInvalidArgument);
  CHECK(code_of([] { build_general(2, 13); }) == Errc::kInvalidArgument);
}
