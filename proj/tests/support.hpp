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

// Test-only helpers: seeded generators for property tests and reference
// computations that do not go through the library's linear algebra.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "msr/code_spec.hpp"
#include "msr/codec.hpp"
#include "msr/gf.hpp"
#include "msr/linalg.hpp"
#include "msr/rational.hpp"

namespace msr::testing {

// ---------------------------------------------------------------- generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next() { return rng_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  std::uint32_t element(const Field& f) { return static_cast<std::uint32_t>(rng_() % f.order()); }
  std::uint32_t nonzero(const Field& f) {
    return 1 + static_cast<std::uint32_t>(rng_() % (f.order() - 1));
  }
  Vector vector(const Field& f, std::size_t n) {
    Vector v(n);
    for (auto& x : v) x = element(f);
    return v;
  }
  Matrix matrix(const Field& f, std::size_t rows, std::size_t cols) {
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = element(f);
    }
    return m;
  }
  // Product of random unit lower and upper triangular factors and a random
  // nonzero diagonal, so invertibility does not rely on rejection.
  Matrix invertible(const Field& f, std::size_t n) {
    Matrix lower = Matrix::identity(f, n);
    Matrix upper = Matrix::identity(f, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < r; ++c) lower(r, c) = element(f);
      for (std::size_t c = r + 1; c < n; ++c) upper(r, c) = element(f);
      upper(r, r) = nonzero(f);
    }
    return lower * upper;
  }
  std::vector<Vector> data(const CodeSpec& code) {
    std::vector<Vector> out;
    for (std::size_t j = 0; j < code.k; ++j) out.push_back(vector(code.field, code.l));
    return out;
  }
  Field prime_field(std::uint32_t max_q) {
    static const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 257, 65521};
    std::vector<std::uint32_t> ok;
    for (auto p : primes) {
      if (p <= max_q) ok.push_back(p);
    }
    return Field::prime(ok[below(ok.size())]);
  }
  Field any_field() {
    if (below(2) == 0) return prime_field(65521);
    return Field::binary(1 + static_cast<unsigned>(below(16)));
  }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------- field reference

// Shift-and-add multiply modulo the field polynomial (binary) or plain
// 64-bit modular multiply (prime).
inline std::uint32_t ref_mul(const Field& f, std::uint32_t a, std::uint32_t b) {
  if (f.kind() == FieldKind::kPrime) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % f.order());
  }
  std::uint32_t acc = 0;
  const unsigned w = f.degree();
  while (b) {
    if (b & 1) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << w)) a ^= f.polynomial();
  }
  return acc;
}

inline std::uint32_t ref_add(const Field& f, std::uint32_t a, std::uint32_t b) {
  if (f.kind() == FieldKind::kBinary) return a ^ b;
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % f.order());
}

inline std::uint32_t ref_neg(const Field& f, std::uint32_t a) {
  if (f.kind() == FieldKind::kBinary || a == 0) return a;
  return f.order() - a;
}

// Inverse by exhaustive search; fine for the small fields used in tests.
inline std::uint32_t ref_inv(const Field& f, std::uint32_t a) {
  for (std::uint32_t x = 1; x < f.order(); ++x) {
    if (ref_mul(f, a, x) == 1) return x;
  }
  return 0;
}

// ------------------------------------------------------ dense reference math

using Dense = std::vector<std::vector<std::uint32_t>>;

inline Dense dense(const Matrix& m) { return m.to_rows(); }

inline Dense ref_product(const Field& f, const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Dense out(n, std::vector<std::uint32_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        out[i][j] = ref_add(f, out[i][j], ref_mul(f, a[i][t], b[t][j]));
      }
    }
  }
  return out;
}

// Gauss-Jordan on a copy of `a`. Returns the pivot columns; when `inverse`
// is given and `a` is square and invertible it receives a^{-1}.
inline std::vector<std::size_t> ref_pivots(const Field& f, Dense a, Dense* inverse = nullptr) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  Dense inv;
  const bool track = inverse && rows == cols;
  if (track) {
    inv.assign(rows, std::vector<std::uint32_t>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) inv[i][i] = 1;
  }
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && pivots.size() < rows; ++c) {
    const std::size_t rank = pivots.size();
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    if (track) std::swap(inv[p], inv[rank]);
    const std::uint32_t s = ref_inv(f, a[rank][c]);
    for (auto& x : a[rank]) x = ref_mul(f, x, s);
    if (track) {
      for (auto& x : inv[rank]) x = ref_mul(f, x, s);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const std::uint32_t factor = ref_neg(f, a[r][c]);
      for (std::size_t j = c; j < cols; ++j) {
        if (a[rank][j] != 0) a[r][j] = ref_add(f, a[r][j], ref_mul(f, factor, a[rank][j]));
      }
      if (track) {
        for (std::size_t j = 0; j < cols; ++j) {
          if (inv[rank][j] != 0) inv[r][j] = ref_add(f, inv[r][j], ref_mul(f, factor, inv[rank][j]));
        }
      }
    }
    pivots.push_back(c);
  }
  if (track && pivots.size() == rows) *inverse = inv;
  return pivots;
}

inline std::size_t ref_rank(const Field& f, const Dense& a) { return ref_pivots(f, a).size(); }

inline std::optional<Dense> ref_inverse(const Field& f, const Dense& a) {
  Dense inv;
  if (ref_pivots(f, a, &inv).size() != a.size()) return std::nullopt;
  return inv;
}

inline Dense ref_transpose(const Dense& a) {
  if (a.empty()) return {};
  Dense t(a[0].size(), std::vector<std::uint32_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

inline std::size_t ref_nonzero_columns(const Dense& a) {
  if (a.empty()) return 0;
  std::size_t count = 0;
  for (std::size_t c = 0; c < a[0].size(); ++c) {
    bool any = false;
    for (const auto& row : a) any = any || row[c] != 0;
    count += any;
  }
  return count;
}

// ------------------------------------------------------ erasure recovery

// Generator rows of every node: node j contributes l rows of the
// (n l) x (k l) matrix mapping stacked data to stacked columns.
inline Dense generator(const CodeSpec& code) {
  const std::size_t l = code.l;
  Dense g(code.n * l, std::vector<std::uint32_t>(code.k * l, 0));
  for (std::size_t j = 0; j < code.k; ++j) {
    for (std::size_t p = 0; p < l; ++p) g[j * l + p][j * l + p] = 1;
  }
  for (std::size_t s = 0; s < code.r; ++s) {
    for (std::size_t j = 0; j < code.k; ++j) {
      const auto a = dense(code.a(s, j));
      for (std::size_t p = 0; p < l; ++p) {
        for (std::size_t c = 0; c < l; ++c) g[(code.k + s) * l + p][j * l + c] = a[p][c];
      }
    }
  }
  return g;
}

// Solves for the data from the surviving nodes using the generator rows of
// the first k l independent survivor rows. Returns nullopt when the
// survivors do not determine the data.
class ErasureOracle {
 public:
  ErasureOracle(const CodeSpec& code, const std::vector<std::size_t>& erased)
      : code_(code) {
    const Dense g = generator(code);
    Dense rows;
    std::vector<std::pair<std::size_t, std::size_t>> where;
    for (std::size_t j = 0; j < code.n; ++j) {
      if (std::find(erased.begin(), erased.end(), j) != erased.end()) continue;
      for (std::size_t p = 0; p < code.l; ++p) {
        rows.push_back(g[j * code.l + p]);
        where.push_back({j, p});
      }
    }
    // Independent survivor rows are the pivot columns of the transpose.
    for (auto c : ref_pivots(code.field, ref_transpose(rows))) {
      chosen_.push_back(rows[c]);
      source_.push_back(where[c]);
    }
    if (chosen_.size() == code.k * code.l) inverse_ = ref_inverse(code.field, chosen_);
  }

  bool recoverable() const { return inverse_.has_value(); }

  std::vector<Vector> solve(const StorageArray& array) const {
    Dense rhs;
    for (auto [node, p] : source_) rhs.push_back({array.column(node)[p]});
    const Dense x = ref_product(code_.field, *inverse_, rhs);
    std::vector<Vector> out(code_.k, Vector(code_.l));
    for (std::size_t j = 0; j < code_.k; ++j) {
      for (std::size_t p = 0; p < code_.l; ++p) out[j][p] = x[j * code_.l + p][0];
    }
    return out;
  }

 private:
  const CodeSpec& code_;
  Dense chosen_;
  std::vector<std::pair<std::size_t, std::size_t>> source_;
  std::optional<Dense> inverse_;
};

// All subsets of [0, n) with size in [1, max_size].
inline std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_size) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// --------------------------------------------- eigenspace reference family

// Basis rows of P[i][u] over indices a in [0, r^m) with digit i taken most
// significant first: for u < r the e_a with that digit equal to u, for
// u = r one all-ones row per class of indices differing only in digit i.
inline Dense ref_eigenspace(std::size_t r, std::size_t m, std::size_t i, std::size_t u) {
  std::size_t l = 1;
  for (std::size_t t = 0; t < m; ++t) l *= r;
  std::size_t weight = 1;
  for (std::size_t t = i + 1; t < m; ++t) weight *= r;
  Dense rows;
  for (std::size_t a = 0; a < l; ++a) {
    const std::size_t digit = a / weight % r;
    if (u < r) {
      if (digit != u) continue;
      std::vector<std::uint32_t> row(l, 0);
      row[a] = 1;
      rows.push_back(std::move(row));
    } else {
      if (digit != 0) continue;
      std::vector<std::uint32_t> row(l, 0);
      for (std::size_t v = 0; v < r; ++v) row[a + v * weight] = 1;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// Eigenspace matrix of node u*m + i: P[i][u'] stacked for u' != u ascending.
inline Dense ref_eigenspace_matrix(std::size_t r, std::size_t m, std::size_t node) {
  const std::size_t u = node / m, i = node % m;
  Dense out;
  for (std::size_t up = 0; up <= r; ++up) {
    if (up == u) continue;
    const Dense part = ref_eigenspace(r, m, i, up);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// Access ratio of the lowered code counted from reference matrices only:
// S[i,j] = P[i,u] V_j^{-1} for systematic helpers, P[i,u] for parities.
inline Rational reference_lowered_ratio(const Field& f, std::size_t r, std::size_t m) {
  const std::size_t k = (r + 1) * m, n = k + r;
  std::vector<Dense> b;
  for (std::size_t j = 0; j < k; ++j) {
    const auto inv = msr::testing::ref_inverse(f, msr::testing::ref_eigenspace_matrix(r, m, j));
    b.push_back(inv.value());
  }
  std::size_t total = 0, l = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Dense s = msr::testing::ref_eigenspace(r, m, i % m, i / m);
    l = s[0].size();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      total += msr::testing::ref_nonzero_columns(j < k ? msr::testing::ref_product(f, s, b[j]) : s);
    }
  }
  return Rational(static_cast<std::int64_t>(total), static_cast<std::int64_t>(k * (n - 1) * l));
}


// --------------------------------------------------------- literal fixture

// The (6, 4, 2) code over F_4 = F_2[t]/(t^2 + t + 1), t = 2, t + 1 = 3,
// with A[0][j] = I and the second parity matrices below. Nodes 0..2 use
// one repairing subspace each; node 3 uses (1, t) except (1, t+1) at the
// second parity.
inline CodeSpec small_f4_code() {
  const Field f = Field::binary(2, 0x7);
  const Matrix eye = Matrix::identity(f, 2);
  std::vector<std::vector<Matrix>> enc = {
      {eye, eye, eye, eye},
      {Matrix::from_rows(f, {{2, 1}, {0, 3}}), Matrix::from_rows(f, {{2, 0}, {1, 3}}),
       Matrix::from_rows(f, {{3, 0}, {0, 2}}), eye}};
  auto row = [&](std::uint32_t a, std::uint32_t b) {
    return Subspace::span(Matrix::from_rows(f, {{a, b}}));
  };
  std::vector<std::vector<Subspace>> rep = {
      {row(1, 0)},
      {row(0, 1)},
      {row(1, 1)},
      {row(1, 2), row(1, 2), row(1, 2), row(1, 2), row(1, 3)}};
  return make_code(f, 2, std::move(enc), std::move(rep));
}

}  // namespace msr::testing
