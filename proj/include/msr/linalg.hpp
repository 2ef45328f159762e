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
#include <span>
#include <vector>

#include "msr/gf.hpp"

namespace msr {

// Upper bound on the ambient dimension of subspaces (the column length l).
inline constexpr std::size_t kMaxColumnLength = 4096;

using Vector = std::vector<std::uint32_t>;

// Dense row-major matrix over a finite field. Entries are canonical raw
// integers of field(); see Field for the encoding.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(Field field, std::size_t n);
  // Throws Error(kDimensionMismatch) on ragged rows and
  // Error(kInvalidArgument) on non-canonical entries.
  static Matrix from_rows(Field field,
                          const std::vector<std::vector<std::uint32_t>>& rows);
  static Matrix diagonal(Field field, std::span<const std::uint32_t> diag);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  std::uint32_t& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }
  FieldElement element(std::size_t r, std::size_t c) const {
    return FieldElement(field_, (*this)(r, c));
  }

  std::span<const std::uint32_t> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<std::vector<std::uint32_t>> to_rows() const;

  Matrix transpose() const;
  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
               std::size_t ncols) const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix scaled(std::uint32_t c) const;

  // M * v for a column vector v.
  Vector apply(std::span<const std::uint32_t> v) const;
  // v * M for a row vector v.
  Vector left_apply(std::span<const std::uint32_t> v) const;

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

Matrix vstack(std::span<const Matrix> parts);
Matrix hstack(std::span<const Matrix> parts);
// Block matrix from a row-major grid of equally sized blocks.
Matrix block_matrix(const std::vector<std::vector<Matrix>>& grid);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan elimination; pivots are taken from the leftmost remaining
// column, topmost candidate row, and normalized to 1.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Throws Error(kSingularMatrix).
Matrix invert(const Matrix& m);
FieldElement det(const Matrix& m);
bool is_invertible(const Matrix& m);

// Some x with A x = b; throws Error(kInconsistentSystem) when none exists.
Vector solve(const Matrix& a, std::span<const std::uint32_t> b);

// Basis (as rows) of {x : M x = 0}.
Matrix nullspace(const Matrix& m);
// Basis (as rows) of {v : v M = 0}.
Matrix left_kernel(const Matrix& m);

// Number of columns holding at least one nonzero entry.
std::size_t nonzero_column_count(const Matrix& m);
std::vector<std::size_t> nonzero_columns(const Matrix& m);
std::size_t nonzero_count_in_column(const Matrix& m, std::size_t c);
// Exactly one nonzero entry in every row and every column.
bool is_generalized_permutation(const Matrix& m);

// Row space of a matrix, held in canonical form: the reduced row-echelon
// basis without zero rows. Equal subspaces have identical bases.
class Subspace {
 public:
  Subspace() = default;

  // Span of the rows of `generators`.
  static Subspace span(const Matrix& generators);
  static Subspace zero(Field field, std::size_t ambient_dim);
  static Subspace full(Field field, std::size_t ambient_dim);
  // Span of the standard basis vectors e_i for i in `indices`.
  static Subspace coordinate(Field field, std::size_t ambient_dim,
                             std::span<const std::size_t> indices);

  const Field& field() const noexcept { return basis_.field(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const std::uint32_t> v) const;
  bool is_subspace_of(const Subspace& other) const;

  // span(S * A).
  Subspace image(const Matrix& a) const;

  // Coordinates of each row of `rows` in this basis; throws
  // Error(kInvalidArgument) if some row lies outside the subspace.
  Matrix coordinates_of(const Matrix& rows) const;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
  std::size_t ambient_ = 0;
};

Subspace span_sum(const Subspace& u, const Subspace& v);
Subspace span_sum(std::span<const Subspace> parts);
Subspace span_intersect(const Subspace& u, const Subspace& v);
// True iff span(S * A) = S.
bool is_invariant(const Subspace& s, const Matrix& a);

// The unique A with v * A = lambda_u * v for every v in eigenspace u. The
// eigenspaces must form a direct sum equal to F^l and the eigenvalues must be
// distinct and nonzero; otherwise Error(kConstruction).
Matrix assemble_from_eigen(std::span<const Subspace> eigenspaces,
                           std::span<const std::uint32_t> eigenvalues);
// Matrix stacking the eigenspace bases in the given order.
Matrix stack_bases(std::span<const Subspace> spaces);

// {v : v * A = lambda * v}.
Subspace left_eigenspace(const Matrix& a, std::uint32_t lambda);

}  // namespace msr
