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

#include "msr/linalg.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "msr/error.hpp"

namespace msr {

namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
  if (!(a.field() == b.field())) {
    throw Error(Errc::kFieldMismatch, std::string(op) + ": " +
                                          a.field().name() + " vs " +
                                          b.field().name());
  }
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// row_dst -= coef * row_src
void row_axpy(const Field& f, std::span<std::uint32_t> dst,
              std::span<const std::uint32_t> src, std::uint32_t coef,
              std::size_t from) {
  if (coef == 0) return;
  const std::uint32_t neg = f.neg(coef);
  for (std::size_t c = from; c < dst.size(); ++c) {
    if (src[c] != 0) dst[c] = f.add(dst[c], f.mul(neg, src[c]));
  }
}

void row_scale(const Field& f, std::span<std::uint32_t> row,
               std::uint32_t coef, std::size_t from) {
  for (std::size_t c = from; c < row.size(); ++c) row[c] = f.mul(row[c], coef);
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = m.row(a);
  auto rb = m.row(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

// In-place Gauss-Jordan on the first `limit_cols` columns. Returns pivots.
std::vector<std::size_t> reduce_in_place(Matrix& m, std::size_t limit_cols) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < limit_cols && pivot_row < m.rows(); ++col) {
    std::size_t found = m.rows();
    for (std::size_t r = pivot_row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    swap_rows(m, pivot_row, found);
    row_scale(f, m.row(pivot_row), f.inv(m(pivot_row, col)), col);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row) continue;
      row_axpy(f, m.row(r), m.row(pivot_row), m(r, col), col);
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(Field field,
                         const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(Errc::kDimensionMismatch, "ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!field.contains(rows[r][c])) {
        throw Error(Errc::kInvalidArgument,
                    std::to_string(rows[r][c]) + " is not an element of " +
                        field.name());
      }
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::diagonal(Field field, std::span<const std::uint32_t> diag) {
  Matrix m(std::move(field), diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

std::vector<std::vector<std::uint32_t>> Matrix::to_rows() const {
  std::vector<std::vector<std::uint32_t>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    out[r].assign(row(r).begin(), row(r).end());
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                     std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) {
    throw Error(Errc::kDimensionMismatch, "block outside " + shape(*this));
  }
  Matrix b(field_, nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < ncols; ++c) b(r, c) = (*this)(row0 + r, col0 + c);
  return b;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < cols.size(); ++i) out(r, i) = (*this)(r, cols[i]);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix Matrix::scaled(std::uint32_t c) const {
  Matrix out(*this);
  for (auto& v : out.data_) v = field_.mul(v, c);
  return out;
}

Vector Matrix::apply(std::span<const std::uint32_t> v) const {
  if (v.size() != cols_) {
    throw Error(Errc::kDimensionMismatch,
                shape(*this) + " times vector of length " +
                    std::to_string(v.size()));
  }
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint32_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const std::uint32_t a = (*this)(r, c);
      if (a != 0 && v[c] != 0) acc = field_.add(acc, field_.mul(a, v[c]));
    }
    out[r] = acc;
  }
  return out;
}

Vector Matrix::left_apply(std::span<const std::uint32_t> v) const {
  if (v.size() != rows_) {
    throw Error(Errc::kDimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " times " +
                    shape(*this));
  }
  Vector out(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      const std::uint32_t a = (*this)(r, c);
      if (a != 0) out[c] = field_.add(out[c], field_.mul(v[r], a));
    }
  }
  return out;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](std::uint32_t v) { return v == 0; });
}

bool Matrix::is_identity() const noexcept {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "matrix product");
  if (a.cols() != b.rows()) {
    throw Error(Errc::kDimensionMismatch,
                "matrix product " + shape(a) + " * " + shape(b));
  }
  const Field& f = a.field();
  Matrix out(f, a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint32_t x = a(r, k);
      if (x == 0) continue;
      auto src = b.row(k);
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (src[c] != 0) dst[c] = f.add(dst[c], f.mul(x, src[c]));
      }
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "matrix sum");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::kDimensionMismatch,
                "matrix sum " + shape(a) + " + " + shape(b));
  }
  Matrix out(a);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out(r, c) = a.field().add(a(r, c), b(r, c));
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "matrix difference");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::kDimensionMismatch,
                "matrix difference " + shape(a) + " - " + shape(b));
  }
  Matrix out(a);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out(r, c) = a.field().sub(a(r, c), b(r, c));
  return out;
}

Matrix vstack(std::span<const Matrix> parts) {
  if (parts.empty()) return {};
  std::size_t rows = 0;
  for (const auto& p : parts) {
    require_same_field(parts.front(), p, "vstack");
    if (p.cols() != parts.front().cols()) {
      throw Error(Errc::kDimensionMismatch, "vstack column counts differ");
    }
    rows += p.rows();
  }
  Matrix out(parts.front().field(), rows, parts.front().cols());
  std::size_t at = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r, ++at) {
      std::copy(p.row(r).begin(), p.row(r).end(), out.row(at).begin());
    }
  }
  return out;
}

Matrix hstack(std::span<const Matrix> parts) {
  if (parts.empty()) return {};
  std::size_t cols = 0;
  for (const auto& p : parts) {
    require_same_field(parts.front(), p, "hstack");
    if (p.rows() != parts.front().rows()) {
      throw Error(Errc::kDimensionMismatch, "hstack row counts differ");
    }
    cols += p.cols();
  }
  Matrix out(parts.front().field(), parts.front().rows(), cols);
  std::size_t at = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < p.cols(); ++c) out(r, at + c) = p(r, c);
    at += p.cols();
  }
  return out;
}

Matrix block_matrix(const std::vector<std::vector<Matrix>>& grid) {
  std::vector<Matrix> rows;
  rows.reserve(grid.size());
  for (const auto& g : grid) rows.push_back(hstack(g));
  return vstack(rows);
}

RrefResult rref(const Matrix& m) {
  RrefResult out{m, 0, {}};
  out.pivots = reduce_in_place(out.reduced, m.cols());
  out.rank = out.pivots.size();
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix invert(const Matrix& m) {
  if (!m.square()) {
    throw Error(Errc::kDimensionMismatch, "inverse of non-square " + shape(m));
  }
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = reduce_in_place(aug, n);
  if (pivots.size() != n) {
    throw Error(Errc::kSingularMatrix, shape(m) + " matrix has rank " +
                                           std::to_string(pivots.size()));
  }
  return aug.block(0, n, n, n);
}

FieldElement det(const Matrix& m) {
  if (!m.square()) {
    throw Error(Errc::kDimensionMismatch, "determinant of non-square " + shape(m));
  }
  const Field& f = m.field();
  Matrix a(m);
  std::uint32_t acc = 1;
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t found = n;
    for (std::size_t r = col; r < n; ++r) {
      if (a(r, col) != 0) {
        found = r;
        break;
      }
    }
    if (found == n) return FieldElement(f, 0);
    if (found != col) {
      swap_rows(a, found, col);
      acc = f.neg(acc);
    }
    const std::uint32_t p = a(col, col);
    acc = f.mul(acc, p);
    const std::uint32_t pinv = f.inv(p);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) != 0) row_axpy(f, a.row(r), a.row(col), f.mul(a(r, col), pinv), col);
    }
  }
  return FieldElement(f, acc);
}

bool is_invertible(const Matrix& m) {
  return m.square() && rank(m) == m.rows();
}

Vector solve(const Matrix& a, std::span<const std::uint32_t> b) {
  if (b.size() != a.rows()) {
    throw Error(Errc::kDimensionMismatch,
                "solve: " + shape(a) + " with rhs of length " +
                    std::to_string(b.size()));
  }
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = reduce_in_place(aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r) {
    if (aug(r, a.cols()) != 0) {
      throw Error(Errc::kInconsistentSystem, "right-hand side outside column space");
    }
  }
  Vector x(a.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

Matrix nullspace(const Matrix& m) {
  const auto rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  const Field& f = m.field();
  Matrix out(f, m.cols() - rr.rank, m.cols());
  std::size_t at = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    out(at, free) = 1;
    for (std::size_t i = 0; i < rr.rank; ++i) {
      out(at, rr.pivots[i]) = f.neg(rr.reduced(i, free));
    }
    ++at;
  }
  return out;
}

Matrix left_kernel(const Matrix& m) { return nullspace(m.transpose()); }

std::vector<std::size_t> nonzero_columns(const Matrix& m) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m(r, c) != 0) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

std::size_t nonzero_column_count(const Matrix& m) {
  return nonzero_columns(m).size();
}

std::size_t nonzero_count_in_column(const Matrix& m, std::size_t c) {
  std::size_t n = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) n += m(r, c) != 0;
  return n;
}

bool is_generalized_permutation(const Matrix& m) {
  if (!m.square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t n = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) n += m(r, c) != 0;
    if (n != 1) return false;
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (nonzero_count_in_column(m, c) != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(const Matrix& generators) {
  if (generators.cols() > kMaxColumnLength) {
    throw Error(Errc::kInvalidArgument,
                "ambient dimension " + std::to_string(generators.cols()) +
                    " exceeds " + std::to_string(kMaxColumnLength));
  }
  auto rr = rref(generators);
  Subspace s;
  s.ambient_ = generators.cols();
  s.basis_ = rr.reduced.block(0, 0, rr.rank, generators.cols());
  s.pivots_ = std::move(rr.pivots);
  return s;
}

Subspace Subspace::zero(Field field, std::size_t ambient_dim) {
  return span(Matrix(std::move(field), 0, ambient_dim));
}

Subspace Subspace::full(Field field, std::size_t ambient_dim) {
  return span(Matrix::identity(std::move(field), ambient_dim));
}

Subspace Subspace::coordinate(Field field, std::size_t ambient_dim,
                              std::span<const std::size_t> indices) {
  Matrix m(std::move(field), indices.size(), ambient_dim);
  for (std::size_t i = 0; i < indices.size(); ++i) m(i, indices[i]) = 1;
  return span(m);
}

bool Subspace::contains(std::span<const std::uint32_t> v) const {
  if (v.size() != ambient_) {
    throw Error(Errc::kDimensionMismatch, "vector length differs from ambient dimension");
  }
  const Field& f = basis_.field();
  Vector w(v.begin(), v.end());
  for (std::size_t i = 0; i < dim(); ++i) {
    row_axpy(f, w, basis_.row(i), w[pivots_[i]], 0);
  }
  return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
}

bool Subspace::is_subspace_of(const Subspace& other) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!other.contains(basis_.row(i))) return false;
  }
  return true;
}

Subspace Subspace::image(const Matrix& a) const {
  if (!a.square() || a.rows() != ambient_) {
    throw Error(Errc::kDimensionMismatch,
                "subspace of F^" + std::to_string(ambient_) + " times " +
                    shape(a));
  }
  return span(basis_ * a);
}

Matrix Subspace::coordinates_of(const Matrix& rows) const {
  if (rows.cols() != ambient_) {
    throw Error(Errc::kDimensionMismatch, "coordinates_of: ambient dimension");
  }
  Matrix coords(basis_.field(), rows.rows(), dim());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t i = 0; i < dim(); ++i) coords(r, i) = rows(r, pivots_[i]);
  }
  if (!(coords * basis_ == rows)) {
    throw Error(Errc::kInvalidArgument, "rows lie outside the subspace");
  }
  return coords;
}

namespace {
void require_compatible(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw Error(Errc::kDimensionMismatch,
                "ambient dimensions " + std::to_string(u.ambient_dim()) +
                    " and " + std::to_string(v.ambient_dim()));
  }
  if (!(u.field() == v.field())) {
    throw Error(Errc::kFieldMismatch, u.field().name() + " vs " + v.field().name());
  }
}
}  // namespace

Subspace span_sum(const Subspace& u, const Subspace& v) {
  require_compatible(u, v);
  const Matrix parts[] = {u.basis(), v.basis()};
  return Subspace::span(vstack(parts));
}

Subspace span_sum(std::span<const Subspace> parts) {
  if (parts.empty()) {
    throw Error(Errc::kInvalidArgument, "span_sum of no subspaces");
  }
  std::vector<Matrix> bases;
  for (const auto& p : parts) {
    require_compatible(parts.front(), p);
    bases.push_back(p.basis());
  }
  return Subspace::span(vstack(bases));
}

Subspace span_intersect(const Subspace& u, const Subspace& v) {
  require_compatible(u, v);
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(u.field(), u.ambient_dim());
  // (c, d) with c*U + d*V = 0 gives c*U in U and in V.
  const Matrix parts[] = {u.basis(), v.basis()};
  const Matrix kernel = left_kernel(vstack(parts));
  const Matrix coeffs = kernel.block(0, 0, kernel.rows(), u.dim());
  return Subspace::span(coeffs * u.basis());
}

bool is_invariant(const Subspace& s, const Matrix& a) {
  return s.image(a) == s;
}

Matrix stack_bases(std::span<const Subspace> spaces) {
  std::vector<Matrix> bases;
  bases.reserve(spaces.size());
  for (const auto& s : spaces) bases.push_back(s.basis());
  return vstack(bases);
}

Matrix assemble_from_eigen(std::span<const Subspace> eigenspaces,
                           std::span<const std::uint32_t> eigenvalues) {
  if (eigenspaces.empty() || eigenspaces.size() != eigenvalues.size()) {
    throw Error(Errc::kConstruction, "need one eigenvalue per eigenspace");
  }
  const Field& f = eigenspaces.front().field();
  std::set<std::uint32_t> seen;
  for (auto lam : eigenvalues) {
    if (lam == 0 || !f.contains(lam)) {
      throw Error(Errc::kConstruction, "eigenvalues must be nonzero field elements");
    }
    if (!seen.insert(lam).second) {
      throw Error(Errc::kConstruction,
                  "repeated eigenvalue " + std::to_string(lam));
    }
  }
  const Matrix v = stack_bases(eigenspaces);
  if (!v.square() || rank(v) != v.rows()) {
    throw Error(Errc::kConstruction, "eigenspaces do not form a direct sum of F^l");
  }
  Vector diag;
  diag.reserve(v.rows());
  for (std::size_t u = 0; u < eigenspaces.size(); ++u) {
    diag.insert(diag.end(), eigenspaces[u].dim(), eigenvalues[u]);
  }
  return invert(v) * Matrix::diagonal(f, diag) * v;
}

Subspace left_eigenspace(const Matrix& a, std::uint32_t lambda) {
  if (!a.square()) {
    throw Error(Errc::kDimensionMismatch, "eigenspace of non-square " + shape(a));
  }
  const Matrix shifted = a - Matrix::identity(a.field(), a.rows()).scaled(lambda);
  return Subspace::span(left_kernel(shifted));
}

}  // namespace msr
