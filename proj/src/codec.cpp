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

#include "msr/codec.hpp"

#include <algorithm>
#include <string>

#include "msr/error.hpp"
#include "msr/kernels.hpp"

namespace msr {

namespace {

Matrix negated(const Matrix& m) { return m.scaled(m.field().neg(1)); }

void check_column(const CodeSpec& code, const Vector& col, std::size_t node) {
  if (col.size() != code.l) {
    throw Error(Errc::kDimensionMismatch,
                "column " + std::to_string(node) + " has " +
                    std::to_string(col.size()) + " symbols, expected " +
                    std::to_string(code.l));
  }
  for (auto v : col) {
    if (!code.field.contains(v)) {
      throw Error(Errc::kFieldMismatch,
                  "column " + std::to_string(node) + " holds a value outside " +
                      code.field.name());
    }
  }
}

Vector concat(const std::vector<Vector>& parts) {
  Vector out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Vector parity_column(const CodeSpec& code, std::size_t s,
                     const std::vector<const Vector*>& data) {
  Vector out(code.l, 0);
  for (std::size_t j = 0; j < code.k; ++j) {
    const Vector part = code.a(s, j).apply(*data[j]);
    for (std::size_t p = 0; p < code.l; ++p) out[p] = code.field.add(out[p], part[p]);
  }
  return out;
}

// out[row] = sum_c m(row, c) * in[c] over whole planes.
void apply_planes(const Field& field, const Matrix& m,
                  const std::vector<std::span<const std::uint8_t>>& in,
                  const std::vector<std::span<std::uint8_t>>& out) {
  for (std::size_t row = 0; row < m.rows(); ++row) {
    std::fill(out[row].begin(), out[row].end(), std::uint8_t{0});
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const std::uint32_t coef = m(row, c);
      if (coef != 0) kernels::mul_add(field, coef, in[c], out[row]);
    }
  }
}

std::vector<std::span<const std::uint8_t>> planes_of(const Block& block, std::size_t l,
                                                     std::size_t bytes) {
  std::vector<std::span<const std::uint8_t>> out;
  for (std::size_t p = 0; p < l; ++p) out.emplace_back(block.data() + p * bytes, bytes);
  return out;
}

std::vector<std::span<std::uint8_t>> planes_of(Block& block, std::size_t l,
                                               std::size_t bytes) {
  std::vector<std::span<std::uint8_t>> out;
  for (std::size_t p = 0; p < l; ++p) out.emplace_back(block.data() + p * bytes, bytes);
  return out;
}

void check_block(const CodeSpec& code, const Block& block, std::size_t stripes,
                 std::size_t node) {
  if (block.size() != code.l * plane_bytes(code, stripes)) {
    throw Error(Errc::kDimensionMismatch,
                "node " + std::to_string(node) + " block has wrong size");
  }
}

std::size_t single_erasure(const std::vector<std::size_t>& erased) {
  if (erased.size() != 1) {
    throw Error(Errc::kInvalidArgument,
                "repair needs exactly one erased node, found " +
                    std::to_string(erased.size()) + "; use reconstruct");
  }
  return erased.front();
}

RepairTranscript transcript_skeleton(const CodeSpec& code, const RepairPlan& plan,
                                     std::size_t stripes) {
  RepairTranscript t;
  t.erased_node = plan.node;
  t.optimal = plan.optimal;
  t.stripes = stripes;
  t.surviving_symbols = (code.n - 1) * code.l * stripes;
  for (std::size_t h = 0; h < plan.helpers.size(); ++h) {
    NodeTransfer nt;
    nt.node = plan.helpers[h];
    nt.accessed = plan.accessed[h].size() * stripes;
    nt.transmitted = plan.projections[h].rows() * stripes;
    t.helpers.push_back(std::move(nt));
  }
  return t;
}

RepairTranscript run_repair(const CodeSpec& code, StorageArray& array,
                            std::size_t node) {
  const RepairPlan plan = plan_repair(code, node);
  RepairTranscript t = transcript_skeleton(code, plan, 1);
  std::vector<Vector> payloads;
  for (std::size_t h = 0; h < plan.helpers.size(); ++h) {
    const Vector& col = array.column(plan.helpers[h]);
    check_column(code, col, plan.helpers[h]);
    t.helpers[h].payload = plan.projections[h].apply(col);
    payloads.push_back(t.helpers[h].payload);
  }
  t.recovered = plan.decode.apply(concat(payloads));
  array.columns[node] = t.recovered;
  return t;
}

}  // namespace

const Vector& StorageArray::column(std::size_t node) const {
  const auto& c = columns.at(node);
  if (!c) throw Error(Errc::kInvalidArgument, "node " + std::to_string(node) + " is erased");
  return *c;
}

std::vector<std::size_t> StorageArray::erased() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (!columns[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> BlockArray::erased() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i]) out.push_back(i);
  }
  return out;
}

StorageArray encode(const CodeSpec& code, const std::vector<Vector>& data) {
  if (data.size() != code.k) {
    throw Error(Errc::kDimensionMismatch, "need " + std::to_string(code.k) + " data columns");
  }
  std::vector<const Vector*> refs;
  for (std::size_t j = 0; j < code.k; ++j) {
    check_column(code, data[j], j);
    refs.push_back(&data[j]);
  }
  StorageArray out;
  for (const auto& d : data) out.columns.emplace_back(d);
  for (std::size_t s = 0; s < code.r; ++s) out.columns.emplace_back(parity_column(code, s, refs));
  return out;
}

std::size_t RepairTranscript::total_transmitted() const noexcept {
  std::size_t sum = 0;
  for (const auto& h : helpers) sum += h.transmitted;
  return sum;
}

std::size_t RepairTranscript::total_accessed() const noexcept {
  std::size_t sum = 0;
  for (const auto& h : helpers) sum += h.accessed;
  return sum;
}

Rational RepairTranscript::bandwidth_fraction() const {
  return {static_cast<std::int64_t>(total_transmitted()),
          static_cast<std::int64_t>(surviving_symbols)};
}

Rational RepairTranscript::access_fraction() const {
  return {static_cast<std::int64_t>(total_accessed()),
          static_cast<std::int64_t>(surviving_symbols)};
}

RepairPlan plan_repair(const CodeSpec& code, std::size_t node) {
  if (node >= code.n) throw Error(Errc::kInvalidArgument, "node index out of range");
  RepairPlan plan;
  plan.node = node;

  if (!code.is_systematic(node)) {
    const std::size_t s = node - code.k;
    plan.optimal = false;
    std::vector<Matrix> blocks;
    for (std::size_t j = 0; j < code.k; ++j) {
      plan.helpers.push_back(j);
      plan.projections.push_back(Matrix::identity(code.field, code.l));
      std::vector<std::size_t> all(code.l);
      for (std::size_t c = 0; c < code.l; ++c) all[c] = c;
      plan.accessed.push_back(std::move(all));
      blocks.push_back(code.a(s, j));
    }
    plan.decode = hstack(blocks);
    return plan;
  }

  const std::size_t i = node;
  std::vector<Matrix> rows;
  for (std::size_t t = 0; t < code.r; ++t) {
    rows.push_back(code.s(i, code.k + t).basis() * code.a(t, i));
  }
  const Matrix g = vstack(rows);
  if (!g.square() || !is_invertible(g)) {
    throw Error(Errc::kSubspaceProperty,
                "node " + std::to_string(i) + ": parity projections do not span F^l");
  }
  const Matrix g_inv = invert(g);

  std::vector<std::size_t> offsets;  // first row of each parity block in g
  std::size_t off = 0;
  for (const auto& w : rows) {
    offsets.push_back(off);
    off += w.rows();
  }

  std::vector<Matrix> decode_blocks;
  for (std::size_t j = 0; j < code.n; ++j) {
    if (j == i) continue;
    const Subspace& sub = code.s(i, j);
    plan.helpers.push_back(j);
    plan.projections.push_back(sub.basis());
    plan.accessed.push_back(nonzero_columns(sub.basis()));
    if (code.is_systematic(j)) {
      std::vector<Matrix> coords;
      for (std::size_t t = 0; t < code.r; ++t) {
        const Matrix w = code.s(i, code.k + t).basis() * code.a(t, j);
        try {
          coords.push_back(sub.coordinates_of(w));
        } catch (const Error&) {
          throw Error(Errc::kSubspaceProperty,
                      "node " + std::to_string(i) + ": helper " + std::to_string(j) +
                          " interference is not aligned with its repairing subspace");
        }
      }
      decode_blocks.push_back(negated(g_inv * vstack(coords)));
    } else {
      const std::size_t t = j - code.k;
      decode_blocks.push_back(g_inv.block(0, offsets[t], code.l, rows[t].rows()));
    }
  }
  plan.decode = hstack(decode_blocks);
  return plan;
}

RepairTranscript repair_systematic(const CodeSpec& code, StorageArray& array) {
  if (array.size() != code.n) throw Error(Errc::kDimensionMismatch, "array has wrong node count");
  const std::size_t node = single_erasure(array.erased());
  if (!code.is_systematic(node)) {
    throw Error(Errc::kUnsupported, "optimal repair covers systematic nodes only");
  }
  return run_repair(code, array, node);
}

RepairTranscript repair(const CodeSpec& code, StorageArray& array) {
  if (array.size() != code.n) throw Error(Errc::kDimensionMismatch, "array has wrong node count");
  return run_repair(code, array, single_erasure(array.erased()));
}

ReconstructPlan plan_reconstruct(const CodeSpec& code,
                                 const std::vector<std::size_t>& erased) {
  ReconstructPlan plan;
  plan.erased = erased;
  std::sort(plan.erased.begin(), plan.erased.end());
  plan.erased.erase(std::unique(plan.erased.begin(), plan.erased.end()), plan.erased.end());
  for (auto e : plan.erased) {
    if (e >= code.n) throw Error(Errc::kInvalidArgument, "node index out of range");
  }
  if (plan.erased.size() > code.r) {
    throw Error(Errc::kUnrecoverable,
                std::to_string(plan.erased.size()) + " erasures exceed r = " +
                    std::to_string(code.r));
  }
  auto is_erased = [&](std::size_t v) {
    return std::binary_search(plan.erased.begin(), plan.erased.end(), v);
  };
  std::vector<std::size_t> parities;
  for (std::size_t j = 0; j < code.n; ++j) {
    if (code.is_systematic(j)) {
      (is_erased(j) ? plan.lost_systematic : plan.sources).push_back(j);
    } else if (!is_erased(j)) {
      parities.push_back(j - code.k);
    }
  }
  const std::size_t d = plan.lost_systematic.size();
  if (d == 0) return plan;
  parities.resize(d);
  for (auto t : parities) plan.sources.push_back(code.k + t);

  std::vector<std::vector<Matrix>> h_grid;
  std::vector<std::vector<Matrix>> rhs_grid;
  const Matrix zero(code.field, code.l, code.l);
  const Matrix eye = Matrix::identity(code.field, code.l);
  for (auto t : parities) {
    std::vector<Matrix> h_row;
    for (auto j : plan.lost_systematic) h_row.push_back(code.a(t, j));
    h_grid.push_back(std::move(h_row));
    std::vector<Matrix> rhs_row;
    for (auto src : plan.sources) {
      if (code.is_systematic(src)) {
        rhs_row.push_back(negated(code.a(t, src)));
      } else {
        rhs_row.push_back(src - code.k == t ? eye : zero);
      }
    }
    rhs_grid.push_back(std::move(rhs_row));
  }
  Matrix h_inv;
  try {
    h_inv = invert(block_matrix(h_grid));
  } catch (const Error& e) {
    if (e.code() != Errc::kSingularMatrix) throw;
    throw Error(Errc::kNotMds, "erasure pattern leaves a singular system");
  }
  plan.decode = h_inv * block_matrix(rhs_grid);
  return plan;
}

void reconstruct(const CodeSpec& code, StorageArray& array) {
  if (array.size() != code.n) throw Error(Errc::kDimensionMismatch, "array has wrong node count");
  const ReconstructPlan plan = plan_reconstruct(code, array.erased());
  if (plan.erased.empty()) return;
  if (!plan.lost_systematic.empty()) {
    std::vector<Vector> src;
    for (auto j : plan.sources) {
      check_column(code, array.column(j), j);
      src.push_back(array.column(j));
    }
    const Vector out = plan.decode.apply(concat(src));
    for (std::size_t d = 0; d < plan.lost_systematic.size(); ++d) {
      array.columns[plan.lost_systematic[d]] =
          Vector(out.begin() + d * code.l, out.begin() + (d + 1) * code.l);
    }
  }
  std::vector<const Vector*> data;
  for (std::size_t j = 0; j < code.k; ++j) data.push_back(&array.column(j));
  for (auto e : plan.erased) {
    if (!code.is_systematic(e)) array.columns[e] = parity_column(code, e - code.k, data);
  }
}

std::size_t plane_bytes(const CodeSpec& code, std::size_t stripes) {
  return stripes * code.field.element_width();
}

BlockArray encode_blocks(const CodeSpec& code, const std::vector<Block>& data,
                         std::size_t stripes) {
  if (data.size() != code.k) {
    throw Error(Errc::kDimensionMismatch, "need " + std::to_string(code.k) + " data blocks");
  }
  const std::size_t bytes = plane_bytes(code, stripes);
  std::vector<std::span<const std::uint8_t>> in;
  for (std::size_t j = 0; j < code.k; ++j) {
    check_block(code, data[j], stripes, j);
    auto p = planes_of(data[j], code.l, bytes);
    in.insert(in.end(), p.begin(), p.end());
  }
  BlockArray out;
  out.stripes = stripes;
  for (const auto& d : data) out.nodes.emplace_back(d);
  for (std::size_t s = 0; s < code.r; ++s) {
    std::vector<Matrix> row;
    for (std::size_t j = 0; j < code.k; ++j) row.push_back(code.a(s, j));
    Block parity(code.l * bytes);
    apply_planes(code.field, hstack(row), in, planes_of(parity, code.l, bytes));
    out.nodes.emplace_back(std::move(parity));
  }
  return out;
}

Block repair_block(const CodeSpec& code, const RepairPlan& plan, std::size_t stripes,
                   const PlaneReader& read, RepairTranscript* transcript) {
  const std::size_t bytes = plane_bytes(code, stripes);
  std::vector<Block> payload_store;
  for (std::size_t h = 0; h < plan.helpers.size(); ++h) {
    const auto& cols = plan.accessed[h];
    Block planes(cols.size() * bytes);
    std::vector<std::span<const std::uint8_t>> in;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::span<std::uint8_t> dst(planes.data() + c * bytes, bytes);
      read(plan.helpers[h], cols[c], dst);
      in.emplace_back(dst.data(), bytes);
    }
    const Matrix proj = plan.projections[h].select_columns(cols);
    Block payload(proj.rows() * bytes);
    apply_planes(code.field, proj, in, planes_of(payload, proj.rows(), bytes));
    payload_store.push_back(std::move(payload));
  }
  std::vector<std::span<const std::uint8_t>> in;
  for (std::size_t h = 0; h < payload_store.size(); ++h) {
    auto p = planes_of(payload_store[h], plan.projections[h].rows(), bytes);
    in.insert(in.end(), p.begin(), p.end());
  }
  Block out(code.l * bytes);
  apply_planes(code.field, plan.decode, in, planes_of(out, code.l, bytes));
  if (transcript) *transcript = transcript_skeleton(code, plan, stripes);
  return out;
}

RepairTranscript repair_blocks(const CodeSpec& code, BlockArray& array) {
  if (array.nodes.size() != code.n) throw Error(Errc::kDimensionMismatch, "array has wrong node count");
  const std::size_t node = single_erasure(array.erased());
  const RepairPlan plan = plan_repair(code, node);
  const std::size_t bytes = plane_bytes(code, array.stripes);
  for (auto h : plan.helpers) check_block(code, *array.nodes[h], array.stripes, h);
  RepairTranscript t;
  array.nodes[node] = repair_block(
      code, plan, array.stripes,
      [&](std::size_t n, std::size_t p, std::span<std::uint8_t> out) {
        std::copy_n(array.nodes[n]->data() + p * bytes, bytes, out.data());
      },
      &t);
  return t;
}

void reconstruct_blocks(const CodeSpec& code, BlockArray& array) {
  if (array.nodes.size() != code.n) throw Error(Errc::kDimensionMismatch, "array has wrong node count");
  const ReconstructPlan plan = plan_reconstruct(code, array.erased());
  if (plan.erased.empty()) return;
  const std::size_t bytes = plane_bytes(code, array.stripes);
  if (!plan.lost_systematic.empty()) {
    std::vector<std::span<const std::uint8_t>> in;
    for (auto j : plan.sources) {
      check_block(code, *array.nodes[j], array.stripes, j);
      auto p = planes_of(*array.nodes[j], code.l, bytes);
      in.insert(in.end(), p.begin(), p.end());
    }
    Block out(plan.lost_systematic.size() * code.l * bytes);
    apply_planes(code.field, plan.decode, in,
                 planes_of(out, plan.lost_systematic.size() * code.l, bytes));
    for (std::size_t d = 0; d < plan.lost_systematic.size(); ++d) {
      const auto first = out.begin() + static_cast<std::ptrdiff_t>(d * code.l * bytes);
      array.nodes[plan.lost_systematic[d]] =
          Block(first, first + static_cast<std::ptrdiff_t>(code.l * bytes));
    }
  }
  std::vector<std::span<const std::uint8_t>> in;
  for (std::size_t j = 0; j < code.k; ++j) {
    auto p = planes_of(*array.nodes[j], code.l, bytes);
    in.insert(in.end(), p.begin(), p.end());
  }
  for (auto e : plan.erased) {
    if (code.is_systematic(e)) continue;
    std::vector<Matrix> row;
    for (std::size_t j = 0; j < code.k; ++j) row.push_back(code.a(e - code.k, j));
    Block parity(code.l * bytes);
    apply_planes(code.field, hstack(row), in, planes_of(parity, code.l, bytes));
    array.nodes[e] = std::move(parity);
  }
}

}  // namespace msr
