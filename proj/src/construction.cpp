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

#include "msr/construction.hpp"

#include <random>
#include <set>
#include <string>

#include "msr/error.hpp"
#include "msr/verify.hpp"

namespace msr {

namespace {

std::size_t checked_power(std::size_t r, std::size_t m) {
  std::size_t l = 1;
  for (std::size_t i = 0; i < m; ++i) {
    l *= r;
    if (l > kMaxColumnLength) {
      throw Error(Errc::kInvalidArgument,
                  "column length r^m exceeds " + std::to_string(kMaxColumnLength));
    }
  }
  return l;
}

void require_params(std::size_t r, std::size_t m) {
  if (r < 2) throw Error(Errc::kInvalidArgument, "need r >= 2 parities");
  if (m < 1) throw Error(Errc::kInvalidArgument, "need m >= 1");
  checked_power(r, m);
}

// Deterministic per (seed, field) stream so that escalating to a new field
// does not depend on how many draws the previous field consumed.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t q) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), q};
  return std::mt19937_64(seq);
}

std::uint32_t random_nonzero(std::mt19937_64& rng, const Field& f) {
  return 1 + static_cast<std::uint32_t>(rng() % (f.order() - 1));
}

struct NodeSpec {
  NodeProvenance provenance;
  Subspace repair;
};

CodeSpec assemble_code(Family family, std::size_t r, std::size_t m,
                       std::size_t l, const Field& field,
                       std::vector<NodeSpec> nodes) {
  CodeSpec code;
  code.family = family;
  code.r = r;
  code.m = m;
  code.l = l;
  code.k = nodes.size();
  code.n = code.k + r;
  code.field = field;
  code.encoding.assign(r, {});
  code.repairing.assign(code.k, std::vector<std::optional<Subspace>>(code.n));
  for (std::size_t i = 0; i < code.k; ++i) {
    std::vector<Subspace> spaces;
    std::vector<std::uint32_t> values;
    for (const auto& e : nodes[i].provenance.eigenspaces) {
      spaces.push_back(e.space);
      values.push_back(e.eigenvalue);
    }
    const Matrix a = assemble_from_eigen(spaces, values);
    Matrix power = Matrix::identity(field, l);
    for (std::size_t s = 0; s < r; ++s) {
      code.encoding[s].push_back(power);
      power = power * a;
    }
    for (std::size_t j = 0; j < code.n; ++j) {
      if (j != i) code.repairing[i][j] = nodes[i].repair;
    }
    code.provenance.push_back(std::move(nodes[i].provenance));
  }
  code.validate();
  return code;
}

void require_subspace_property(const CodeSpec& code) {
  const auto res = check_subspace_property(code);
  if (!res.ok) {
    throw Error(Errc::kSubspaceProperty,
                "node " + std::to_string(res.witness->node) + ": " +
                    res.witness->reason);
  }
}

std::string witness_text(const MdsResult& res) {
  std::string s = "singular block rows {";
  for (auto v : res.witness->parity_rows) s += " " + std::to_string(v);
  s += " } cols {";
  for (auto v : res.witness->systematic_cols) s += " " + std::to_string(v);
  return s + " }";
}

}  // namespace

std::vector<std::size_t> digit_expand(std::size_t a, std::size_t r, std::size_t m) {
  if (r < 2) throw Error(Errc::kInvalidArgument, "radix must be >= 2");
  const std::size_t l = checked_power(r, m);
  if (a >= l) {
    throw Error(Errc::kInvalidArgument,
                std::to_string(a) + " is outside [0, r^m)");
  }
  std::vector<std::size_t> digits(m, 0);
  for (std::size_t pos = m; pos-- > 0;) {
    digits[pos] = a % r;
    a /= r;
  }
  return digits;
}

std::size_t digit_compose(const std::vector<std::size_t>& digits, std::size_t r) {
  std::size_t a = 0;
  for (auto d : digits) {
    if (d >= r) throw Error(Errc::kInvalidArgument, "digit out of range");
    a = a * r + d;
  }
  return a;
}

std::string EigenFamily::label(std::size_t i, std::size_t u) {
  return "P[" + std::to_string(i + 1) + "," + std::to_string(u) + "]";
}

EigenFamily build_eigen_family(std::size_t r, std::size_t m, const Field& field) {
  require_params(r, m);
  EigenFamily fam;
  fam.r = r;
  fam.m = m;
  fam.l = checked_power(r, m);
  fam.p.assign(m, {});
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::vector<std::size_t>> by_digit(r);
    Matrix sums(field, fam.l / r, fam.l);
    std::size_t row = 0;
    for (std::size_t a = 0; a < fam.l; ++a) {
      auto digits = digit_expand(a, r, m);
      by_digit[digits[i]].push_back(a);
      if (digits[i] != 0) continue;
      // One row per class {a with digit i varied}, led by its digit-0 member.
      for (std::size_t v = 0; v < r; ++v) {
        digits[i] = v;
        sums(row, digit_compose(digits, r)) = 1;
      }
      ++row;
    }
    for (std::size_t u = 0; u < r; ++u) {
      fam.p[i].push_back(Subspace::coordinate(field, fam.l, by_digit[u]));
    }
    fam.p[i].push_back(Subspace::span(sums));
  }
  return fam;
}

CodeSpec build_general_with_eigenvalues(
    std::size_t r, std::size_t m, const Field& field,
    const std::vector<std::vector<std::uint32_t>>& eigenvalues) {
  require_params(r, m);
  if (field.order() <= r) {
    throw Error(Errc::kConstruction,
                "field " + field.name() + " has fewer than r nonzero elements");
  }
  const EigenFamily fam = build_eigen_family(r, m, field);
  const std::size_t k = (r + 1) * m;
  if (eigenvalues.size() != k) {
    throw Error(Errc::kInvalidArgument, "need eigenvalues for every node");
  }
  std::vector<NodeSpec> nodes;
  for (std::size_t node = 0; node < k; ++node) {
    const std::size_t u = node / m;
    const std::size_t i = node % m;
    if (eigenvalues[node].size() != r) {
      throw Error(Errc::kInvalidArgument,
                  "node " + std::to_string(node) + " needs r eigenvalues");
    }
    NodeSpec spec;
    spec.repair = fam.at(i, u);
    spec.provenance.repair_label = EigenFamily::label(i, u);
    std::size_t v = 0;
    for (std::size_t up = 0; up <= r; ++up) {
      if (up == u) continue;
      spec.provenance.eigenspaces.push_back(
          {EigenFamily::label(i, up), eigenvalues[node][v++], fam.at(i, up)});
    }
    nodes.push_back(std::move(spec));
  }
  return assemble_code(Family::kGeneral, r, m, fam.l, field, std::move(nodes));
}

CodeSpec build_general(std::size_t r, std::size_t m, const GeneralOptions& opts) {
  require_params(r, m);
  const std::size_t k = (r + 1) * m;
  std::optional<Field> field = opts.field;
  if (field && field->order() <= r) {
    throw Error(Errc::kConstruction,
                "field " + field->name() + " needs more than r elements");
  }
  std::uint32_t q = field ? field->order() : next_prime(static_cast<std::uint32_t>(r + 1));
  while (true) {
    const Field f = field ? *field : Field::prime(q);
    auto rng = make_rng(opts.seed, f.order());
    for (std::size_t attempt = 1; attempt <= opts.max_tries; ++attempt) {
      std::vector<std::vector<std::uint32_t>> eig(k);
      for (auto& node : eig) {
        std::set<std::uint32_t> used;
        while (node.size() < r) {
          const std::uint32_t v = random_nonzero(rng, f);
          if (used.insert(v).second) node.push_back(v);
        }
      }
      CodeSpec code = build_general_with_eigenvalues(r, m, f, eig);
      if (check_mds(code).ok) {
        require_subspace_property(code);
        code.construction["seed"] = static_cast<std::int64_t>(opts.seed);
        code.construction["tries"] = static_cast<std::int64_t>(attempt);
        return code;
      }
    }
    if (field) {
      throw Error(Errc::kSearchExhausted,
                  "no MDS eigenvalue assignment over " + f.name() + " in " +
                      std::to_string(opts.max_tries) + " tries; try a larger field");
    }
    if (2ull * q > 65521) {
      throw Error(Errc::kSearchExhausted, "no MDS eigenvalue assignment found");
    }
    q = next_prime(2 * q);
  }
}

CodeSpec build_two_parity(std::size_t m, const TwoParityOptions& opts) {
  require_params(2, m);
  const Field field =
      opts.field ? *opts.field : Field::prime(next_prime(static_cast<std::uint32_t>(2 * m + 1)));
  if (field.order() < 2 * m + 1) {
    throw Error(Errc::kConstruction,
                "field " + field.name() + " is smaller than 2m+1");
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> lambdas;
  if (opts.lambdas) {
    lambdas = *opts.lambdas;
  } else {
    for (std::uint32_t i = 1; i <= m; ++i) {
      if (field.kind() == FieldKind::kPrime) {
        lambdas.emplace_back(field.neg(i), i);
      } else {
        lambdas.emplace_back(2 * i, 2 * i - 1);
      }
    }
  }
  if (lambdas.size() != m) {
    throw Error(Errc::kInvalidArgument, "need one eigenvalue pair per digit");
  }
  std::set<std::uint32_t> distinct;
  for (const auto& [l0, l1] : lambdas) {
    if (l0 == 0 || l1 == 0 || !field.contains(l0) || !field.contains(l1)) {
      throw Error(Errc::kConstruction, "eigenvalues must be nonzero field elements");
    }
    distinct.insert(l0);
    distinct.insert(l1);
  }
  if (distinct.size() != 2 * m) {
    throw Error(Errc::kConstruction, "the 2m eigenvalues must be distinct");
  }
  // Assignment table, listed in ascending eigenspace order per node:
  //   A_i      : P[i,1] -> l0, P[i,2] -> l1
  //   A_{m+i}  : P[i,0] -> l1, P[i,2] -> l0
  //   A_{2m+i} : P[i,0] -> l0, P[i,1] -> l1
  std::vector<std::vector<std::uint32_t>> eig(3 * m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto [l0, l1] = lambdas[i];
    eig[i] = {l0, l1};
    eig[m + i] = {l1, l0};
    eig[2 * m + i] = {l0, l1};
  }
  CodeSpec code = build_general_with_eigenvalues(2, m, field, eig);
  code.family = Family::kTwoParity;
  require_subspace_property(code);
  const auto mds = check_mds(code);
  if (!mds.ok) throw Error(Errc::kNotMds, witness_text(mds));
  return code;
}

CodeSpec build_optimal_update_with(std::size_t m, const Field& field,
                                   const OptimalUpdateParams& p) {
  require_params(2, m);
  if (field.characteristic() == 2) {
    throw Error(Errc::kConstruction, "optimal-update code needs odd characteristic");
  }
  for (auto v : {p.x, p.y, p.lambda, p.mu}) {
    if (v == 0 || !field.contains(v)) {
      throw Error(Errc::kConstruction, "x, y, lambda, mu must be nonzero field elements");
    }
  }
  if (field.mul(p.x, p.x) == field.mul(p.y, p.y)) {
    throw Error(Errc::kConstruction, "need x^2 != y^2");
  }
  if (p.lambda == p.mu) throw Error(Errc::kConstruction, "need lambda != mu");
  const std::size_t k = 2 * m;
  std::vector<std::uint32_t> mult = p.multipliers;
  if (mult.empty()) mult.assign(k, 1);
  if (mult.size() != k) {
    throw Error(Errc::kInvalidArgument, "need one multiplier per node");
  }
  for (auto c : mult) {
    if (c == 0 || !field.contains(c)) {
      throw Error(Errc::kConstruction, "multipliers must be nonzero field elements");
    }
  }

  const std::size_t l = checked_power(2, m);
  const std::uint32_t xy = field.mul(p.x, p.y);
  std::vector<NodeSpec> nodes(k);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> zero, one;
    Matrix q_rows(field, l / 2, l);
    Matrix o_rows(field, l / 2, l);
    std::size_t row = 0;
    for (std::size_t a = 0; a < l; ++a) {
      auto digits = digit_expand(a, 2, m);
      if (digits[i] == 1) {
        one.push_back(a);
        continue;
      }
      zero.push_back(a);
      digits[i] = 1;
      const std::size_t b = digit_compose(digits, 2);
      q_rows(row, a) = p.y;
      q_rows(row, b) = p.x;
      o_rows(row, a) = field.neg(p.y);
      o_rows(row, b) = p.x;
      ++row;
    }
    const Subspace pi = Subspace::coordinate(field, l, zero);
    const Subspace ri = Subspace::coordinate(field, l, one);
    const Subspace qi = Subspace::span(q_rows);
    const Subspace oi = Subspace::span(o_rows);
    const std::string idx = std::to_string(i + 1);

    NodeSpec& qnode = nodes[i];
    const std::uint32_t cq = mult[i];
    qnode.repair = qi;
    qnode.provenance.repair_label = "Q[" + idx + "]";
    qnode.provenance.eigenspaces = {{"P[" + idx + "]", field.mul(cq, p.lambda), pi},
                                    {"R[" + idx + "]", field.mul(cq, p.mu), ri}};

    NodeSpec& pnode = nodes[m + i];
    const std::uint32_t cp = mult[m + i];
    pnode.repair = pi;
    pnode.provenance.repair_label = "P[" + idx + "]";
    pnode.provenance.eigenspaces = {{"Q[" + idx + "]", field.mul(cp, xy), qi},
                                    {"O[" + idx + "]", field.neg(field.mul(cp, xy)), oi}};
  }
  CodeSpec code = assemble_code(Family::kOptimalUpdate, 2, m, l, field, std::move(nodes));
  code.construction["x"] = p.x;
  code.construction["y"] = p.y;
  code.construction["lambda"] = p.lambda;
  code.construction["mu"] = p.mu;
  for (std::size_t i = 0; i < k; ++i) {
    code.construction["multiplier" + std::to_string(i)] = mult[i];
  }
  return code;
}

CodeSpec build_optimal_update(std::size_t m, const OptimalUpdateOptions& opts) {
  require_params(2, m);
  const std::size_t k = 2 * m;
  if (opts.field && opts.field->characteristic() == 2) {
    throw Error(Errc::kConstruction, "optimal-update code needs odd characteristic");
  }
  auto valid = [](const Field& f, const OptimalUpdateParams& p) {
    for (auto v : {p.x, p.y, p.lambda, p.mu}) {
      if (v == 0 || !f.contains(v)) return false;
    }
    for (auto c : p.multipliers) {
      if (c == 0 || !f.contains(c)) return false;
    }
    return f.mul(p.x, p.x) != f.mul(p.y, p.y) && p.lambda != p.mu;
  };
  constexpr std::uint32_t kLastSearchPrime = 2003;
  std::uint32_t q = opts.field ? opts.field->order() : 3;
  while (true) {
    const Field f = opts.field ? *opts.field : Field::prime(q);
    auto rng = make_rng(opts.seed, f.order());
    for (std::size_t attempt = 1; attempt <= opts.max_tries; ++attempt) {
      OptimalUpdateParams p;
      if (attempt == 1) {
        p.multipliers.assign(k, 1);
      } else {
        p.x = random_nonzero(rng, f);
        p.y = random_nonzero(rng, f);
        p.lambda = random_nonzero(rng, f);
        p.mu = random_nonzero(rng, f);
        for (std::size_t i = 0; i < k; ++i) p.multipliers.push_back(random_nonzero(rng, f));
      }
      if (opts.x) p.x = *opts.x;
      if (opts.y) p.y = *opts.y;
      if (opts.lambda) p.lambda = *opts.lambda;
      if (opts.mu) p.mu = *opts.mu;
      if (opts.multipliers) p.multipliers = *opts.multipliers;
      if (!valid(f, p)) continue;
      CodeSpec code = build_optimal_update_with(m, f, p);
      if (check_mds(code).ok) {
        require_subspace_property(code);
        code.construction["seed"] = static_cast<std::int64_t>(opts.seed);
        code.construction["tries"] = static_cast<std::int64_t>(attempt);
        return code;
      }
    }
    if (opts.field || q >= kLastSearchPrime) {
      throw Error(Errc::kSearchExhausted,
                  "no MDS optimal-update parameters found up to " + f.name());
    }
    q = next_prime(q + 1);
  }
}

}  // namespace msr
