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

#include "msr/gf.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <mutex>
#include <vector>

#include "msr/error.hpp"

namespace msr {

struct Field::Tables {
  // Prime fields: inverse table. Binary fields: log/exp over a generator,
  // with exp doubled so log[a] + log[b] needs no reduction.
  std::vector<std::uint32_t> inverse;
  std::vector<std::uint16_t> log;
  std::vector<std::uint16_t> exp;
};

namespace {

std::uint32_t gf2_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                         unsigned w) {
  std::uint32_t acc = 0;
  const std::uint32_t top = 1u << w;
  while (b != 0) {
    if (b & 1u) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= poly;
  }
  return acc;
}

// Fields are created repeatedly (JSON loading, field escalation); tables are
// shared per parameter set.
template <class Key, class Build>
std::shared_ptr<const Field::Tables> cached(const Key& key, Build build) {
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const Field::Tables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = build();
  cache.emplace(key, t);
  return t;
}

}  // namespace

struct FieldTableAccess {
  static std::shared_ptr<const Field::Tables> prime(std::uint32_t q) {
    auto t = std::make_shared<Field::Tables>();
    t->inverse.assign(q, 0);
    if (q > 1) t->inverse[1] = 1;
    for (std::uint32_t i = 2; i < q; ++i) {
      // inv(i) = -(q / i) * inv(q mod i)
      std::uint64_t v = static_cast<std::uint64_t>(q / i) * t->inverse[q % i] % q;
      t->inverse[i] = static_cast<std::uint32_t>((q - v) % q);
    }
    return t;
  }

  static std::shared_ptr<const Field::Tables> binary(unsigned w,
                                                     std::uint32_t poly) {
    const std::uint32_t order = 1u << w;
    const std::uint32_t group = order - 1;
    auto t = std::make_shared<Field::Tables>();
    t->log.assign(order, 0);
    t->exp.assign(2 * static_cast<std::size_t>(group) + 1, 0);
    // Find a generator of the multiplicative group; the polynomial need only
    // be irreducible, so t itself may not be primitive.
    for (std::uint32_t g = (order == 2 ? 1 : 2); g < order; ++g) {
      std::uint32_t x = 1;
      std::uint32_t period = 0;
      do {
        x = gf2_mulmod(x, g, poly, w);
        ++period;
      } while (x != 1 && period <= group);
      if (period != group) continue;
      x = 1;
      for (std::uint32_t e = 0; e < group; ++e) {
        t->exp[e] = static_cast<std::uint16_t>(x);
        t->log[x] = static_cast<std::uint16_t>(e);
        x = gf2_mulmod(x, g, poly, w);
      }
      for (std::uint32_t e = group; e < 2 * group + 1; ++e) {
        t->exp[e] = t->exp[e % group];
      }
      return t;
    }
    throw Error(Errc::kConstruction, "no generator found for binary field");
  }
};

Field::Field() : Field(Field::prime(2)) {}

Field::Field(FieldKind kind, std::uint32_t order, unsigned degree,
             std::uint32_t poly, std::shared_ptr<const Tables> tables)
    : kind_(kind),
      order_(order),
      degree_(degree),
      poly_(poly),
      tables_(std::move(tables)) {
  if (kind_ == FieldKind::kBinary) {
    log_ = tables_->log.data();
    exp_ = tables_->exp.data();
  }
}

Field Field::prime(std::uint32_t q) {
  if (q < 2 || q > kMaxOrder || !is_prime(q)) {
    throw Error(Errc::kConstruction,
                "field modulus " + std::to_string(q) +
                    " is not a prime in [2, 65536]");
  }
  auto tables =
      cached(q, [q] { return FieldTableAccess::prime(q); });
  return Field(FieldKind::kPrime, q, 1, q, std::move(tables));
}

Field Field::binary(unsigned w) { return binary(w, default_polynomial(w)); }

Field Field::binary(unsigned w, std::uint32_t poly) {
  if (w < 1 || w > 16) {
    throw Error(Errc::kConstruction,
                "binary field degree must be in [1, 16], got " +
                    std::to_string(w));
  }
  if (gf2_degree(poly) != static_cast<int>(w) || !is_irreducible_gf2(poly)) {
    throw Error(Errc::kConstruction,
                "polynomial " + std::to_string(poly) +
                    " is not irreducible of degree " + std::to_string(w));
  }
  auto key = std::make_pair(w, poly);
  auto tables =
      cached(key, [w, poly] { return FieldTableAccess::binary(w, poly); });
  return Field(FieldKind::kBinary, 1u << w, w, poly, std::move(tables));
}

std::uint32_t Field::default_polynomial(unsigned w) {
  static constexpr std::array<std::uint32_t, 17> kPolys = {
      0,       0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x89,   0x11d,
      0x211,   0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003, 0x1100b};
  if (w < 1 || w > 16) {
    throw Error(Errc::kConstruction,
                "no default polynomial for degree " + std::to_string(w));
  }
  return kPolys[w];
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw Error(Errc::kDivisionByZero, "inverse of zero");
  if (kind_ == FieldKind::kPrime) return tables_->inverse[a];
  const std::uint32_t group = order_ - 1;
  return exp_[(group - log_[a]) % group];
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1;
  std::uint32_t base = a;
  while (e != 0) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldElement Field::element(std::uint32_t v) const {
  return FieldElement(*this, v);
}

std::string Field::name() const {
  if (kind_ == FieldKind::kPrime) return "F_" + std::to_string(order_);
  char buf[32];
  std::snprintf(buf, sizeof buf, "F_2^%u[0x%x]", degree_, poly_);
  return buf;
}

FieldElement::FieldElement(Field field, std::uint32_t value)
    : field_(std::move(field)), value_(value) {
  if (!field_.contains(value_)) {
    throw Error(Errc::kInvalidArgument,
                std::to_string(value_) + " is not an element of " +
                    field_.name());
  }
}

namespace {
void require_same(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) {
    throw Error(Errc::kFieldMismatch,
                a.field().name() + " vs " + b.field().name());
  }
}
}  // namespace

FieldElement FieldElement::inv() const {
  return FieldElement(field_, field_.inv(value_));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.field_, a.field_.add(a.value_, b.value_));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.field_, a.field_.sub(a.value_, b.value_));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.field_, a.field_.mul(a.value_, b.value_));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return FieldElement(a.field_, a.field_.div(a.value_, b.value_));
}

FieldElement FieldElement::operator-() const {
  return FieldElement(field_, field_.neg(value_));
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t next_prime(std::uint32_t n) {
  std::uint64_t c = n < 2 ? 2 : n;
  while (!is_prime(c)) ++c;
  if (c > Field::kMaxOrder) {
    throw Error(Errc::kConstruction, "no supported prime >= " + std::to_string(n));
  }
  return static_cast<std::uint32_t>(c);
}

int gf2_degree(std::uint32_t poly) noexcept {
  int d = -1;
  while (poly != 0) {
    poly >>= 1;
    ++d;
  }
  return d;
}

namespace {
std::uint32_t gf2_mod(std::uint32_t a, std::uint32_t b) {
  const int db = gf2_degree(b);
  for (int da = gf2_degree(a); da >= db; da = gf2_degree(a)) {
    a ^= b << (da - db);
  }
  return a;
}
}  // namespace

bool is_irreducible_gf2(std::uint32_t poly) noexcept {
  const int deg = gf2_degree(poly);
  if (deg < 1) return false;
  // Trial division by every polynomial of degree 1..deg/2.
  for (std::uint32_t d = 2; gf2_degree(d) <= deg / 2; ++d) {
    if (gf2_mod(poly, d) == 0) return false;
  }
  return true;
}

}  // namespace msr
