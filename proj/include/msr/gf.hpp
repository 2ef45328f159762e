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
#include <memory>
#include <string>

namespace msr {

enum class FieldKind { kPrime, kBinary };

class FieldElement;

// Finite field F_q (q prime) or F_{2^w} (1 <= w <= 16).
//
// Elements are carried as canonical integers in [0, order): residues for
// prime fields, polynomial coefficient bitmasks for binary fields (so in
// F_4 = F_2[t]/(t^2+t+1) the element t is 2 and t+1 is 3). Raw-integer
// arithmetic assumes operands are already canonical; FieldElement is the
// checked wrapper.
//
// A Field is an immutable handle to shared lookup tables and is cheap to copy.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  // GF(2). Exists so that containers of matrices can be default-constructed.
  Field();

  static Field prime(std::uint32_t q);
  static Field binary(unsigned w);
  static Field binary(unsigned w, std::uint32_t poly);

  // Primitive polynomial used when none is given, as a bitmask including the
  // leading term (w = 2 gives 0b111 = t^2 + t + 1).
  static std::uint32_t default_polynomial(unsigned w);

  FieldKind kind() const noexcept { return kind_; }
  std::uint32_t order() const noexcept { return order_; }
  std::uint32_t characteristic() const noexcept {
    return kind_ == FieldKind::kPrime ? order_ : 2;
  }
  unsigned degree() const noexcept { return degree_; }
  std::uint32_t polynomial() const noexcept { return poly_; }

  // Bytes per stored element: 1 up to order 256, otherwise 2.
  std::size_t element_width() const noexcept { return order_ <= 256 ? 1 : 2; }

  bool contains(std::uint32_t v) const noexcept { return v < order_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    if (kind_ == FieldKind::kBinary) return a ^ b;
    std::uint32_t s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept {
    if (kind_ == FieldKind::kBinary || a == 0) return a;
    return order_ - a;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return add(a, neg(b));
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    if (kind_ == FieldKind::kPrime) {
      return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b %
                                        order_);
    }
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  // Throws Error(kDivisionByZero) on zero.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
    return mul(a, inv(b));
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

  // Checked element construction; throws if v is not canonical.
  FieldElement element(std::uint32_t v) const;

  // "F_5" or "F_2^8[0x11d]".
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.kind_ == b.kind_ && a.order_ == b.order_ && a.poly_ == b.poly_;
  }

  struct Tables;

 private:
  Field(FieldKind kind, std::uint32_t order, unsigned degree,
        std::uint32_t poly, std::shared_ptr<const Tables> tables);

  FieldKind kind_;
  std::uint32_t order_;
  unsigned degree_;
  std::uint32_t poly_;
  std::shared_ptr<const Tables> tables_;
  // Cached raw pointers into tables_ for the hot multiply path.
  const std::uint16_t* log_ = nullptr;
  const std::uint16_t* exp_ = nullptr;
};

// Element tagged with its field. Mixing fields throws Error(kFieldMismatch).
class FieldElement {
 public:
  FieldElement(Field field, std::uint32_t value);

  const Field& field() const noexcept { return field_; }
  std::uint32_t value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement inv() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  Field field_;
  std::uint32_t value_;
};

bool is_prime(std::uint64_t n) noexcept;
// Smallest prime >= n.
std::uint32_t next_prime(std::uint32_t n);
// True if the GF(2) polynomial given as a bitmask is irreducible.
bool is_irreducible_gf2(std::uint32_t poly) noexcept;
// Degree of a GF(2) polynomial bitmask (-1 for zero).
int gf2_degree(std::uint32_t poly) noexcept;

}  // namespace msr
