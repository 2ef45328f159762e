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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <array>

#include "msr/kernels.hpp"

namespace msr::kernels::avx2 {

namespace {

constexpr std::uint32_t kShoupLimit = 1u << 15;

// GF(2^w), w <= 8: split the source byte into nibbles and look both up with
// pshufb; the product is the xor of the two partial products by linearity.
void mul_add_binary8(const Field& field, std::uint32_t coef,
                     const std::uint8_t* src, std::uint8_t* dst,
                     std::size_t count) {
  alignas(32) std::array<std::uint8_t, 32> lo{};
  alignas(32) std::array<std::uint8_t, 32> hi{};
  for (std::uint32_t x = 0; x < 16; ++x) {
    const std::uint32_t l = x < field.order() ? field.mul(coef, x) : 0;
    const std::uint32_t h = (x << 4) < field.order() ? field.mul(coef, x << 4) : 0;
    lo[x] = lo[x + 16] = static_cast<std::uint8_t>(l);
    hi[x] = hi[x + 16] = static_cast<std::uint8_t>(h);
  }
  const __m256i tlo = _mm256_load_si256(reinterpret_cast<const __m256i*>(lo.data()));
  const __m256i thi = _mm256_load_si256(reinterpret_cast<const __m256i*>(hi.data()));
  const __m256i mask = _mm256_set1_epi8(0x0f);

  std::size_t t = 0;
  for (; t + 32 <= count; t += 32) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + t));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + t));
    const __m256i pl = _mm256_shuffle_epi8(tlo, _mm256_and_si256(s, mask));
    const __m256i ph = _mm256_shuffle_epi8(
        thi, _mm256_and_si256(_mm256_srli_epi16(s, 4), mask));
    const __m256i r = _mm256_xor_si256(d, _mm256_xor_si256(pl, ph));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + t), r);
  }
  if (t < count) scalar::mul_add(field, coef, src + t, dst + t, count - t);
}

// Prime field with q < 2^15 in 16-bit lanes. Shoup multiplication: with
// c' = floor(c * 2^16 / q), c*s - floor(s*c' / 2^16)*q lies in [0, 2q), so a
// single conditional subtraction gives the residue. min_epu16(x, x - q)
// performs that subtraction because x - q wraps above x when x < q.
struct ShoupConsts {
  __m256i c;
  __m256i c_shoup;
  __m256i q;
};

inline __m256i reduce_once(__m256i x, __m256i q) {
  return _mm256_min_epu16(x, _mm256_sub_epi16(x, q));
}

inline __m256i mul_add_lanes(__m256i s, __m256i d, const ShoupConsts& k) {
  const __m256i quot = _mm256_mulhi_epu16(s, k.c_shoup);
  __m256i prod = _mm256_sub_epi16(_mm256_mullo_epi16(s, k.c),
                                  _mm256_mullo_epi16(quot, k.q));
  prod = reduce_once(prod, k.q);
  return reduce_once(_mm256_add_epi16(prod, d), k.q);
}

ShoupConsts shoup_consts(std::uint32_t coef, std::uint32_t q) {
  const auto c_shoup =
      static_cast<std::uint16_t>((static_cast<std::uint32_t>(coef) << 16) / q);
  return {_mm256_set1_epi16(static_cast<short>(coef)),
          _mm256_set1_epi16(static_cast<short>(c_shoup)),
          _mm256_set1_epi16(static_cast<short>(q))};
}

void mul_add_prime8(const Field& field, std::uint32_t coef,
                    const std::uint8_t* src, std::uint8_t* dst,
                    std::size_t count) {
  const ShoupConsts k = shoup_consts(coef, field.order());
  std::size_t t = 0;
  for (; t + 32 <= count; t += 32) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + t));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + t));
    const __m256i s0 = _mm256_cvtepu8_epi16(_mm256_castsi256_si128(s));
    const __m256i s1 = _mm256_cvtepu8_epi16(_mm256_extracti128_si256(s, 1));
    const __m256i d0 = _mm256_cvtepu8_epi16(_mm256_castsi256_si128(d));
    const __m256i d1 = _mm256_cvtepu8_epi16(_mm256_extracti128_si256(d, 1));
    const __m256i r0 = mul_add_lanes(s0, d0, k);
    const __m256i r1 = mul_add_lanes(s1, d1, k);
    // packus interleaves 128-bit lanes; restore element order.
    const __m256i packed =
        _mm256_permute4x64_epi64(_mm256_packus_epi16(r0, r1), 0xd8);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + t), packed);
  }
  if (t < count) scalar::mul_add(field, coef, src + t, dst + t, count - t);
}

void mul_add_prime16(const Field& field, std::uint32_t coef,
                     const std::uint8_t* src, std::uint8_t* dst,
                     std::size_t count) {
  const ShoupConsts k = shoup_consts(coef, field.order());
  std::size_t t = 0;
  for (; t + 16 <= count; t += 16) {
    const __m256i s =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + 2 * t));
    const __m256i d =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + 2 * t));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + 2 * t),
                        mul_add_lanes(s, d, k));
  }
  if (t < count) {
    scalar::mul_add(field, coef, src + 2 * t, dst + 2 * t, count - t);
  }
}

}  // namespace

bool accelerates(const Field& field) noexcept {
  if (field.kind() == FieldKind::kBinary) return field.degree() <= 8;
  return field.order() < kShoupLimit;
}

void mul_add(const Field& field, std::uint32_t coef, const std::uint8_t* src,
             std::uint8_t* dst, std::size_t count) {
  if (coef == 0 || count == 0) return;
  if (!accelerates(field)) {
    scalar::mul_add(field, coef, src, dst, count);
    return;
  }
  if (field.kind() == FieldKind::kBinary) {
    mul_add_binary8(field, coef, src, dst, count);
  } else if (field.element_width() == 1) {
    mul_add_prime8(field, coef, src, dst, count);
  } else {
    mul_add_prime16(field, coef, src, dst, count);
  }
}

}  // namespace msr::kernels::avx2
