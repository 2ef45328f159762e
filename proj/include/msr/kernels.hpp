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

// Bulk region arithmetic: dst[t] += c * src[t] over a run of stored field
// elements. This is the inner loop of stripe encoding, repair and
// reconstruction. Each variant must produce bit-identical output to the
// scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>

#include "msr/gf.hpp"

namespace msr::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;

// Variant used by mul_add(). Defaults to the best supported ISA; the
// MSR_KERNELS environment variable ("scalar" or "avx2") overrides it.
Isa active_isa() noexcept;
// Throws Error(kUnsupported) if the CPU or build lacks the ISA.
void set_active_isa(Isa isa);

// dst[t] = dst[t] + coef * src[t]. Buffers hold little-endian elements of
// field.element_width() bytes and must have equal size.
void mul_add(const Field& field, std::uint32_t coef,
             std::span<const std::uint8_t> src, std::span<std::uint8_t> dst);
void mul_add(Isa isa, const Field& field, std::uint32_t coef,
             std::span<const std::uint8_t> src, std::span<std::uint8_t> dst);

namespace scalar {
void mul_add(const Field& field, std::uint32_t coef, const std::uint8_t* src,
             std::uint8_t* dst, std::size_t count);
}  // namespace scalar

#if defined(MSR_HAVE_AVX2)
namespace avx2 {
// True when the field has a vectorized path (binary w <= 8, prime q < 2^15);
// other fields fall through to scalar.
bool accelerates(const Field& field) noexcept;
void mul_add(const Field& field, std::uint32_t coef, const std::uint8_t* src,
             std::uint8_t* dst, std::size_t count);
}  // namespace avx2
#endif

}  // namespace msr::kernels
