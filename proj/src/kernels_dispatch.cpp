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

#include <atomic>
#include <cstdlib>
#include <string>

#include "msr/error.hpp"
#include "msr/kernels.hpp"

namespace msr::kernels {

namespace {

Isa best_isa() noexcept {
#if defined(MSR_HAVE_AVX2)
  if (isa_supported(Isa::kAvx2)) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("MSR_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Isa::kScalar;
    if (v == "avx2" && isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  }
  return best_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(MSR_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error(Errc::kUnsupported,
                std::string("kernel ISA not available: ") + isa_name(isa));
  }
  current().store(isa, std::memory_order_relaxed);
}

void mul_add(Isa isa, const Field& field, std::uint32_t coef,
             std::span<const std::uint8_t> src, std::span<std::uint8_t> dst) {
  if (src.size() != dst.size() || src.size() % field.element_width() != 0) {
    throw Error(Errc::kDimensionMismatch, "region sizes differ");
  }
  if (!isa_supported(isa)) {
    throw Error(Errc::kUnsupported,
                std::string("kernel ISA not available: ") + isa_name(isa));
  }
  const std::size_t count = src.size() / field.element_width();
  switch (isa) {
#if defined(MSR_HAVE_AVX2)
    case Isa::kAvx2:
      avx2::mul_add(field, coef, src.data(), dst.data(), count);
      return;
#endif
    default:
      scalar::mul_add(field, coef, src.data(), dst.data(), count);
      return;
  }
}

void mul_add(const Field& field, std::uint32_t coef,
             std::span<const std::uint8_t> src, std::span<std::uint8_t> dst) {
  mul_add(active_isa(), field, coef, src, dst);
}

}  // namespace msr::kernels
