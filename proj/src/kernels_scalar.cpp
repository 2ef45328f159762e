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

#include <cstring>

#include "msr/kernels.hpp"

namespace msr::kernels::scalar {

void mul_add(const Field& field, std::uint32_t coef, const std::uint8_t* src,
             std::uint8_t* dst, std::size_t count) {
  if (coef == 0 || count == 0) return;
  if (field.element_width() == 1) {
    for (std::size_t t = 0; t < count; ++t) {
      dst[t] = static_cast<std::uint8_t>(
          field.add(dst[t], field.mul(coef, src[t])));
    }
    return;
  }
  for (std::size_t t = 0; t < count; ++t) {
    const std::uint32_t s = src[2 * t] | (std::uint32_t{src[2 * t + 1]} << 8);
    const std::uint32_t d = dst[2 * t] | (std::uint32_t{dst[2 * t + 1]} << 8);
    const std::uint32_t v = field.add(d, field.mul(coef, s));
    dst[2 * t] = static_cast<std::uint8_t>(v & 0xff);
    dst[2 * t + 1] = static_cast<std::uint8_t>(v >> 8);
  }
}

}  // namespace msr::kernels::scalar
