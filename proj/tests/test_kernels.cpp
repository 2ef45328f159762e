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

#include <vector>

#include "doctest.h"
#include "msr/error.hpp"
#include "msr/kernels.hpp"
#include "support.hpp"

using namespace msr;
using msr::testing::Gen;

namespace {

std::vector<std::uint8_t> random_buffer(Gen& gen, const Field& f, std::size_t count) {
  const std::size_t w = f.element_width();
  std::vector<std::uint8_t> out(count * w);
  for (std::size_t i = 0; i < count; ++i) {
    const auto v = gen.element(f);
    for (std::size_t b = 0; b < w; ++b) out[i * w + b] = static_cast<std::uint8_t>(v >> (8 * b));
  }
  return out;
}

std::vector<std::uint8_t> reference(const Field& f, std::uint32_t c,
                                    const std::vector<std::uint8_t>& src,
                                    std::vector<std::uint8_t> dst) {
  const std::size_t w = f.element_width();
  for (std::size_t i = 0; i < src.size() / w; ++i) {
    std::uint32_t s = 0, d = 0;
    for (std::size_t b = 0; b < w; ++b) {
      s |= std::uint32_t{src[i * w + b]} << (8 * b);
      d |= std::uint32_t{dst[i * w + b]} << (8 * b);
    }
    d = msr::testing::ref_add(f, d, msr::testing::ref_mul(f, c, s));
    for (std::size_t b = 0; b < w; ++b) dst[i * w + b] = static_cast<std::uint8_t>(d >> (8 * b));
  }
  return dst;
}

std::vector<kernels::Isa> available() {
  std::vector<kernels::Isa> out{kernels::Isa::kScalar};
  if (kernels::isa_supported(kernels::Isa::kAvx2)) out.push_back(kernels::Isa::kAvx2);
  return out;
}

}  // namespace

TEST_CASE("every kernel variant matches the reference multiply-add") {
  Gen gen(21);
  const std::vector<Field> fields = {
      Field::prime(2),     Field::prime(3),      Field::prime(5),    Field::prime(97),
      Field::prime(251),   Field::prime(257),    Field::prime(7919), Field::prime(32749),
      Field::prime(65521), Field::binary(1),     Field::binary(2),   Field::binary(4),
      Field::binary(8),    Field::binary(10),    Field::binary(16)};
  const std::size_t lengths[] = {0, 1, 7, 15, 16, 17, 31, 32, 33, 63, 100, 257, 1000};
  for (const Field& f : fields) {
    for (auto len : lengths) {
      for (int trial = 0; trial < 4; ++trial) {
        const std::uint32_t c = trial == 0 ? 0 : trial == 1 ? 1 : gen.element(f);
        const auto src = random_buffer(gen, f, len);
        const auto dst = random_buffer(gen, f, len);
        const auto want = reference(f, c, src, dst);
        for (auto isa : available()) {
          auto got = dst;
          kernels::mul_add(isa, f, c, src, got);
          INFO(f.name(), " len ", len, " isa ", kernels::isa_name(isa));
          CHECK(got == want);
        }
      }
    }
  }
}

TEST_CASE("kernels work on unaligned spans") {
  Gen gen(22);
  const Field f = Field::prime(5);
  auto src = random_buffer(gen, f, 200);
  auto dst = random_buffer(gen, f, 200);
  for (std::size_t off = 0; off < 5; ++off) {
    std::span<const std::uint8_t> s(src.data() + off, 150);
    for (auto isa : available()) {
      auto d = dst;
      kernels::mul_add(isa, f, 3, s, std::span<std::uint8_t>(d.data() + off, 150));
      std::vector<std::uint8_t> src_part(s.begin(), s.end());
      std::vector<std::uint8_t> dst_part(dst.begin() + off, dst.begin() + off + 150);
      const auto want = reference(f, 3, src_part, dst_part);
      CHECK(std::equal(want.begin(), want.end(), d.begin() + off));
    }
  }
}

TEST_CASE("kernel dispatch") {
  CHECK(kernels::isa_supported(kernels::Isa::kScalar));
  const auto before = kernels::active_isa();
  kernels::set_active_isa(kernels::Isa::kScalar);
  CHECK(kernels::active_isa() == kernels::Isa::kScalar);
  if (!kernels::isa_supported(kernels::Isa::kAvx2)) {
    CHECK_THROWS_AS(kernels::set_active_isa(kernels::Isa::kAvx2), Error);
  }
  kernels::set_active_isa(before);
  std::vector<std::uint8_t> a(4), b(5);
  CHECK_THROWS_AS(kernels::mul_add(Field::prime(5), 1, a, b), Error);
}
