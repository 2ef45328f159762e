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

#include "msr/tradeoff.hpp"

#include <cmath>

#include "msr/error.hpp"

namespace msr {

std::vector<TradeoffRow> tradeoff_table(std::size_t k, std::size_t max_r) {
  if (k == 0) throw Error(Errc::kInvalidArgument, "k must be positive");
  if (max_r < 2) throw Error(Errc::kInvalidArgument, "max r must be at least 2");
  std::vector<TradeoffRow> rows;
  for (std::size_t r = 2; r <= max_r; ++r) {
    const double exponent = static_cast<double>(k) / static_cast<double>(r + 1);
    rows.push_back({r, std::pow(static_cast<double>(r), exponent), static_cast<double>(r)});
  }
  return rows;
}

}  // namespace msr
