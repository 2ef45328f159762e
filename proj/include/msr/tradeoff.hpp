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
#include <vector>

namespace msr {

// Column length of the two regimes for k systematic nodes and r parities:
// r^(k/(r+1)) for the high-rate constructions and r for the low-rate ones.
struct TradeoffRow {
  std::size_t r = 0;
  double l_highrate = 0;
  double l_lowrate = 0;
};

std::vector<TradeoffRow> tradeoff_table(std::size_t k, std::size_t max_r);

}  // namespace msr
