//------------------------------------------------------------------------------
//
//   Copyright 2026 The revchain Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include "revchain/ledger/block.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace revchain::ledger {

/// Aggregates for one difficulty prefix.
struct MiningStats
{
  Difficulty    prefix;
  std::uint64_t trials         = 0;
  double        mean_time_ms   = 0.0;
  double        median_time_ms = 0.0;
  double        mean_tries     = 0.0;
};

struct BenchOptions
{
  int           prefix_min     = 0;
  int           prefix_max     = 0;
  std::uint64_t trials         = 1;
  double        budget_seconds = 120.0;
};

/// Hash evaluations per second on one worker, measured over a short burst.
double measure_hash_rate();

/// Expected wall time of a bench run: sum over prefixes of trials * 16^p / rate.
double projected_seconds(BenchOptions const &options, double hashes_per_second);

/// Mines `trials` blocks with distinct payloads for each prefix in range, all
/// on the calling thread. Throws Error{Parameter} on a bad range and
/// BudgetExceededError when the projection exceeds the budget.
std::vector<MiningStats> bench_mine(
    BenchOptions const &options,
    std::function<void(MiningStats const &)> const &on_prefix_done = {});

}  // namespace revchain::ledger
