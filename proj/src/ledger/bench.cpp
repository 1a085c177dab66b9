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

#include "revchain/ledger/bench.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/mining.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace revchain::ledger {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> values)
{
  std::sort(values.begin(), values.end());
  auto const n = values.size();
  if (n == 0)
  {
    return 0.0;
  }
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double measure_hash_rate()
{
  constexpr int kSamples = 20000;
  Hash256 const prev    = genesis_block().hash;
  Hash256 const digest  = genesis_block().payload_digest;
  auto const    start   = Clock::now();
  std::uint8_t  sink    = 0;
  for (int i = 0; i < kSamples; ++i)
  {
    sink ^= sha256(hash_preimage(1, 1, prev, digest, static_cast<std::uint64_t>(i)))[0];
  }
  double const secs = std::chrono::duration<double>(Clock::now() - start).count();
  (void)sink;
  return kSamples / std::max(secs, 1e-9);
}

double projected_seconds(BenchOptions const &options, double hashes_per_second)
{
  double total = 0.0;
  for (int p = options.prefix_min; p <= options.prefix_max; ++p)
  {
    total += static_cast<double>(options.trials) * std::pow(16.0, p) / hashes_per_second;
  }
  return total;
}

std::vector<MiningStats> bench_mine(BenchOptions const &options,
                                    std::function<void(MiningStats const &)> const &on_prefix_done)
{
  if (options.prefix_min < 0 || options.prefix_min > options.prefix_max ||
      options.prefix_max > Difficulty::kMax)
  {
    throw Error{ErrorKind::Parameter, "prefix range must satisfy 0 <= min <= max <= " +
                                          std::to_string(Difficulty::kMax)};
  }
  if (options.trials < 1)
  {
    throw Error{ErrorKind::Parameter, "trials must be at least 1"};
  }

  double const estimate = projected_seconds(options, measure_hash_rate());
  if (estimate > options.budget_seconds)
  {
    throw BudgetExceededError{estimate, options.budget_seconds};
  }

  std::vector<MiningStats> out;
  Block const             &tip = genesis_block();
  for (int p = options.prefix_min; p <= options.prefix_max; ++p)
  {
    Difficulty const    difficulty{p};
    std::vector<double> times;
    times.reserve(options.trials);
    double total_tries = 0.0;

    for (std::uint64_t t = 0; t < options.trials; ++t)
    {
      std::string const payload = "bench:" + std::to_string(p) + ":" + std::to_string(t);
      auto const        start   = Clock::now();
      auto const        mined   = mine_block(tip, to_bytes(payload), difficulty, 1);
      auto const        elapsed = Clock::now() - start;
      times.push_back(std::chrono::duration<double, std::milli>(elapsed).count());
      total_tries += static_cast<double>(mined.tries);
    }

    MiningStats stats;
    stats.prefix = difficulty;
    stats.trials = options.trials;
    double sum   = 0.0;
    for (double t : times)
    {
      sum += t;
    }
    stats.mean_time_ms   = sum / static_cast<double>(options.trials);
    stats.median_time_ms = median(times);
    stats.mean_tries     = total_tries / static_cast<double>(options.trials);
    out.push_back(stats);
    if (on_prefix_done)
    {
      on_prefix_done(stats);
    }
  }
  return out;
}

}  // namespace revchain::ledger
