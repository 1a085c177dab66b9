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

// Serial vs OpenMP chain validation.
//
//   bench_validate [blocks] [reps]
//
// Prints CSV: blocks,threads,serial_ms,parallel_ms,speedup

#include "revchain/ledger/chain.hpp"
#include "revchain/ledger/mining.hpp"
#include "revchain/ledger/validate.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

using namespace revchain::ledger;

namespace {

Chain grow(std::size_t blocks)
{
  Salt salt{};
  salt.fill(7);
  Chain chain{Difficulty{0}, salt};
  for (std::size_t i = 1; i < blocks; ++i)
  {
    // Payloads of a few hundred bytes, roughly the size of a workflow event.
    std::string payload(256, 'a' + static_cast<char>(i % 26));
    payload += std::to_string(i);
    chain.append(mine_block(chain.tip(), to_bytes(payload), chain.difficulty(),
                            static_cast<std::int64_t>(i))
                     .block);
  }
  return chain;
}

template <typename F>
double best_of(int reps, F &&f)
{
  double best = 1e300;
  for (int r = 0; r < reps; ++r)
  {
    auto const t0 = std::chrono::steady_clock::now();
    f();
    auto const t1 = std::chrono::steady_clock::now();
    best          = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char **argv)
{
  std::size_t const blocks = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  int const         reps   = argc > 2 ? std::atoi(argv[2]) : 5;

  Chain const chain = grow(std::max<std::size_t>(blocks, 1));

  bool         agree    = true;
  double const serial   = best_of(reps, [&] { agree &= validate_chain_serial(chain).valid; });
  double const parallel = best_of(reps, [&] { agree &= validate_chain(chain).valid; });
  if (!agree)
  {
    std::fprintf(stderr, "validation disagreed on a valid chain\n");
    return 1;
  }

  std::printf("blocks,threads,serial_ms,parallel_ms,speedup\n");
  std::printf("%zu,%d,%.3f,%.3f,%.2f\n", chain.size(), omp_get_max_threads(), serial, parallel,
              serial / std::max(parallel, 1e-9));
  return 0;
}
