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
#include <limits>

namespace revchain::ledger {

struct MinedBlock
{
  Block         block;
  std::uint64_t tries = 0;  // hash evaluations performed, >= 1
};

struct MiningLimits
{
  /// Give up after this many hash evaluations. The default never binds before
  /// the 2^64 nonce space itself runs out.
  std::uint64_t max_tries = std::numeric_limits<std::uint64_t>::max();
};

/// Single-worker nonce search on top of `tip`: nonce starts at 0 and steps by
/// one until the hash meets `difficulty`. Throws Error{Input} when `now`
/// precedes the tip, Error{Mining} when the nonce space (or `limits`) runs out.
MinedBlock mine_block(Block const &tip, Bytes payload, Difficulty difficulty, std::int64_t now,
                      MiningLimits limits = {});

}  // namespace revchain::ledger
