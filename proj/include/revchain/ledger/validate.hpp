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

#include "revchain/ledger/chain.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace revchain::ledger {

struct ValidationReport
{
  bool                         valid = true;
  std::optional<std::uint64_t> bad_index;  // position in the block sequence
  std::optional<ChainFault>    reason;

  std::string describe() const;
};

/// Full chain validation. Per-block hash recomputation runs as an OpenMP
/// parallel loop; the linkage scan that follows is sequential so the smallest
/// offending index is reported. Throws Error{Structural} on an empty chain.
ValidationReport validate_chain(Chain const &chain);

/// Single-threaded reference used by tests and the validation benchmark.
ValidationReport validate_chain_serial(Chain const &chain);

}  // namespace revchain::ledger
