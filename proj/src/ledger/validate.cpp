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

#include "revchain/ledger/validate.hpp"

#include <cstdint>
#include <vector>

namespace revchain::ledger {

std::string ValidationReport::describe() const
{
  if (valid)
  {
    return "valid";
  }
  return "invalid at index " + std::to_string(bad_index.value_or(0)) + ": " +
         std::string{to_string(reason.value_or(ChainFault::HashMismatch))};
}

namespace {

ValidationReport fail(std::size_t position, ChainFault fault)
{
  return ValidationReport{false, static_cast<std::uint64_t>(position), fault};
}

void require_blocks(Chain const &chain)
{
  if (chain.blocks().empty())
  {
    throw Error{ErrorKind::Structural, "empty block sequence"};
  }
}

}  // namespace

ValidationReport validate_chain_serial(Chain const &chain)
{
  require_blocks(chain);
  auto const &blocks = chain.blocks();

  if (blocks.front() != genesis_block())
  {
    return fail(0, ChainFault::GenesisMismatch);
  }
  for (std::size_t i = 1; i < blocks.size(); ++i)
  {
    if (auto const fault = check_successor(blocks[i - 1], blocks[i], chain.difficulty()))
    {
      return fail(i, *fault);
    }
  }
  return {};
}

ValidationReport validate_chain(Chain const &chain)
{
  require_blocks(chain);
  auto const &blocks = chain.blocks();

  if (blocks.front() != genesis_block())
  {
    return fail(0, ChainFault::GenesisMismatch);
  }

  auto const n = static_cast<std::int64_t>(blocks.size());
  // char rather than bool: vector<bool> is not safe for concurrent writes.
  std::vector<char> payload_ok(blocks.size(), 1);
  std::vector<char> hash_ok(blocks.size(), 1);

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 1; i < n; ++i)
  {
    auto const &b = blocks[static_cast<std::size_t>(i)];
    payload_ok[static_cast<std::size_t>(i)] = Hash256::of(b.payload) == b.payload_digest;
    hash_ok[static_cast<std::size_t>(i)]    = compute_hash(b) == b.hash;
  }

  for (std::size_t i = 1; i < blocks.size(); ++i)
  {
    if (auto const fault = check_successor(blocks[i - 1], blocks[i], chain.difficulty(),
                                           payload_ok[i] != 0, hash_ok[i] != 0))
    {
      return fail(i, *fault);
    }
  }
  return {};
}

}  // namespace revchain::ledger
