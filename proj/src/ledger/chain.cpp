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

#include "revchain/ledger/chain.hpp"

namespace revchain::ledger {

Salt random_salt()
{
  Salt salt{};
  fill_random(salt);
  return salt;
}

std::string_view to_string(ChainFault fault)
{
  switch (fault)
  {
  case ChainFault::GenesisMismatch:
    return "genesis mismatch";
  case ChainFault::DuplicateIndex:
    return "duplicate index";
  case ChainFault::IndexGap:
    return "index gap";
  case ChainFault::LinkageBreak:
    return "linkage break";
  case ChainFault::TimestampRegression:
    return "timestamp regression";
  case ChainFault::HashMismatch:
    return "hash mismatch";
  case ChainFault::InsufficientDifficulty:
    return "insufficient difficulty";
  }
  return "unknown fault";
}

BlockRejected::BlockRejected(ChainFault reason)
  : Error{ErrorKind::Rejected, std::string{to_string(reason)}}
  , reason_{reason}
{}

std::optional<ChainFault> check_successor(Block const &prev, Block const &next,
                                          Difficulty difficulty, std::optional<bool> payload_ok,
                                          std::optional<bool> hash_ok)
{
  if (next.index <= prev.index)
  {
    return ChainFault::DuplicateIndex;
  }
  if (next.index != prev.index + 1)
  {
    return ChainFault::IndexGap;
  }
  if (next.prev_hash != prev.hash)
  {
    return ChainFault::LinkageBreak;
  }
  if (next.timestamp < prev.timestamp)
  {
    return ChainFault::TimestampRegression;
  }
  if (!(payload_ok ? *payload_ok : Hash256::of(next.payload) == next.payload_digest))
  {
    return ChainFault::HashMismatch;
  }
  if (!(hash_ok ? *hash_ok : compute_hash(next) == next.hash))
  {
    return ChainFault::HashMismatch;
  }
  if (!difficulty.satisfied_by(next.hash))
  {
    return ChainFault::InsufficientDifficulty;
  }
  return std::nullopt;
}

Chain::Chain(Difficulty difficulty, Salt const &salt)
  : difficulty_{difficulty}
  , salt_{salt}
  , blocks_{genesis_block()}
{}

Chain Chain::from_blocks(Difficulty difficulty, Salt const &salt, std::vector<Block> blocks)
{
  Chain chain;
  chain.difficulty_ = difficulty;
  chain.salt_       = salt;
  chain.blocks_     = std::move(blocks);
  return chain;
}

Block const &Chain::tip() const
{
  if (blocks_.empty())
  {
    throw Error{ErrorKind::Structural, "chain has no blocks"};
  }
  return blocks_.back();
}

void Chain::append(Block block)
{
  if (auto const fault = check_successor(tip(), block, difficulty_))
  {
    throw BlockRejected{*fault};
  }
  blocks_.push_back(std::move(block));
}

void Chain::truncate(std::size_t length)
{
  if (length == 0)
  {
    throw Error{ErrorKind::Structural, "cannot truncate below genesis"};
  }
  if (length < blocks_.size())
  {
    blocks_.resize(length);
  }
}

}  // namespace revchain::ledger
