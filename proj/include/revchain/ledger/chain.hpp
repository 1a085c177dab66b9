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

#include "revchain/error.hpp"
#include "revchain/ledger/block.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace revchain::ledger {

using Salt = std::array<std::uint8_t, 32>;

Salt random_salt();

/// Why a block does not belong where it sits.
enum class ChainFault
{
  GenesisMismatch,
  DuplicateIndex,
  IndexGap,
  LinkageBreak,
  TimestampRegression,
  HashMismatch,
  InsufficientDifficulty,
};

std::string_view to_string(ChainFault fault);

class BlockRejected : public Error
{
public:
  explicit BlockRejected(ChainFault reason);

  ChainFault reason() const noexcept
  {
    return reason_;
  }

private:
  ChainFault reason_;
};

/// Checks every rule that ties `next` to its predecessor. The two flags let a
/// caller supply hash checks it has already computed (see validate_chain);
/// when omitted they are recomputed here.
std::optional<ChainFault> check_successor(Block const &prev, Block const &next,
                                          Difficulty difficulty,
                                          std::optional<bool> payload_ok = std::nullopt,
                                          std::optional<bool> hash_ok    = std::nullopt);

/// Append-only sequence of blocks rooted at the canonical genesis. Appends go
/// through `append`, which enforces linkage and difficulty; `from_blocks`
/// bypasses all checks so that loaders and tests can build arbitrary
/// sequences and hand them to validate_chain.
class Chain
{
public:
  Chain(Difficulty difficulty, Salt const &salt);

  static Chain from_blocks(Difficulty difficulty, Salt const &salt, std::vector<Block> blocks);

  std::vector<Block> const &blocks() const noexcept
  {
    return blocks_;
  }
  Block const &tip() const;
  std::size_t  size() const noexcept
  {
    return blocks_.size();
  }
  Difficulty difficulty() const noexcept
  {
    return difficulty_;
  }
  Salt const &salt() const noexcept
  {
    return salt_;
  }

  /// Throws BlockRejected when `block` does not extend the tip.
  void append(Block block);

  /// Drops every block after `length` (used when a fork wins and for tests).
  void truncate(std::size_t length);

  bool operator==(Chain const &) const = default;

private:
  Chain() = default;

  Difficulty         difficulty_;
  Salt               salt_{};
  std::vector<Block> blocks_;
};

}  // namespace revchain::ledger
