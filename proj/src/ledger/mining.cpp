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

#include "revchain/ledger/mining.hpp"

#include "revchain/error.hpp"

#include <charconv>
#include <string>

namespace revchain::ledger {

MinedBlock mine_block(Block const &tip, Bytes payload, Difficulty difficulty, std::int64_t now,
                      MiningLimits limits)
{
  if (now < tip.timestamp)
  {
    throw Error{ErrorKind::Input, "mining time " + std::to_string(now) +
                                      " precedes tip timestamp " + std::to_string(tip.timestamp)};
  }

  Block block;
  block.index          = tip.index + 1;
  block.timestamp      = now;
  block.prev_hash      = tip.hash;
  block.payload_digest = Hash256::of(payload);
  block.payload        = std::move(payload);

  // Everything up to the nonce is fixed; only the trailing digits change.
  std::string preimage =
      hash_preimage(block.index, block.timestamp, block.prev_hash, block.payload_digest, 0);
  preimage.pop_back();
  std::size_t const stem = preimage.size();
  preimage.resize(stem + 20);

  std::uint64_t nonce = 0;
  std::uint64_t tries = 0;
  for (;;)
  {
    auto const [end, ec] = std::to_chars(preimage.data() + stem, preimage.data() + stem + 20, nonce);
    (void)ec;
    std::string_view const text{preimage.data(), static_cast<std::size_t>(end - preimage.data())};
    Digest const digest = sha256(text);
    ++tries;

    if (difficulty.satisfied_by(digest))
    {
      block.nonce = nonce;
      block.hash  = Hash256::from_digest(digest);
      return MinedBlock{std::move(block), tries};
    }
    if (nonce == std::numeric_limits<std::uint64_t>::max() || tries >= limits.max_tries)
    {
      throw Error{ErrorKind::Mining, "nonce space exhausted after " + std::to_string(tries) +
                                         " tries at prefix " +
                                         std::to_string(difficulty.prefix())};
    }
    ++nonce;
  }
}

}  // namespace revchain::ledger
