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

#include "revchain/ledger/block.hpp"

#include "revchain/error.hpp"

#include <algorithm>

namespace revchain::ledger {

Hash256::Hash256()
  : hex_(64, '0')
{}

Hash256::Hash256(std::string hex)
  : hex_{std::move(hex)}
{}

Hash256 Hash256::parse(std::string_view hex)
{
  if (hex.size() != 64)
  {
    throw Error{ErrorKind::Input, "hash must be 64 hex characters, got " +
                                      std::to_string(hex.size())};
  }
  bool const ok = std::all_of(hex.begin(), hex.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  });
  if (!ok)
  {
    throw Error{ErrorKind::Input, "hash contains characters outside [0-9a-f]"};
  }
  return Hash256{std::string{hex}};
}

Hash256 Hash256::from_digest(Digest const &digest)
{
  return Hash256{to_hex(digest)};
}

Hash256 Hash256::of(std::span<std::uint8_t const> data)
{
  return from_digest(sha256(data));
}

std::size_t Hash256::leading_zeros() const noexcept
{
  auto const it = std::find_if(hex_.begin(), hex_.end(), [](char c) { return c != '0'; });
  return static_cast<std::size_t>(it - hex_.begin());
}

Difficulty::Difficulty(int prefix)
  : prefix_{prefix}
{
  if (prefix < 0 || prefix > kMax)
  {
    throw Error{ErrorKind::Parameter,
                "difficulty prefix must be in [0, " + std::to_string(kMax) + "], got " +
                    std::to_string(prefix)};
  }
}

bool Difficulty::satisfied_by(Digest const &digest) const noexcept
{
  int const full_bytes = prefix_ / 2;
  for (int i = 0; i < full_bytes; ++i)
  {
    if (digest[static_cast<std::size_t>(i)] != 0)
    {
      return false;
    }
  }
  if (prefix_ % 2 == 1)
  {
    return (digest[static_cast<std::size_t>(full_bytes)] & 0xf0) == 0;
  }
  return true;
}

std::string hash_preimage(std::uint64_t index, std::int64_t timestamp, Hash256 const &prev_hash,
                          Hash256 const &payload_digest, std::uint64_t nonce)
{
  std::string out;
  out.reserve(180);
  out += std::to_string(index);
  out += '|';
  out += std::to_string(timestamp);
  out += '|';
  out += prev_hash.str();
  out += '|';
  out += payload_digest.str();
  out += '|';
  out += std::to_string(nonce);
  return out;
}

Hash256 compute_hash(std::uint64_t index, std::int64_t timestamp, Hash256 const &prev_hash,
                     Hash256 const &payload_digest, std::uint64_t nonce)
{
  return Hash256::from_digest(
      sha256(hash_preimage(index, timestamp, prev_hash, payload_digest, nonce)));
}

Hash256 compute_hash(std::uint64_t index, std::int64_t timestamp, std::string_view prev_hash,
                     std::string_view payload_digest, std::uint64_t nonce)
{
  return compute_hash(index, timestamp, Hash256::parse(prev_hash), Hash256::parse(payload_digest),
                      nonce);
}

Block const &genesis_block()
{
  static Block const genesis = [] {
    Block b;
    b.payload_digest = Hash256::of(Bytes{});
    b.hash           = compute_hash(b);
    return b;
  }();
  return genesis;
}

}  // namespace revchain::ledger
