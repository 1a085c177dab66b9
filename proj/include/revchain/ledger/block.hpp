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

#include "revchain/ledger/crypto.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace revchain::ledger {

/// A SHA-256 digest in its 64-character lowercase hex form.
class Hash256
{
public:
  Hash256();  // all zeros

  /// Throws Error{Input} unless `hex` is exactly 64 characters of [0-9a-f].
  static Hash256 parse(std::string_view hex);
  static Hash256 from_digest(Digest const &digest);
  static Hash256 of(std::span<std::uint8_t const> data);

  std::string const &str() const noexcept
  {
    return hex_;
  }

  /// Number of leading '0' characters.
  std::size_t leading_zeros() const noexcept;

  auto operator<=>(Hash256 const &) const = default;

private:
  explicit Hash256(std::string hex);

  std::string hex_;
};

/// Required number of leading '0' hex characters on a block hash.
class Difficulty
{
public:
  static constexpr int kMax = 16;

  constexpr Difficulty() = default;

  /// Throws Error{Parameter} outside [0, kMax].
  explicit Difficulty(int prefix);

  constexpr int prefix() const noexcept
  {
    return prefix_;
  }

  bool satisfied_by(Hash256 const &hash) const noexcept
  {
    return hash.leading_zeros() >= static_cast<std::size_t>(prefix_);
  }

  /// True when the first `prefix` nibbles of the raw digest are zero.
  bool satisfied_by(Digest const &digest) const noexcept;

  auto operator<=>(Difficulty const &) const = default;

private:
  int prefix_ = 0;
};

struct Block
{
  std::uint64_t index = 0;
  std::int64_t  timestamp = 0;  // ms since epoch
  Hash256       prev_hash;
  Hash256       payload_digest;
  Bytes         payload;
  std::uint64_t nonce = 0;
  Hash256       hash;

  bool operator==(Block const &) const = default;
};

/// SHA-256 over the preimage `{index}|{timestamp}|{prev_hash}|{payload_digest}|{nonce}`.
Hash256 compute_hash(std::uint64_t index, std::int64_t timestamp, Hash256 const &prev_hash,
                     Hash256 const &payload_digest, std::uint64_t nonce);

/// Same as above for callers holding unvalidated hex; throws Error{Input}.
Hash256 compute_hash(std::uint64_t index, std::int64_t timestamp, std::string_view prev_hash,
                     std::string_view payload_digest, std::uint64_t nonce);

inline Hash256 compute_hash(Block const &block)
{
  return compute_hash(block.index, block.timestamp, block.prev_hash, block.payload_digest,
                      block.nonce);
}

std::string hash_preimage(std::uint64_t index, std::int64_t timestamp, Hash256 const &prev_hash,
                          Hash256 const &payload_digest, std::uint64_t nonce);

/// Shared root of every chain: index 0, timestamp 0, zero prev_hash, empty
/// payload, nonce 0. Exempt from difficulty.
Block const &genesis_block();

}  // namespace revchain::ledger
