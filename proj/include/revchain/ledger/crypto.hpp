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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace revchain::ledger {

using Bytes  = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<std::uint8_t const> data);
Digest sha256(std::string_view text);

std::string to_hex(std::span<std::uint8_t const> data);

/// Strict base64 (RFC 4648, padded). decode_base64 rejects any input that does
/// not re-encode to itself, so every value has exactly one textual form.
std::string base64_encode(std::span<std::uint8_t const> data);
Bytes       base64_decode(std::string_view text);

/// Cryptographically random bytes from the system CSPRNG.
void fill_random(std::span<std::uint8_t> out);

inline Bytes to_bytes(std::string_view text)
{
  return Bytes(text.begin(), text.end());
}

}  // namespace revchain::ledger
