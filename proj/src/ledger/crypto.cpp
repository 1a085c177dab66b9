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

#include "revchain/ledger/crypto.hpp"

#include "revchain/error.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

namespace revchain::ledger {

Digest sha256(std::span<std::uint8_t const> data)
{
  Digest out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Digest sha256(std::string_view text)
{
  Digest out{};
  SHA256(reinterpret_cast<unsigned char const *>(text.data()), text.size(), out.data());
  return out;
}

std::string to_hex(std::span<std::uint8_t const> data)
{
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(data.size() * 2, '\0');
  for (std::size_t i = 0; i < data.size(); ++i)
  {
    out[2 * i]     = kDigits[data[i] >> 4];
    out[2 * i + 1] = kDigits[data[i] & 0x0f];
  }
  return out;
}

std::string base64_encode(std::span<std::uint8_t const> data)
{
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  if (!data.empty())
  {
    int const n = EVP_EncodeBlock(reinterpret_cast<unsigned char *>(out.data()), data.data(),
                                  static_cast<int>(data.size()));
    out.resize(static_cast<std::size_t>(n));
  }
  return out;
}

Bytes base64_decode(std::string_view text)
{
  if (text.empty())
  {
    return {};
  }
  if (text.size() % 4 != 0)
  {
    throw Error{ErrorKind::Input, "base64 length not a multiple of 4"};
  }
  for (char c : text)
  {
    bool const ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '+' || c == '/' || c == '=';
    if (!ok)
    {
      throw Error{ErrorKind::Input, "invalid base64 character"};
    }
  }

  Bytes out(3 * text.size() / 4);
  int const n = EVP_DecodeBlock(out.data(), reinterpret_cast<unsigned char const *>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0)
  {
    throw Error{ErrorKind::Input, "malformed base64"};
  }

  // EVP_DecodeBlock keeps the zero bytes produced by padding.
  std::size_t padding = 0;
  if (text.back() == '=')
  {
    ++padding;
    if (text[text.size() - 2] == '=')
    {
      ++padding;
    }
  }
  out.resize(static_cast<std::size_t>(n) - padding);

  if (base64_encode(out) != text)
  {
    throw Error{ErrorKind::Input, "non-canonical base64"};
  }
  return out;
}

void fill_random(std::span<std::uint8_t> out)
{
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
  {
    throw Error{ErrorKind::Io, "system random source unavailable"};
  }
}

}  // namespace revchain::ledger
