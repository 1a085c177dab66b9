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

#include "revchain/ledger/chain_file.hpp"

#include "revchain/ledger/validate.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <unistd.h>

namespace revchain::ledger {

using nlohmann::ordered_json;

namespace {

constexpr std::array<char const *, 7> kBlockKeys = {
    "index", "timestamp", "prev_hash", "payload_digest", "payload", "nonce", "hash"};

void require_keys(ordered_json const &j, std::span<char const *const> keys)
{
  if (!j.is_object())
  {
    throw Error{ErrorKind::Input, "expected a JSON object"};
  }
  if (j.size() != keys.size())
  {
    throw Error{ErrorKind::Input, "unexpected number of fields"};
  }
  for (auto const *key : keys)
  {
    if (!j.contains(key))
    {
      throw Error{ErrorKind::Input, std::string{"missing field '"} + key + "'"};
    }
  }
}

std::uint64_t get_unsigned(ordered_json const &j, char const *key)
{
  auto const &v = j.at(key);
  if (!v.is_number_unsigned())
  {
    throw Error{ErrorKind::Input, std::string{"field '"} + key + "' must be a non-negative integer"};
  }
  return v.get<std::uint64_t>();
}

std::int64_t get_integer(ordered_json const &j, char const *key)
{
  auto const &v = j.at(key);
  if (!v.is_number_integer())
  {
    throw Error{ErrorKind::Input, std::string{"field '"} + key + "' must be an integer"};
  }
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
  {
    throw Error{ErrorKind::Input, std::string{"field '"} + key + "' out of range"};
  }
  return v.get<std::int64_t>();
}

std::string const &get_string(ordered_json const &j, char const *key)
{
  auto const &v = j.at(key);
  if (!v.is_string())
  {
    throw Error{ErrorKind::Input, std::string{"field '"} + key + "' must be a string"};
  }
  return v.get_ref<std::string const &>();
}

Salt decode_salt(std::string const &text)
{
  Bytes const raw = base64_decode(text);
  if (raw.size() != Salt{}.size())
  {
    throw Error{ErrorKind::Input, "chain_salt must decode to 32 bytes"};
  }
  Salt salt{};
  std::copy(raw.begin(), raw.end(), salt.begin());
  return salt;
}

std::string header_check(int difficulty, std::string const &salt_b64)
{
  return Hash256::from_digest(sha256(std::to_string(difficulty) + "|" + salt_b64)).str();
}

ordered_json header_to_json(Chain const &chain)
{
  std::string const salt_b64 = base64_encode(chain.salt());
  ordered_json      j;
  j["difficulty"]   = chain.difficulty().prefix();
  j["chain_salt"]   = salt_b64;
  j["header_check"] = header_check(chain.difficulty().prefix(), salt_b64);
  return j;
}

}  // namespace

ordered_json block_to_json(Block const &block)
{
  ordered_json j;
  j["index"]          = block.index;
  j["timestamp"]      = block.timestamp;
  j["prev_hash"]      = block.prev_hash.str();
  j["payload_digest"] = block.payload_digest.str();
  j["payload"]        = base64_encode(block.payload);
  j["nonce"]          = block.nonce;
  j["hash"]           = block.hash.str();
  return j;
}

Block block_from_json(ordered_json const &j)
{
  require_keys(j, kBlockKeys);
  Block b;
  b.index          = get_unsigned(j, "index");
  b.timestamp      = get_integer(j, "timestamp");
  b.prev_hash      = Hash256::parse(get_string(j, "prev_hash"));
  b.payload_digest = Hash256::parse(get_string(j, "payload_digest"));
  b.payload        = base64_decode(get_string(j, "payload"));
  b.nonce          = get_unsigned(j, "nonce");
  b.hash           = Hash256::parse(get_string(j, "hash"));
  return b;
}

ordered_json chain_to_json(Chain const &chain)
{
  ordered_json j;
  j["difficulty"] = chain.difficulty().prefix();
  j["chain_salt"] = base64_encode(chain.salt());
  auto &blocks    = j["blocks"] = ordered_json::array();
  for (auto const &b : chain.blocks())
  {
    blocks.push_back(block_to_json(b));
  }
  return j;
}

Chain chain_from_json(ordered_json const &j)
{
  static constexpr std::array<char const *, 3> keys = {"difficulty", "chain_salt", "blocks"};
  require_keys(j, keys);
  auto const difficulty = Difficulty{static_cast<int>(get_integer(j, "difficulty"))};
  auto const salt       = decode_salt(get_string(j, "chain_salt"));
  auto const &arr       = j.at("blocks");
  if (!arr.is_array())
  {
    throw Error{ErrorKind::Input, "field 'blocks' must be an array"};
  }
  std::vector<Block> blocks;
  blocks.reserve(arr.size());
  for (auto const &b : arr)
  {
    blocks.push_back(block_from_json(b));
  }
  return Chain::from_blocks(difficulty, salt, std::move(blocks));
}

std::string serialize_chain(Chain const &chain)
{
  std::string out = header_to_json(chain).dump();
  out += '\n';
  for (auto const &b : chain.blocks())
  {
    out += block_to_json(b).dump();
    out += '\n';
  }
  return out;
}

Chain parse_chain(std::string_view text)
{
  std::vector<std::string_view> lines;
  std::size_t                   pos = 0;
  while (pos < text.size())
  {
    auto const nl = text.find('\n', pos);
    if (nl == std::string_view::npos)
    {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty())
  {
    throw LoadError{1, "missing header line"};
  }
  bool const terminated = !text.empty() && text.back() == '\n';

  auto parse_line = [&](std::size_t i) {
    try
    {
      return ordered_json::parse(lines[i]);
    }
    catch (ordered_json::exception const &e)
    {
      throw LoadError{i + 1, "malformed JSON"};
    }
  };

  auto const header = parse_line(0);
  int        difficulty_prefix = 0;
  Salt       salt{};
  try
  {
    static constexpr std::array<char const *, 3> keys = {"difficulty", "chain_salt",
                                                         "header_check"};
    require_keys(header, keys);
    difficulty_prefix        = static_cast<int>(get_integer(header, "difficulty"));
    auto const &salt_b64     = get_string(header, "chain_salt");
    salt                     = decode_salt(salt_b64);
    if (get_string(header, "header_check") != header_check(difficulty_prefix, salt_b64))
    {
      throw Error{ErrorKind::Input, "header_check mismatch"};
    }
  }
  catch (LoadError const &)
  {
    throw;
  }
  catch (Error const &e)
  {
    throw LoadError{1, e.detail()};
  }

  Difficulty difficulty;
  try
  {
    difficulty = Difficulty{difficulty_prefix};
  }
  catch (Error const &e)
  {
    throw LoadError{1, e.detail()};
  }

  Chain const skeleton = Chain::from_blocks(difficulty, salt, {});
  if (header_to_json(skeleton).dump() != lines[0])
  {
    throw LoadError{1, "non-canonical header"};
  }

  std::vector<Block> blocks;
  blocks.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i)
  {
    auto const j = parse_line(i);
    try
    {
      blocks.push_back(block_from_json(j));
    }
    catch (Error const &e)
    {
      throw LoadError{i + 1, e.detail()};
    }
    if (block_to_json(blocks.back()).dump() != lines[i])
    {
      throw LoadError{i + 1, "non-canonical record"};
    }
  }
  if (!terminated)
  {
    throw LoadError{lines.size(), "truncated record (missing line terminator)"};
  }
  if (blocks.empty())
  {
    throw LoadError{lines.size(), "no blocks after header"};
  }
  return Chain::from_blocks(difficulty, salt, std::move(blocks));
}

Chain load_chain_text(std::string_view text)
{
  Chain chain  = parse_chain(text);
  auto  report = validate_chain(chain);
  if (!report.valid)
  {
    throw IntegrityError{*report.bad_index, std::string{to_string(*report.reason)}};
  }
  return chain;
}

void write_file_atomic(std::filesystem::path const &path, std::string_view contents)
{
  auto tmp = path;
  tmp += ".tmp";
  {
    int const fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0)
    {
      throw Error{ErrorKind::Io, "cannot open " + tmp.string()};
    }
    std::size_t written = 0;
    while (written < contents.size())
    {
      auto const n = ::write(fd, contents.data() + written, contents.size() - written);
      if (n < 0)
      {
        ::close(fd);
        throw Error{ErrorKind::Io, "write failed for " + tmp.string()};
      }
      written += static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    throw Error{ErrorKind::Io, "rename to " + path.string() + " failed: " + ec.message()};
  }
}

void save_chain(Chain const &chain, std::filesystem::path const &path)
{
  auto const report = validate_chain(chain);
  if (!report.valid)
  {
    throw IntegrityError{*report.bad_index, std::string{to_string(*report.reason)}};
  }
  write_file_atomic(path, serialize_chain(chain));
}

Chain load_chain(std::filesystem::path const &path)
{
  std::ifstream in{path, std::ios::binary};
  if (!in)
  {
    throw Error{ErrorKind::Io, "cannot open " + path.string()};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_chain_text(buf.str());
}

}  // namespace revchain::ledger
