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

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace revchain::ledger {

// Chain file layout, one JSON object per line, each line terminated by '\n':
//
//   {"difficulty":2,"chain_salt":"<base64>","header_check":"<hex>"}
//   {"index":0,"timestamp":0,"prev_hash":"..","payload_digest":"..","payload":"<base64>","nonce":0,"hash":".."}
//   ...
//
// header_check is SHA-256 over "{difficulty}|{chain_salt}" and pins the header
// against silent edits. Loading is byte-strict: a line is accepted only if it
// re-serializes to exactly the same bytes.

nlohmann::ordered_json block_to_json(Block const &block);

/// Strict inverse of block_to_json; throws Error{Input} on any deviation.
Block block_from_json(nlohmann::ordered_json const &j);

/// Whole chain as one JSON value, used on the wire.
nlohmann::ordered_json chain_to_json(Chain const &chain);
Chain                  chain_from_json(nlohmann::ordered_json const &j);

std::string serialize_chain(Chain const &chain);

/// Parses the line format without validating the chain. Throws LoadError.
Chain parse_chain(std::string_view text);

/// parse_chain followed by validate_chain. Throws LoadError or IntegrityError.
Chain load_chain_text(std::string_view text);

/// Writes to a temporary sibling and renames it over `path`. Refuses to write
/// a chain that fails validation (IntegrityError).
void  save_chain(Chain const &chain, std::filesystem::path const &path);
Chain load_chain(std::filesystem::path const &path);

/// Atomic whole-file replace shared by the state-directory writers.
void write_file_atomic(std::filesystem::path const &path, std::string_view contents);

}  // namespace revchain::ledger
