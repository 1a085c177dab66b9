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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace revchain::node {

inline constexpr int kProtocolVersion = 1;

enum class MessageKind
{
  Announce,
  RequestChain,
  ChainResponse,
  Ack,
  Reject,
};

std::string_view           to_string(MessageKind kind);
std::optional<MessageKind> parse_message_kind(std::string_view text);

struct TipClaim
{
  std::uint64_t    length = 0;
  ledger::Hash256  tip_hash;
};

/// True when chain `a` beats chain `b`: longer wins, equal length goes to the
/// lexicographically smaller tip hash.
bool better_claim(TipClaim const &a, TipClaim const &b);
TipClaim claim_of(ledger::Chain const &chain);

struct Message
{
  MessageKind            kind = MessageKind::Ack;
  std::string            sender;
  nlohmann::ordered_json body = nlohmann::ordered_json::object();

  static Message announce(std::string sender, ledger::Block const &block);
  static Message request_chain(std::string sender);
  static Message chain_response(std::string sender, ledger::Chain const &chain);
  static Message ack(std::string sender);
  /// `tip` lets the receiver tell whether it should come and fetch our chain.
  static Message reject(std::string sender, std::string reason,
                        std::optional<TipClaim> tip = std::nullopt);

  // Body accessors; each throws Error{Protocol} when the body is malformed.
  ledger::Block           block() const;
  ledger::Chain           chain() const;
  std::string             reason() const;
  std::optional<TipClaim> tip() const;
};

/// {version, kind, sender, body} as compact JSON.
std::string encode_message(Message const &msg);
/// Throws Error{Protocol} on malformed JSON, a missing field or a version
/// other than kProtocolVersion.
Message decode_message(std::string_view text);

}  // namespace revchain::node
