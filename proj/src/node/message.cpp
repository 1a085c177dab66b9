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

#include "revchain/node/message.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/chain_file.hpp"

#include <array>

namespace revchain::node {

using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<MessageKind, std::string_view>, 5> kKinds = {{
    {MessageKind::Announce, "Announce"},
    {MessageKind::RequestChain, "RequestChain"},
    {MessageKind::ChainResponse, "ChainResponse"},
    {MessageKind::Ack, "Ack"},
    {MessageKind::Reject, "Reject"},
}};

[[noreturn]] void malformed(std::string const &what)
{
  throw Error{ErrorKind::Protocol, "malformed message: " + what};
}

}  // namespace

std::string_view to_string(MessageKind kind)
{
  for (auto const &[k, name] : kKinds)
  {
    if (k == kind)
    {
      return name;
    }
  }
  return "Unknown";
}

std::optional<MessageKind> parse_message_kind(std::string_view text)
{
  for (auto const &[k, name] : kKinds)
  {
    if (name == text)
    {
      return k;
    }
  }
  return std::nullopt;
}

bool better_claim(TipClaim const &a, TipClaim const &b)
{
  if (a.length != b.length)
  {
    return a.length > b.length;
  }
  return a.tip_hash < b.tip_hash;
}

TipClaim claim_of(ledger::Chain const &chain)
{
  return TipClaim{chain.size(), chain.tip().hash};
}

Message Message::announce(std::string sender, ledger::Block const &block)
{
  return Message{MessageKind::Announce, std::move(sender),
                 ordered_json{{"block", ledger::block_to_json(block)}}};
}

Message Message::request_chain(std::string sender)
{
  return Message{MessageKind::RequestChain, std::move(sender), ordered_json::object()};
}

Message Message::chain_response(std::string sender, ledger::Chain const &chain)
{
  return Message{MessageKind::ChainResponse, std::move(sender),
                 ordered_json{{"chain", ledger::chain_to_json(chain)}}};
}

Message Message::ack(std::string sender)
{
  return Message{MessageKind::Ack, std::move(sender), ordered_json::object()};
}

Message Message::reject(std::string sender, std::string reason, std::optional<TipClaim> tip)
{
  ordered_json body = {{"reason", std::move(reason)}};
  if (tip)
  {
    body["tip_length"] = tip->length;
    body["tip_hash"]   = tip->tip_hash.str();
  }
  return Message{MessageKind::Reject, std::move(sender), std::move(body)};
}

ledger::Block Message::block() const
{
  if (kind != MessageKind::Announce || !body.contains("block"))
  {
    malformed("announce without a block");
  }
  try
  {
    return ledger::block_from_json(body.at("block"));
  }
  catch (Error const &e)
  {
    malformed(e.detail());
  }
}

ledger::Chain Message::chain() const
{
  if (kind != MessageKind::ChainResponse || !body.contains("chain"))
  {
    malformed("chain response without a chain");
  }
  try
  {
    return ledger::chain_from_json(body.at("chain"));
  }
  catch (Error const &e)
  {
    malformed(e.detail());
  }
}

std::string Message::reason() const
{
  auto const it = body.find("reason");
  return it != body.end() && it->is_string() ? it->get<std::string>() : std::string{};
}

std::optional<TipClaim> Message::tip() const
{
  auto const len  = body.find("tip_length");
  auto const hash = body.find("tip_hash");
  if (len == body.end() || hash == body.end())
  {
    return std::nullopt;
  }
  if (!len->is_number_unsigned() || !hash->is_string())
  {
    malformed("bad tip claim");
  }
  try
  {
    return TipClaim{len->get<std::uint64_t>(), ledger::Hash256::parse(hash->get<std::string>())};
  }
  catch (Error const &e)
  {
    malformed(e.detail());
  }
}

std::string encode_message(Message const &msg)
{
  ordered_json const j = {{"version", kProtocolVersion},
                          {"kind", std::string{to_string(msg.kind)}},
                          {"sender", msg.sender},
                          {"body", msg.body}};
  return j.dump();
}

Message decode_message(std::string_view text)
{
  ordered_json j;
  try
  {
    j = ordered_json::parse(text);
  }
  catch (ordered_json::exception const &)
  {
    malformed("not JSON");
  }
  if (!j.is_object())
  {
    malformed("not an object");
  }
  auto const version = j.find("version");
  if (version == j.end() || !version->is_number_integer())
  {
    malformed("missing protocol version");
  }
  if (version->get<long long>() != kProtocolVersion)
  {
    throw Error{ErrorKind::Protocol,
                "unsupported protocol version " + std::to_string(version->get<long long>())};
  }
  auto const kind   = j.find("kind");
  auto const sender = j.find("sender");
  auto const body   = j.find("body");
  if (kind == j.end() || !kind->is_string() || sender == j.end() || !sender->is_string() ||
      body == j.end() || !body->is_object() || j.size() != 4)
  {
    malformed("expected {version, kind, sender, body}");
  }
  auto const parsed = parse_message_kind(kind->get<std::string>());
  if (!parsed)
  {
    malformed("unknown kind '" + kind->get<std::string>() + "'");
  }
  return Message{*parsed, sender->get<std::string>(), *body};
}

}  // namespace revchain::node
