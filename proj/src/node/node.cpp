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

#include "revchain/node/node.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/mining.hpp"
#include "revchain/node/fork.hpp"

#include <algorithm>
#include <map>

namespace revchain::node {

std::string_view to_string(PeerOutcome outcome)
{
  switch (outcome)
  {
  case PeerOutcome::Ack:
    return "ack";
  case PeerOutcome::Reject:
    return "reject";
  case PeerOutcome::Unreachable:
    return "unreachable";
  }
  return "unknown";
}

NodeCore::NodeCore(std::string node_id, std::set<std::string, std::less<>> authorized,
                   ledger::Chain chain)
  : id_{std::move(node_id)}
  , authorized_{std::move(authorized)}
  , chain_{std::move(chain)}
{
}

Envelope NodeCore::reply(std::string const &to, Message msg) const
{
  return Envelope{to, std::move(msg)};
}

std::vector<Envelope> NodeCore::handle(Message const &msg)
{
  if (!authorizes(msg.sender))
  {
    return {reply(msg.sender, Message::reject(id_, "unauthorized"))};
  }
  if (msg.sender == id_)
  {
    return {};
  }
  try
  {
    switch (msg.kind)
    {
    case MessageKind::Announce:
      return on_announce(msg);
    case MessageKind::RequestChain:
      return {reply(msg.sender, Message::chain_response(id_, chain_))};
    case MessageKind::ChainResponse:
      return on_chain_response(msg);
    case MessageKind::Reject:
      return on_reject(msg);
    case MessageKind::Ack:
      return {};
    }
  }
  catch (Error const &e)
  {
    // Never answer a Reject with a Reject; that could ping-pong forever.
    if (msg.kind == MessageKind::Reject)
    {
      return {};
    }
    return {reply(msg.sender, Message::reject(id_, e.what()))};
  }
  return {};
}

std::vector<Envelope> NodeCore::on_announce(Message const &msg)
{
  ledger::Block const block = msg.block();
  auto const         &blocks = chain_.blocks();

  if (block.index < blocks.size() && blocks[block.index] == block)
  {
    return {reply(msg.sender, Message::ack(id_))};
  }
  if (block.index == chain_.tip().index + 1 &&
      !ledger::check_successor(chain_.tip(), block, chain_.difficulty()))
  {
    chain_.append(block);
    return {reply(msg.sender, Message::ack(id_))};
  }

  // Not appendable here: either a gap, a competing branch, or garbage. Only a
  // block that is at least internally sound earns a chain request.
  bool const sound = block.index > 0 && ledger::Hash256::of(block.payload) == block.payload_digest &&
                     ledger::compute_hash(block) == block.hash &&
                     chain_.difficulty().satisfied_by(block.hash);
  if (!sound)
  {
    return {reply(msg.sender, Message::reject(id_, "invalid block"))};
  }
  TipClaim const theirs{block.index + 1, block.hash};
  if (better_claim(theirs, claim_of(chain_)))
  {
    return {reply(msg.sender, Message::request_chain(id_))};
  }
  return {reply(msg.sender, Message::reject(id_, "stale block", claim_of(chain_)))};
}

std::vector<Envelope> NodeCore::on_reject(Message const &msg)
{
  auto const tip = msg.tip();
  if (tip && better_claim(*tip, claim_of(chain_)))
  {
    return {reply(msg.sender, Message::request_chain(id_))};
  }
  return {};
}

std::vector<Envelope> NodeCore::on_chain_response(Message const &msg)
{
  auto const remote     = msg.chain();
  auto       resolution = resolve_fork(chain_, remote);
  if (resolution.rejection)
  {
    return {reply(msg.sender, Message::reject(id_, *resolution.rejection))};
  }
  if (!resolution.adopted_remote)
  {
    if (better_claim(claim_of(chain_), claim_of(remote)))
    {
      return {reply(msg.sender, Message::reject(id_, "stale chain", claim_of(chain_)))};
    }
    return {};
  }
  chain_ = std::move(resolution.chosen);
  ++adoptions_;
  remine_orphans();
  return {Envelope{std::string{kBroadcast}, Message::announce(id_, chain_.tip())}};
}

void NodeCore::remine_orphans()
{
  std::map<ledger::Bytes, int> present;
  for (auto const &block : chain_.blocks())
  {
    ++present[block.payload];
  }
  for (auto const &o : originated_)
  {
    auto it = present.find(o.payload);
    if (it != present.end() && it->second > 0)
    {
      --it->second;
      continue;
    }
    auto const now = std::max(o.at, chain_.tip().timestamp);
    chain_.append(ledger::mine_block(chain_.tip(), o.payload, chain_.difficulty(), now).block);
    ++remined_;
  }
}

Envelope NodeCore::originate(ledger::Bytes payload, std::int64_t now)
{
  now        = std::max(now, chain_.tip().timestamp);
  auto mined = ledger::mine_block(chain_.tip(), payload, chain_.difficulty(), now);
  chain_.append(mined.block);
  originated_.push_back(Originated{std::move(payload), now});
  return Envelope{std::string{kBroadcast}, Message::announce(id_, chain_.tip())};
}

}  // namespace revchain::node
