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

#include "revchain/node/sim_network.hpp"

#include "revchain/error.hpp"

namespace revchain::node {

SimNetwork::SimNetwork(std::uint64_t seed)
  : rng_{seed}
{
}

NodeCore &SimNetwork::add_node(NodeCore core)
{
  auto const id           = core.id();
  auto [it, inserted]     = nodes_.emplace(id, std::move(core));
  if (!inserted)
  {
    throw Error{ErrorKind::Conflict, "node '" + id + "' already on the network"};
  }
  return it->second;
}

NodeCore &SimNetwork::node(std::string const &id)
{
  auto const it = nodes_.find(id);
  if (it == nodes_.end())
  {
    throw Error{ErrorKind::Lookup, "no node '" + id + "'"};
  }
  return it->second;
}

NodeCore const &SimNetwork::node(std::string const &id) const
{
  return const_cast<SimNetwork *>(this)->node(id);
}

std::vector<std::string> SimNetwork::node_ids() const
{
  std::vector<std::string> ids;
  for (auto const &[id, n] : nodes_)
  {
    ids.push_back(id);
  }
  return ids;
}

void SimNetwork::partition(std::set<std::string> const &side)
{
  side_        = side;
  partitioned_ = true;
}

void SimNetwork::heal()
{
  side_.clear();
  partitioned_ = false;
}

void SimNetwork::set_drop_rate(double rate)
{
  if (rate < 0.0 || rate >= 1.0)
  {
    throw Error{ErrorKind::Parameter, "drop rate must be in [0, 1)"};
  }
  drop_rate_ = rate;
}

bool SimNetwork::reachable(std::string const &a, std::string const &b) const
{
  if (nodes_.count(b) == 0)
  {
    return false;
  }
  return !partitioned_ || (side_.count(a) != 0) == (side_.count(b) != 0);
}

bool SimNetwork::dropped()
{
  if (drop_rate_ == 0.0)
  {
    return false;
  }
  return std::uniform_real_distribution<double>{0.0, 1.0}(rng_) < drop_rate_;
}

std::vector<Envelope> SimNetwork::deliver(std::string const &to, Message const &msg)
{
  return node(to).handle(decode_message(encode_message(msg)));
}

void SimNetwork::enqueue(std::string const &from, std::vector<Envelope> envelopes)
{
  for (auto &env : envelopes)
  {
    if (env.to == kBroadcast)
    {
      for (auto const &[id, n] : nodes_)
      {
        if (id != from)
        {
          queue_.push_back(Queued{from, id, env.msg});
        }
      }
    }
    else
    {
      queue_.push_back(Queued{from, env.to, std::move(env.msg)});
    }
  }
}

void SimNetwork::originate(std::string const &id, ledger::Bytes payload, std::int64_t now)
{
  enqueue(id, {node(id).originate(std::move(payload), now)});
}

std::vector<PeerResult> SimNetwork::broadcast_block(std::string const &from,
                                                    ledger::Block const &block)
{
  if (node(from).chain().tip() != block)
  {
    throw Error{ErrorKind::State, "only the local tip can be broadcast"};
  }
  auto const              announce = Message::announce(from, block);
  std::vector<PeerResult> results;
  for (auto const &[id, n] : nodes_)
  {
    if (id == from)
    {
      continue;
    }
    PeerResult result{id, PeerOutcome::Unreachable, {}};
    if (reachable(from, id) && !dropped())
    {
      auto replies = deliver(id, announce);
      for (auto const &env : replies)
      {
        if (env.to != from)
        {
          continue;
        }
        if (env.msg.kind == MessageKind::Reject)
        {
          result.outcome = PeerOutcome::Reject;
          result.reason  = env.msg.reason();
        }
        else
        {
          result.outcome = PeerOutcome::Ack;
        }
        break;
      }
      if (result.outcome == PeerOutcome::Unreachable)
      {
        result.outcome = PeerOutcome::Ack;
      }
      enqueue(id, std::move(replies));
    }
    results.push_back(std::move(result));
  }
  return results;
}

SyncOutcome SimNetwork::sync(std::string const &id, std::string const &peer)
{
  auto &self = node(id);
  for (int attempt = 0; attempt < kSyncAttempts; ++attempt)
  {
    if (!reachable(id, peer) || dropped())
    {
      continue;
    }
    auto const replies = deliver(peer, Message::request_chain(id));
    if (replies.empty() || replies.front().to != id || dropped())
    {
      continue;
    }
    auto const tip_before = self.chain().tip().hash;
    auto const len_before = self.chain().size();
    enqueue(id, deliver(id, replies.front().msg));
    bool const changed = self.chain().size() != len_before || self.chain().tip().hash != tip_before;
    return changed ? SyncOutcome::Adopted : SyncOutcome::Kept;
  }
  return SyncOutcome::Unreachable;
}

std::size_t SimNetwork::run(std::size_t max_steps)
{
  std::size_t delivered = 0;
  while (!queue_.empty() && delivered < max_steps)
  {
    std::uniform_int_distribution<std::size_t> pick{0, queue_.size() - 1};
    auto const                                  i = pick(rng_);
    Queued                                      q = std::move(queue_[i]);
    queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(i));
    ++delivered;
    if (!reachable(q.from, q.to) || dropped())
    {
      continue;
    }
    enqueue(q.to, deliver(q.to, q.msg));
  }
  return delivered;
}

}  // namespace revchain::node
