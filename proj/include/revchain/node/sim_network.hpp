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

#include "revchain/node/node.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace revchain::node {

enum class SyncOutcome
{
  Adopted,
  Kept,
  Unreachable,
};

/// In-process network of NodeCores. Messages sit in one queue and are
/// delivered in a seeded random order, each one round-tripping through the
/// wire codec. Partitions and a drop rate model unreachable peers.
class SimNetwork
{
public:
  explicit SimNetwork(std::uint64_t seed);

  NodeCore       &add_node(NodeCore core);
  NodeCore       &node(std::string const &id);
  NodeCore const &node(std::string const &id) const;
  std::vector<std::string> node_ids() const;

  /// Nodes in `side` can no longer reach nodes outside it, and vice versa.
  void partition(std::set<std::string> const &side);
  void heal();
  void set_drop_rate(double rate);

  /// Mines on `id` and queues the announcement to every other node.
  void originate(std::string const &id, ledger::Bytes payload, std::int64_t now);

  /// Announces `block` (which must be `from`'s tip) to every other node right
  /// away. A peer's first reply decides its outcome; a chain request counts as
  /// an Ack since the peer is about to catch up. Follow-up traffic is queued.
  std::vector<PeerResult> broadcast_block(std::string const &from, ledger::Block const &block);

  /// RequestChain/ChainResponse with `peer`, retried up to 3 times.
  SyncOutcome sync(std::string const &id, std::string const &peer);

  /// Delivers queued messages until the queue is empty or `max_steps` have
  /// been delivered; returns the number delivered.
  std::size_t run(std::size_t max_steps = 1'000'000);

  std::size_t pending() const noexcept
  {
    return queue_.size();
  }

  static constexpr int kSyncAttempts = 3;

private:
  struct Queued
  {
    std::string from;
    std::string to;
    Message     msg;
  };

  bool reachable(std::string const &a, std::string const &b) const;
  bool dropped();
  /// Pushes the message through encode/decode, as the TCP backend would.
  std::vector<Envelope> deliver(std::string const &to, Message const &msg);
  void                  enqueue(std::string const &from, std::vector<Envelope> envelopes);

  std::mt19937_64                  rng_;
  std::map<std::string, NodeCore>  nodes_;
  std::deque<Queued>               queue_;
  std::set<std::string>            side_;
  bool                             partitioned_ = false;
  double                           drop_rate_   = 0.0;
};

}  // namespace revchain::node
