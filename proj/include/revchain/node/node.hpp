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
#include "revchain/node/message.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace revchain::node {

/// Destination used for "every peer".
inline constexpr std::string_view kBroadcast = "*";

struct Envelope
{
  std::string to;
  Message     msg;
};

enum class PeerOutcome
{
  Ack,
  Reject,
  Unreachable,
};

std::string_view to_string(PeerOutcome outcome);

struct PeerResult
{
  std::string peer;
  PeerOutcome outcome = PeerOutcome::Unreachable;
  std::string reason;
};

/// Protocol logic of one node without any I/O: feed it a message, get back the
/// messages it wants sent. Both the TCP node and the simulated network drive
/// this class, so the two backends share every rule.
///
/// Not thread-safe; callers serialize access.
class NodeCore
{
public:
  NodeCore(std::string node_id, std::set<std::string, std::less<>> authorized,
           ledger::Chain chain);

  std::string const   &id() const noexcept
  {
    return id_;
  }
  ledger::Chain const &chain() const noexcept
  {
    return chain_;
  }
  bool authorizes(std::string_view sender) const
  {
    return authorized_.count(sender) != 0;
  }

  std::vector<Envelope> handle(Message const &msg);

  /// Mines `payload` on the local tip and returns the announcement. The
  /// payload is remembered so that it can be mined again if a fork drops it.
  Envelope originate(ledger::Bytes payload, std::int64_t now);

  std::size_t adoptions() const noexcept
  {
    return adoptions_;
  }
  std::size_t remined() const noexcept
  {
    return remined_;
  }

private:
  std::vector<Envelope> on_announce(Message const &msg);
  std::vector<Envelope> on_reject(Message const &msg);
  std::vector<Envelope> on_chain_response(Message const &msg);
  Envelope              reply(std::string const &to, Message msg) const;
  void                  remine_orphans();

  struct Originated
  {
    ledger::Bytes payload;
    std::int64_t  at = 0;
  };

  std::string                        id_;
  std::set<std::string, std::less<>> authorized_;
  ledger::Chain                      chain_;
  std::vector<Originated>            originated_;
  std::size_t                        adoptions_ = 0;
  std::size_t                        remined_   = 0;
};

}  // namespace revchain::node
