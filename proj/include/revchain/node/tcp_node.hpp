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

#include "revchain/node/config.hpp"
#include "revchain/node/node.hpp"
#include "revchain/node/sim_network.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace revchain::node {

/// Frames are a 4-byte big-endian length followed by that many bytes of JSON.
inline constexpr std::uint32_t kMaxFrameBytes = 64u << 20;

std::string frame(std::string_view payload);
/// Reads one frame; nullopt on orderly EOF. Throws Error{Io} on socket errors
/// or timeouts and Error{Protocol} on an oversized frame.
std::optional<std::string> read_frame(int fd);
void                       write_frame(int fd, std::string_view payload);

/// A NodeCore behind a TCP listener. Every inbound connection gets its own
/// thread; all of them funnel through one mutex around the core, so the
/// protocol logic stays single-threaded.
///
/// Each inbound frame gets exactly one reply frame (Ack when the core has
/// nothing to say to the sender). The side that opened the connection keeps
/// talking while its core has something for the peer, then hangs up.
class TcpNode
{
public:
  TcpNode(PeerConfig config, ledger::Chain chain);
  ~TcpNode();

  TcpNode(TcpNode const &)            = delete;
  TcpNode &operator=(TcpNode const &) = delete;

  /// Binds and starts serving. Throws Error{Io} if the address is taken.
  void start();
  void stop();

  /// The bound port (useful when the config asked for port 0).
  std::uint16_t port() const noexcept
  {
    return port_;
  }

  ledger::Chain      chain() const;
  PeerConfig const  &config() const noexcept
  {
    return config_;
  }

  /// Mines `payload` locally and announces the new block to every peer.
  std::vector<PeerResult> originate(ledger::Bytes payload, std::int64_t now);
  std::vector<PeerResult> broadcast_block(ledger::Block const &block);

  SyncOutcome sync(Endpoint const &peer);
  std::vector<std::pair<Endpoint, SyncOutcome>> sync_all();

  static constexpr int kSyncAttempts = 3;

private:
  struct Connection
  {
    std::thread                        thread;
    std::shared_ptr<std::atomic<bool>> done;
  };

  /// Opens a connection to `peer`, sends `first`, and keeps the exchange going
  /// while the core has replies for the peer. Returns the peer's first reply,
  /// or nullopt when the peer could not be reached.
  std::optional<Message> exchange(Endpoint const &peer, Message const &first);
  std::vector<Envelope>  handle_locked(Message const &msg);
  void                   queue_broadcasts(std::vector<Envelope> const &envelopes);

  void accept_loop();
  void serve(int fd);
  void outbound_loop();

  PeerConfig        config_;
  mutable std::mutex core_mutex_;
  NodeCore           core_;

  int                listen_fd_ = -1;
  std::uint16_t      port_      = 0;
  std::atomic<bool>  stopping_{false};
  bool               started_ = false;
  std::thread        acceptor_;
  std::mutex         conn_mutex_;
  std::list<Connection> connections_;
  std::set<int>         open_fds_;

  std::thread             outbound_;
  std::mutex              outbound_mutex_;
  std::condition_variable outbound_cv_;
  std::deque<Message>     outbound_queue_;
};

}  // namespace revchain::node
