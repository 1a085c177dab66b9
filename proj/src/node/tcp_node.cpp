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

#include "revchain/node/tcp_node.hpp"

#include "revchain/error.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>

namespace revchain::node {

namespace {

constexpr int kIoTimeoutSeconds = 5;
constexpr int kMaxExchangeRounds = 16;

[[noreturn]] void io_error(std::string const &what)
{
  throw Error{ErrorKind::Io, what + ": " + std::strerror(errno)};
}

void set_timeouts(int fd)
{
  timeval tv{};
  tv.tv_sec = kIoTimeoutSeconds;
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
}

bool read_exact(int fd, char *buf, std::size_t n, bool eof_ok)
{
  std::size_t got = 0;
  while (got < n)
  {
    ssize_t const r = ::recv(fd, buf + got, n - got, 0);
    if (r == 0)
    {
      if (eof_ok && got == 0)
      {
        return false;
      }
      throw Error{ErrorKind::Io, "connection closed mid-frame"};
    }
    if (r < 0)
    {
      if (errno == EINTR)
      {
        continue;
      }
      io_error("recv");
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

struct AddrInfo
{
  addrinfo *list = nullptr;
  ~AddrInfo()
  {
    if (list)
    {
      ::freeaddrinfo(list);
    }
  }
};

AddrInfo resolve(Endpoint const &ep, bool passive)
{
  addrinfo hints{};
  hints.ai_family   = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags    = passive ? AI_PASSIVE : 0;
  AddrInfo   result;
  auto const port = std::to_string(ep.port);
  int const  rc   = ::getaddrinfo(ep.host.c_str(), port.c_str(), &hints, &result.list);
  if (rc != 0)
  {
    throw Error{ErrorKind::Io, "cannot resolve " + ep.str() + ": " + ::gai_strerror(rc)};
  }
  return result;
}

int connect_to(Endpoint const &ep)
{
  AddrInfo const addrs = resolve(ep, false);
  for (auto *ai = addrs.list; ai; ai = ai->ai_next)
  {
    int const fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0)
    {
      continue;
    }
    set_timeouts(fd);
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0)
    {
      return fd;
    }
    ::close(fd);
  }
  return -1;
}

}  // namespace

std::string frame(std::string_view payload)
{
  if (payload.size() > kMaxFrameBytes)
  {
    throw Error{ErrorKind::Protocol, "frame too large"};
  }
  auto const  n = static_cast<std::uint32_t>(payload.size());
  std::string out;
  out.reserve(4 + payload.size());
  out.push_back(static_cast<char>((n >> 24) & 0xff));
  out.push_back(static_cast<char>((n >> 16) & 0xff));
  out.push_back(static_cast<char>((n >> 8) & 0xff));
  out.push_back(static_cast<char>(n & 0xff));
  out.append(payload);
  return out;
}

void write_frame(int fd, std::string_view payload)
{
  std::string const data = frame(payload);
  std::size_t       sent = 0;
  while (sent < data.size())
  {
    ssize_t const w = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (w < 0)
    {
      if (errno == EINTR)
      {
        continue;
      }
      io_error("send");
    }
    sent += static_cast<std::size_t>(w);
  }
}

std::optional<std::string> read_frame(int fd)
{
  unsigned char header[4];
  if (!read_exact(fd, reinterpret_cast<char *>(header), 4, true))
  {
    return std::nullopt;
  }
  std::uint32_t const n = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                          (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
  if (n > kMaxFrameBytes)
  {
    throw Error{ErrorKind::Protocol, "frame of " + std::to_string(n) + " bytes exceeds limit"};
  }
  std::string payload(n, '\0');
  read_exact(fd, payload.data(), n, false);
  return payload;
}

TcpNode::TcpNode(PeerConfig config, ledger::Chain chain)
  : config_{std::move(config)}
  , core_{config_.node_id, config_.authorized_nodes, std::move(chain)}
{
  config_.check();
}

TcpNode::~TcpNode()
{
  stop();
}

void TcpNode::start()
{
  if (started_)
  {
    return;
  }
  AddrInfo const addrs = resolve(config_.listen_address, true);
  int const      fd    = ::socket(addrs.list->ai_family, addrs.list->ai_socktype, 0);
  if (fd < 0)
  {
    io_error("socket");
  }
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd, addrs.list->ai_addr, addrs.list->ai_addrlen) != 0 || ::listen(fd, 64) != 0)
  {
    int const saved = errno;
    ::close(fd);
    errno = saved;
    io_error("cannot listen on " + config_.listen_address.str());
  }
  sockaddr_in bound{};
  socklen_t   len = sizeof bound;
  ::getsockname(fd, reinterpret_cast<sockaddr *>(&bound), &len);
  port_      = ntohs(bound.sin_port);
  listen_fd_ = fd;
  stopping_  = false;
  started_   = true;
  acceptor_  = std::thread{[this] { accept_loop(); }};
  outbound_  = std::thread{[this] { outbound_loop(); }};
}

void TcpNode::stop()
{
  if (!started_)
  {
    return;
  }
  stopping_ = true;
  outbound_cv_.notify_all();
  if (acceptor_.joinable())
  {
    acceptor_.join();
  }
  if (outbound_.joinable())
  {
    outbound_.join();
  }
  {
    std::lock_guard lock{conn_mutex_};
    for (int fd : open_fds_)
    {
      ::shutdown(fd, SHUT_RDWR);
    }
  }
  for (auto &c : connections_)
  {
    if (c.thread.joinable())
    {
      c.thread.join();
    }
  }
  connections_.clear();
  ::close(listen_fd_);
  listen_fd_ = -1;
  started_   = false;
}

ledger::Chain TcpNode::chain() const
{
  std::lock_guard lock{core_mutex_};
  return core_.chain();
}

std::vector<Envelope> TcpNode::handle_locked(Message const &msg)
{
  std::lock_guard lock{core_mutex_};
  return core_.handle(msg);
}

void TcpNode::queue_broadcasts(std::vector<Envelope> const &envelopes)
{
  std::lock_guard lock{outbound_mutex_};
  for (auto const &env : envelopes)
  {
    if (env.to == kBroadcast)
    {
      outbound_queue_.push_back(env.msg);
    }
  }
  outbound_cv_.notify_one();
}

void TcpNode::accept_loop()
{
  while (!stopping_)
  {
    pollfd pfd{listen_fd_, POLLIN, 0};
    if (::poll(&pfd, 1, 200) <= 0)
    {
      std::lock_guard lock{conn_mutex_};
      connections_.remove_if([](Connection &c) {
        if (c.done->load() && c.thread.joinable())
        {
          c.thread.join();
          return true;
        }
        return false;
      });
      continue;
    }
    int const fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0)
    {
      continue;
    }
    set_timeouts(fd);
    auto            done = std::make_shared<std::atomic<bool>>(false);
    std::lock_guard lock{conn_mutex_};
    open_fds_.insert(fd);
    connections_.push_back(Connection{std::thread{[this, fd, done] {
                                        serve(fd);
                                        {
                                          std::lock_guard inner{conn_mutex_};
                                          open_fds_.erase(fd);
                                        }
                                        ::close(fd);
                                        *done = true;
                                      }},
                                      done});
  }
}

void TcpNode::serve(int fd)
{
  try
  {
    while (!stopping_)
    {
      auto const text = read_frame(fd);
      if (!text)
      {
        return;
      }
      Message reply = Message::ack(config_.node_id);
      try
      {
        auto const msg       = decode_message(*text);
        auto const envelopes = handle_locked(msg);
        for (auto const &env : envelopes)
        {
          if (env.to == msg.sender)
          {
            reply = env.msg;
            break;
          }
        }
        queue_broadcasts(envelopes);
      }
      catch (Error const &e)
      {
        reply = Message::reject(config_.node_id, e.what());
      }
      write_frame(fd, encode_message(reply));
    }
  }
  catch (Error const &)
  {
    // Peer went away or timed out; the connection simply ends.
  }
}

void TcpNode::outbound_loop()
{
  for (;;)
  {
    Message msg;
    {
      std::unique_lock lock{outbound_mutex_};
      outbound_cv_.wait(lock, [this] { return stopping_ || !outbound_queue_.empty(); });
      if (stopping_)
      {
        return;
      }
      msg = std::move(outbound_queue_.front());
      outbound_queue_.pop_front();
    }
    for (auto const &peer : config_.peer_addresses)
    {
      exchange(peer, msg);
    }
  }
}

std::optional<Message> TcpNode::exchange(Endpoint const &peer, Message const &first)
{
  int fd = -1;
  try
  {
    fd = connect_to(peer);
  }
  catch (Error const &)
  {
    return std::nullopt;
  }
  if (fd < 0)
  {
    return std::nullopt;
  }

  std::optional<Message> first_reply;
  try
  {
    Message outgoing = first;
    for (int round = 0; round < kMaxExchangeRounds; ++round)
    {
      write_frame(fd, encode_message(outgoing));
      auto const text = read_frame(fd);
      if (!text)
      {
        break;
      }
      Message const reply = decode_message(*text);
      if (!first_reply)
      {
        first_reply = reply;
      }
      auto const envelopes = handle_locked(reply);
      queue_broadcasts(envelopes);
      auto const next = std::find_if(envelopes.begin(), envelopes.end(),
                                     [&](Envelope const &e) { return e.to == reply.sender; });
      if (next == envelopes.end())
      {
        break;
      }
      outgoing = next->msg;
    }
  }
  catch (Error const &)
  {
  }
  ::close(fd);
  return first_reply;
}

std::vector<PeerResult> TcpNode::broadcast_block(ledger::Block const &block)
{
  auto const              announce = Message::announce(config_.node_id, block);
  std::vector<PeerResult> results;
  for (auto const &peer : config_.peer_addresses)
  {
    PeerResult r{peer.str(), PeerOutcome::Unreachable, {}};
    if (auto const reply = exchange(peer, announce))
    {
      if (reply->kind == MessageKind::Reject)
      {
        r.outcome = PeerOutcome::Reject;
        r.reason  = reply->reason();
      }
      else
      {
        r.outcome = PeerOutcome::Ack;
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<PeerResult> TcpNode::originate(ledger::Bytes payload, std::int64_t now)
{
  ledger::Block block;
  {
    std::lock_guard lock{core_mutex_};
    core_.originate(std::move(payload), now);
    block = core_.chain().tip();
  }
  return broadcast_block(block);
}

SyncOutcome TcpNode::sync(Endpoint const &peer)
{
  for (int attempt = 0; attempt < kSyncAttempts; ++attempt)
  {
    if (attempt > 0)
    {
      std::this_thread::sleep_for(std::chrono::milliseconds{200 * attempt});
    }
    ledger::Hash256 tip_before;
    std::size_t     len_before = 0;
    {
      std::lock_guard lock{core_mutex_};
      tip_before = core_.chain().tip().hash;
      len_before = core_.chain().size();
    }
    if (!exchange(peer, Message::request_chain(config_.node_id)))
    {
      continue;
    }
    std::lock_guard lock{core_mutex_};
    bool const      changed =
        core_.chain().size() != len_before || core_.chain().tip().hash != tip_before;
    return changed ? SyncOutcome::Adopted : SyncOutcome::Kept;
  }
  return SyncOutcome::Unreachable;
}

std::vector<std::pair<Endpoint, SyncOutcome>> TcpNode::sync_all()
{
  std::vector<std::pair<Endpoint, SyncOutcome>> outcomes;
  for (auto const &peer : config_.peer_addresses)
  {
    outcomes.emplace_back(peer, sync(peer));
  }
  return outcomes;
}

}  // namespace revchain::node
