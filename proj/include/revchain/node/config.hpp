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

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace revchain::node {

struct Endpoint
{
  std::string   host;
  std::uint16_t port = 0;

  /// "host:port"; throws Error{Config} on anything else.
  static Endpoint parse(std::string_view text);
  std::string     str() const;

  bool operator==(Endpoint const &) const = default;
};

struct PeerConfig
{
  std::string                      node_id;
  Endpoint                         listen_address;
  std::vector<Endpoint>            peer_addresses;
  std::set<std::string, std::less<>> authorized_nodes;

  /// node_id must be authorized and no peer may be our own listen address.
  void check() const;

  bool authorizes(std::string_view id) const
  {
    return authorized_nodes.count(id) != 0;
  }

  /// {node_id, listen_address, peers:[...], authorized_nodes:[...]}
  static PeerConfig from_json(nlohmann::json const &j);
  static PeerConfig load(std::filesystem::path const &path);
};

}  // namespace revchain::node
