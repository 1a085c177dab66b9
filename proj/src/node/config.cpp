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

#include "revchain/node/config.hpp"

#include "revchain/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace revchain::node {

using nlohmann::json;

Endpoint Endpoint::parse(std::string_view text)
{
  auto const colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size())
  {
    throw Error{ErrorKind::Config, "address '" + std::string{text} + "' is not host:port"};
  }
  auto const     port_text = text.substr(colon + 1);
  unsigned long  port      = 0;
  auto const [end, ec]     = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || end != port_text.data() + port_text.size() || port > 65535)
  {
    throw Error{ErrorKind::Config, "bad port in address '" + std::string{text} + "'"};
  }
  return Endpoint{std::string{text.substr(0, colon)}, static_cast<std::uint16_t>(port)};
}

std::string Endpoint::str() const
{
  return host + ":" + std::to_string(port);
}

void PeerConfig::check() const
{
  if (node_id.empty())
  {
    throw Error{ErrorKind::Config, "node_id is empty"};
  }
  if (!authorizes(node_id))
  {
    throw Error{ErrorKind::Config, "node_id '" + node_id + "' is not in authorized_nodes"};
  }
  for (auto const &peer : peer_addresses)
  {
    if (peer == listen_address)
    {
      throw Error{ErrorKind::Config, "peer list contains our own address " + peer.str()};
    }
  }
}

PeerConfig PeerConfig::from_json(json const &j)
{
  if (!j.is_object())
  {
    throw Error{ErrorKind::Config, "node config must be a JSON object"};
  }
  for (auto const &item : j.items())
  {
    auto const &k = item.key();
    if (k != "node_id" && k != "listen_address" && k != "peers" && k != "authorized_nodes")
    {
      throw Error{ErrorKind::Config, "unknown config key '" + k + "'"};
    }
  }
  PeerConfig config;
  try
  {
    config.node_id        = j.at("node_id").get<std::string>();
    config.listen_address = Endpoint::parse(j.at("listen_address").get<std::string>());
    for (auto const &p : j.value("peers", json::array()))
    {
      config.peer_addresses.push_back(Endpoint::parse(p.get<std::string>()));
    }
    for (auto const &id : j.at("authorized_nodes"))
    {
      config.authorized_nodes.insert(id.get<std::string>());
    }
  }
  catch (json::exception const &e)
  {
    throw Error{ErrorKind::Config, std::string{"malformed node config: "} + e.what()};
  }
  config.check();
  return config;
}

PeerConfig PeerConfig::load(std::filesystem::path const &path)
{
  std::ifstream in{path};
  if (!in)
  {
    throw Error{ErrorKind::Config, "cannot open node config " + path.string()};
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try
  {
    j = json::parse(buffer.str());
  }
  catch (json::exception const &)
  {
    throw Error{ErrorKind::Config, path.string() + " is not valid JSON"};
  }
  return from_json(j);
}

}  // namespace revchain::node
