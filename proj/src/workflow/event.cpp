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

#include "revchain/workflow/event.hpp"

#include "revchain/error.hpp"

#include <array>

namespace revchain::workflow {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<EventType, std::string_view>, 7> kNames = {{
    {EventType::Submitted, "Submitted"},
    {EventType::Screened, "Screened"},
    {EventType::InvitationSent, "InvitationSent"},
    {EventType::InvitationAnswered, "InvitationAnswered"},
    {EventType::InvitationExpired, "InvitationExpired"},
    {EventType::ReportSubmitted, "ReportSubmitted"},
    {EventType::Decision, "Decision"},
}};

void check_details(json const &details)
{
  if (!details.is_object())
  {
    throw Error{ErrorKind::Input, "event details must be an object"};
  }
  for (auto const &item : details.items())
  {
    if (!item.value().is_string() && !item.value().is_number_integer())
    {
      throw Error{ErrorKind::Input, "event detail '" + item.key() + "' must be string or integer"};
    }
  }
}

}  // namespace

std::string_view to_string(EventType type)
{
  for (auto const &[t, name] : kNames)
  {
    if (t == type)
    {
      return name;
    }
  }
  return "Unknown";
}

std::optional<EventType> parse_event_type(std::string_view text)
{
  for (auto const &[t, name] : kNames)
  {
    if (name == text)
    {
      return t;
    }
  }
  return std::nullopt;
}

ledger::Bytes WorkflowEvent::to_payload() const
{
  check_details(details);
  // nlohmann::json keeps object keys in a std::map, so dump() is key-sorted.
  json const j = {{"event", std::string{to_string(type)}},
                  {"article_id", article_id},
                  {"actor", actor},
                  {"details", details},
                  {"at", at}};
  return ledger::to_bytes(j.dump());
}

WorkflowEvent WorkflowEvent::from_payload(std::span<std::uint8_t const> payload)
{
  std::string_view const text{reinterpret_cast<char const *>(payload.data()), payload.size()};
  json                   j;
  try
  {
    j = json::parse(text);
  }
  catch (json::exception const &)
  {
    throw Error{ErrorKind::Input, "event payload is not valid JSON"};
  }
  if (!j.is_object() || j.size() != 5 || !j.contains("event") || !j.contains("article_id") ||
      !j.contains("actor") || !j.contains("details") || !j.contains("at"))
  {
    throw Error{ErrorKind::Input, "event payload has the wrong shape"};
  }
  WorkflowEvent ev;
  try
  {
    auto const type = parse_event_type(j.at("event").get<std::string>());
    if (!type)
    {
      throw Error{ErrorKind::Input, "unknown event type"};
    }
    ev.type       = *type;
    ev.article_id = j.at("article_id").get<std::string>();
    ev.actor      = j.at("actor").get<std::string>();
    ev.details    = j.at("details");
    if (!j.at("at").is_number_integer())
    {
      throw Error{ErrorKind::Input, "event time must be an integer"};
    }
    ev.at = j.at("at").get<std::int64_t>();
  }
  catch (json::exception const &)
  {
    throw Error{ErrorKind::Input, "event payload has mistyped fields"};
  }
  check_details(ev.details);
  if (ev.to_payload() != ledger::Bytes(payload.begin(), payload.end()))
  {
    throw Error{ErrorKind::Input, "event payload is not canonical"};
  }
  return ev;
}

std::string const &WorkflowEvent::detail_string(char const *key) const
{
  auto const it = details.find(key);
  if (it == details.end() || !it->is_string())
  {
    throw Error{ErrorKind::Input, std::string{"event detail '"} + key + "' missing"};
  }
  return it->get_ref<std::string const &>();
}

std::int64_t WorkflowEvent::detail_int(char const *key) const
{
  auto const it = details.find(key);
  if (it == details.end() || !it->is_number_integer())
  {
    throw Error{ErrorKind::Input, std::string{"event detail '"} + key + "' missing"};
  }
  return it->get<std::int64_t>();
}

}  // namespace revchain::workflow
