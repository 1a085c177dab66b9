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

#include "revchain/ledger/crypto.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace revchain::workflow {

enum class EventType
{
  Submitted,
  Screened,
  InvitationSent,
  InvitationAnswered,
  InvitationExpired,
  ReportSubmitted,
  Decision,
};

std::string_view         to_string(EventType type);
std::optional<EventType> parse_event_type(std::string_view text);

inline constexpr std::string_view kSystemActor = "system";

/// One review-workflow transition, as stored in a block payload.
///
/// The payload is canonical JSON: keys sorted, no whitespace, UTF-8, integers
/// only. Actors and reviewers appear as pseudonyms, never as person ids.
struct WorkflowEvent
{
  EventType      type = EventType::Submitted;
  std::string    article_id;
  std::string    actor{kSystemActor};
  nlohmann::json details = nlohmann::json::object();  // string and integer values only
  std::int64_t   at      = 0;

  ledger::Bytes        to_payload() const;
  static WorkflowEvent from_payload(std::span<std::uint8_t const> payload);

  std::string const &detail_string(char const *key) const;
  std::int64_t       detail_int(char const *key) const;

  bool operator==(WorkflowEvent const &) const = default;
};

}  // namespace revchain::workflow
