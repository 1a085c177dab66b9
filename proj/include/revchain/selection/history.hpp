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

#include "revchain/registry/registry.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace revchain::selection {

enum class Outcome
{
  Accepted,
  Declined,
  Expired,
  ReportedReject,
  ReportedAccept,
};

struct HistoryEntry
{
  std::uint32_t         declined_count = 0;  // declined or let expire
  std::set<std::string> negative_reviewed;   // article ids reviewed with a reject

  bool operator==(HistoryEntry const &) const = default;
};

/// Per-reviewer record of past answers, used to demote candidates. Counters
/// only grow.
class ReviewerHistory
{
public:
  /// Throws Error{Lookup} if `person_id` is not in `registry`.
  void record_outcome(registry::Registry const &registry, std::string_view person_id,
                      Outcome outcome, std::string_view article_id);

  /// Default-constructed entry for people with no history.
  HistoryEntry entry(std::string_view person_id) const;

  nlohmann::json          to_json() const;
  static ReviewerHistory  from_json(nlohmann::json const &j);

  bool operator==(ReviewerHistory const &) const = default;

private:
  std::map<std::string, HistoryEntry, std::less<>> entries_;
};

}  // namespace revchain::selection
