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

#include "revchain/selection/history.hpp"

#include "revchain/error.hpp"

namespace revchain::selection {

void ReviewerHistory::record_outcome(registry::Registry const &registry,
                                     std::string_view person_id, Outcome outcome,
                                     std::string_view article_id)
{
  registry.person(person_id);

  auto it = entries_.find(person_id);
  if (it == entries_.end())
  {
    it = entries_.emplace(std::string{person_id}, HistoryEntry{}).first;
  }
  switch (outcome)
  {
  case Outcome::Declined:
  case Outcome::Expired:
    ++it->second.declined_count;
    break;
  case Outcome::ReportedReject:
    it->second.negative_reviewed.insert(std::string{article_id});
    break;
  case Outcome::Accepted:
  case Outcome::ReportedAccept:
    break;
  }
}

HistoryEntry ReviewerHistory::entry(std::string_view person_id) const
{
  auto const it = entries_.find(person_id);
  return it == entries_.end() ? HistoryEntry{} : it->second;
}

nlohmann::json ReviewerHistory::to_json() const
{
  nlohmann::json j = nlohmann::json::object();
  for (auto const &[id, e] : entries_)
  {
    j[id] = {{"declined_count", e.declined_count}, {"negative_reviewed", e.negative_reviewed}};
  }
  return j;
}

ReviewerHistory ReviewerHistory::from_json(nlohmann::json const &j)
{
  if (!j.is_object())
  {
    throw Error{ErrorKind::Input, "history must be a JSON object"};
  }
  ReviewerHistory out;
  try
  {
    for (auto const &[id, e] : j.items())
    {
      HistoryEntry entry;
      entry.declined_count    = e.at("declined_count").get<std::uint32_t>();
      entry.negative_reviewed = e.at("negative_reviewed").get<std::set<std::string>>();
      out.entries_.emplace(id, std::move(entry));
    }
  }
  catch (nlohmann::json::exception const &ex)
  {
    throw Error{ErrorKind::Input, std::string{"malformed history: "} + ex.what()};
  }
  return out;
}

}  // namespace revchain::selection
