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
#include "revchain/registry/registry.hpp"
#include "revchain/workflow/event.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace revchain::workflow {

using registry::ArticleStatus;
using registry::CodeName;

inline constexpr std::int64_t kDayMs              = 24LL * 60 * 60 * 1000;
inline constexpr std::int64_t kResponseWindowMs   = 7 * kDayMs;   // 604'800'000
inline constexpr std::int64_t kReportWindowMs     = 28 * kDayMs;  // 2'419'200'000
inline constexpr int          kInitialInvitations = 6;
inline constexpr int          kMinAcceptances     = 3;
inline constexpr int          kMaxAcceptances     = 6;

enum class InvitationState
{
  Pending,
  Accepted,
  Declined,
  Expired,
};

enum class Recommendation
{
  Accept,
  MinorRevise,
  MajorRevise,
  Reject,
};

enum class Answer
{
  Accept,
  Decline,
};

enum class ScreenDecision
{
  Proceed,
  DeskReject,
};

enum class Verdict
{
  Accept,
  Revise,
  Reject,
};

std::string_view to_string(InvitationState s);
std::string_view to_string(Recommendation r);
std::string_view to_string(Answer a);
std::string_view to_string(ScreenDecision d);
std::string_view to_string(Verdict v);

std::optional<Recommendation> parse_recommendation(std::string_view text);
std::optional<Answer>         parse_answer(std::string_view text);
std::optional<ScreenDecision> parse_screen_decision(std::string_view text);
std::optional<Verdict>        parse_verdict(std::string_view text);

struct Invitation
{
  std::string                 invitation_id;
  std::string                 article_id;
  CodeName                    reviewer_pseudonym;
  std::int64_t                sent_at    = 0;
  std::int64_t                respond_by = 0;  // sent_at + 7 days
  InvitationState             state      = InvitationState::Pending;
  std::optional<std::int64_t> report_due;      // set iff Accepted

  bool operator==(Invitation const &) const = default;
};

struct Report
{
  std::string    invitation_id;
  CodeName       reviewer_pseudonym;
  Recommendation recommendation = Recommendation::Accept;
  std::int64_t   submitted_at   = 0;
  int            round          = 1;

  bool operator==(Report const &) const = default;
};

struct ReviewCase
{
  std::string             article_id;
  ArticleStatus           state = ArticleStatus::Submitted;
  std::vector<Invitation> invitations;
  std::vector<Report>     reports;
  int                     round = 1;  // bumped by each Revise decision

  int accepted_count() const;
  int pending_count() const;
  int reports_in_round() const;
  /// Accepted invitations with no report yet in the current round.
  int awaiting_report_count() const;

  bool has_report(std::string_view invitation_id, int round) const;
  bool is_terminal() const;
  bool invited(CodeName const &reviewer) const;

  Invitation       *find_invitation(std::string_view invitation_id);
  Invitation const *find_invitation(std::string_view invitation_id) const;

  bool operator==(ReviewCase const &) const = default;
};

using CaseMap = std::map<std::string, ReviewCase, std::less<>>;

/// Pure state transition: folds one event into the case map. Both the live
/// engine and chain replay go through here. Throws Error{Input} when the
/// event does not fit the current state.
void apply_event(CaseMap &cases, WorkflowEvent const &event);

/// Rebuilds every case from a chain's payloads (genesis excluded).
CaseMap replay_chain(ledger::Chain const &chain);

}  // namespace revchain::workflow
