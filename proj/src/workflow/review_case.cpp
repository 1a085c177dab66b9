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

#include "revchain/workflow/review_case.hpp"

#include "revchain/error.hpp"

#include <algorithm>
#include <array>

namespace revchain::workflow {

namespace {

template <typename E, std::size_t N>
std::string_view name_of(std::array<std::pair<E, std::string_view>, N> const &table, E value)
{
  for (auto const &[v, name] : table)
  {
    if (v == value)
    {
      return name;
    }
  }
  return "unknown";
}

template <typename E, std::size_t N>
std::optional<E> value_of(std::array<std::pair<E, std::string_view>, N> const &table,
                          std::string_view text)
{
  for (auto const &[v, name] : table)
  {
    if (name == text)
    {
      return v;
    }
  }
  return std::nullopt;
}

constexpr std::array<std::pair<InvitationState, std::string_view>, 4> kInvitationStates = {{
    {InvitationState::Pending, "pending"},
    {InvitationState::Accepted, "accepted"},
    {InvitationState::Declined, "declined"},
    {InvitationState::Expired, "expired"},
}};

constexpr std::array<std::pair<Recommendation, std::string_view>, 4> kRecommendations = {{
    {Recommendation::Accept, "accept"},
    {Recommendation::MinorRevise, "minor_revise"},
    {Recommendation::MajorRevise, "major_revise"},
    {Recommendation::Reject, "reject"},
}};

constexpr std::array<std::pair<Answer, std::string_view>, 2> kAnswers = {{
    {Answer::Accept, "accept"},
    {Answer::Decline, "decline"},
}};

constexpr std::array<std::pair<ScreenDecision, std::string_view>, 2> kDecisions = {{
    {ScreenDecision::Proceed, "proceed"},
    {ScreenDecision::DeskReject, "desk_reject"},
}};

constexpr std::array<std::pair<Verdict, std::string_view>, 3> kVerdicts = {{
    {Verdict::Accept, "accept"},
    {Verdict::Revise, "revise"},
    {Verdict::Reject, "reject"},
}};

[[noreturn]] void bad_event(WorkflowEvent const &ev, std::string const &why)
{
  throw Error{ErrorKind::Input, std::string{to_string(ev.type)} + " for '" + ev.article_id +
                                    "': " + why};
}

void recompute_state(ReviewCase &c)
{
  switch (c.state)
  {
  case ArticleStatus::InvitationsOut:
  case ArticleStatus::InReview:
  case ArticleStatus::Revise:
    break;
  default:
    return;
  }
  bool const settled = c.reports_in_round() >= kMinAcceptances && c.pending_count() == 0 &&
                       c.awaiting_report_count() == 0;
  if (settled)
  {
    c.state = ArticleStatus::DecisionPending;
  }
  else if (c.state != ArticleStatus::Revise)
  {
    c.state = c.accepted_count() >= kMinAcceptances ? ArticleStatus::InReview
                                                    : ArticleStatus::InvitationsOut;
  }
}

Invitation &invitation_for(ReviewCase &c, WorkflowEvent const &ev)
{
  auto *inv = c.find_invitation(ev.detail_string("invitation_id"));
  if (!inv)
  {
    bad_event(ev, "unknown invitation");
  }
  return *inv;
}

}  // namespace

std::string_view to_string(InvitationState s)
{
  return name_of(kInvitationStates, s);
}
std::string_view to_string(Recommendation r)
{
  return name_of(kRecommendations, r);
}
std::string_view to_string(Answer a)
{
  return name_of(kAnswers, a);
}
std::string_view to_string(ScreenDecision d)
{
  return name_of(kDecisions, d);
}
std::string_view to_string(Verdict v)
{
  return name_of(kVerdicts, v);
}

std::optional<Recommendation> parse_recommendation(std::string_view text)
{
  return value_of(kRecommendations, text);
}
std::optional<Answer> parse_answer(std::string_view text)
{
  return value_of(kAnswers, text);
}
std::optional<ScreenDecision> parse_screen_decision(std::string_view text)
{
  return value_of(kDecisions, text);
}
std::optional<Verdict> parse_verdict(std::string_view text)
{
  return value_of(kVerdicts, text);
}

int ReviewCase::accepted_count() const
{
  return static_cast<int>(std::count_if(invitations.begin(), invitations.end(), [](auto const &i) {
    return i.state == InvitationState::Accepted;
  }));
}

int ReviewCase::pending_count() const
{
  return static_cast<int>(std::count_if(invitations.begin(), invitations.end(), [](auto const &i) {
    return i.state == InvitationState::Pending;
  }));
}

int ReviewCase::reports_in_round() const
{
  return static_cast<int>(std::count_if(reports.begin(), reports.end(),
                                        [this](auto const &r) { return r.round == round; }));
}

int ReviewCase::awaiting_report_count() const
{
  int n = 0;
  for (auto const &inv : invitations)
  {
    if (inv.state == InvitationState::Accepted && !has_report(inv.invitation_id, round))
    {
      ++n;
    }
  }
  return n;
}

bool ReviewCase::has_report(std::string_view invitation_id, int in_round) const
{
  return std::any_of(reports.begin(), reports.end(), [&](auto const &r) {
    return r.invitation_id == invitation_id && r.round == in_round;
  });
}

bool ReviewCase::is_terminal() const
{
  return state == ArticleStatus::DeskRejected || state == ArticleStatus::Accepted ||
         state == ArticleStatus::Rejected;
}

bool ReviewCase::invited(CodeName const &reviewer) const
{
  return std::any_of(invitations.begin(), invitations.end(),
                     [&](auto const &i) { return i.reviewer_pseudonym == reviewer; });
}

Invitation *ReviewCase::find_invitation(std::string_view invitation_id)
{
  auto const it = std::find_if(invitations.begin(), invitations.end(),
                               [&](auto const &i) { return i.invitation_id == invitation_id; });
  return it == invitations.end() ? nullptr : &*it;
}

Invitation const *ReviewCase::find_invitation(std::string_view invitation_id) const
{
  return const_cast<ReviewCase *>(this)->find_invitation(invitation_id);
}

void apply_event(CaseMap &cases, WorkflowEvent const &ev)
{
  if (ev.type == EventType::Submitted)
  {
    if (cases.count(ev.article_id) != 0)
    {
      bad_event(ev, "case already exists");
    }
    ReviewCase c;
    c.article_id = ev.article_id;
    cases.emplace(ev.article_id, std::move(c));
    return;
  }

  auto const it = cases.find(ev.article_id);
  if (it == cases.end())
  {
    bad_event(ev, "no such case");
  }
  ReviewCase &c = it->second;

  switch (ev.type)
  {
  case EventType::Submitted:
    break;

  case EventType::Screened: {
    if (c.state != ArticleStatus::Submitted && c.state != ArticleStatus::Screening)
    {
      bad_event(ev, "case is not awaiting screening");
    }
    auto const d = parse_screen_decision(ev.detail_string("decision"));
    if (!d)
    {
      bad_event(ev, "unknown screening decision");
    }
    c.state = *d == ScreenDecision::DeskReject ? ArticleStatus::DeskRejected
                                               : ArticleStatus::Screening;
    break;
  }

  case EventType::InvitationSent: {
    if (c.is_terminal() || c.state == ArticleStatus::Submitted ||
        c.state == ArticleStatus::DecisionPending)
    {
      bad_event(ev, "case cannot take invitations");
    }
    Invitation inv;
    inv.invitation_id      = ev.detail_string("invitation_id");
    inv.article_id         = ev.article_id;
    inv.reviewer_pseudonym = CodeName{ev.detail_string("reviewer")};
    inv.sent_at            = ev.at;
    inv.respond_by         = ev.detail_int("respond_by");
    if (inv.respond_by - inv.sent_at != kResponseWindowMs)
    {
      bad_event(ev, "response window is not 7 days");
    }
    if (c.find_invitation(inv.invitation_id) || c.invited(inv.reviewer_pseudonym))
    {
      bad_event(ev, "duplicate invitation");
    }
    c.invitations.push_back(std::move(inv));
    if (c.state == ArticleStatus::Screening)
    {
      c.state = ArticleStatus::InvitationsOut;
    }
    recompute_state(c);
    break;
  }

  case EventType::InvitationAnswered: {
    Invitation &inv = invitation_for(c, ev);
    if (inv.state != InvitationState::Pending || ev.at > inv.respond_by)
    {
      bad_event(ev, "invitation not open for answers");
    }
    if (ev.actor != inv.reviewer_pseudonym.str())
    {
      bad_event(ev, "answer from someone other than the invitee");
    }
    auto const answer = parse_answer(ev.detail_string("answer"));
    if (!answer)
    {
      bad_event(ev, "unknown answer");
    }
    if (*answer == Answer::Accept)
    {
      if (c.accepted_count() >= kMaxAcceptances)
      {
        bad_event(ev, "acceptance cap reached");
      }
      inv.state      = InvitationState::Accepted;
      inv.report_due = ev.at + kReportWindowMs;
    }
    else
    {
      inv.state = InvitationState::Declined;
    }
    recompute_state(c);
    break;
  }

  case EventType::InvitationExpired: {
    Invitation &inv = invitation_for(c, ev);
    bool const lapsed_answer = inv.state == InvitationState::Pending && ev.at > inv.respond_by;
    bool const lapsed_report = inv.state == InvitationState::Accepted &&
                               !c.has_report(inv.invitation_id, c.round) &&
                               ev.at > inv.report_due.value_or(ev.at);
    if (!lapsed_answer && !lapsed_report)
    {
      bad_event(ev, "invitation has not lapsed");
    }
    inv.state = InvitationState::Expired;
    inv.report_due.reset();
    recompute_state(c);
    break;
  }

  case EventType::ReportSubmitted: {
    Invitation &inv = invitation_for(c, ev);
    if (inv.state != InvitationState::Accepted || ev.at > inv.report_due.value_or(ev.at - 1))
    {
      bad_event(ev, "invitation not open for reports");
    }
    if (c.has_report(inv.invitation_id, c.round))
    {
      bad_event(ev, "duplicate report");
    }
    auto const rec = parse_recommendation(ev.detail_string("recommendation"));
    if (!rec)
    {
      bad_event(ev, "unknown recommendation");
    }
    c.reports.push_back(Report{inv.invitation_id, inv.reviewer_pseudonym, *rec, ev.at, c.round});
    recompute_state(c);
    break;
  }

  case EventType::Decision: {
    if (c.state != ArticleStatus::DecisionPending)
    {
      bad_event(ev, "case is not awaiting a decision");
    }
    auto const verdict = parse_verdict(ev.detail_string("verdict"));
    if (!verdict)
    {
      bad_event(ev, "unknown verdict");
    }
    switch (*verdict)
    {
    case Verdict::Accept:
      c.state = ArticleStatus::Accepted;
      break;
    case Verdict::Reject:
      c.state = ArticleStatus::Rejected;
      break;
    case Verdict::Revise:
      ++c.round;
      c.state = ArticleStatus::Revise;
      for (auto &inv : c.invitations)
      {
        if (inv.state == InvitationState::Accepted)
        {
          inv.report_due = ev.at + kReportWindowMs;
        }
      }
      break;
    }
    break;
  }
  }
}

CaseMap replay_chain(ledger::Chain const &chain)
{
  CaseMap     cases;
  auto const &blocks = chain.blocks();
  for (std::size_t i = 1; i < blocks.size(); ++i)
  {
    apply_event(cases, WorkflowEvent::from_payload(blocks[i].payload));
  }
  return cases;
}

}  // namespace revchain::workflow
