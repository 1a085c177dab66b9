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

#include "revchain/workflow/workflow.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/chain_file.hpp"
#include "revchain/ledger/mining.hpp"

#include <tuple>

namespace revchain::workflow {

using registry::CodeName;

Outbox::Outbox(std::filesystem::path dir)
  : dir_{std::move(dir)}
{
  std::filesystem::create_directories(dir_);
}

void Outbox::deliver(Invitation const &invitation) const
{
  nlohmann::json const msg = {{"invitation_id", invitation.invitation_id},
                              {"article_id", invitation.article_id},
                              {"reviewer_pseudonym", invitation.reviewer_pseudonym.str()},
                              {"respond_by", invitation.respond_by}};
  ledger::write_file_atomic(dir_ / (invitation.invitation_id + ".json"), msg.dump() + "\n");
}

void Workflow::Draft::push(WorkflowEvent ev)
{
  apply_event(cases, ev);
  events.push_back(std::move(ev));
}

Workflow::Workflow(registry::Registry &registry, selection::ReviewerHistory &history,
                   ledger::Chain &chain, WorkflowOptions options)
  : registry_{registry}
  , history_{history}
  , chain_{chain}
  , options_{std::move(options)}
  , cases_{replay_chain(chain)}
{
  for (auto const &[id, c] : cases_)
  {
    if (registry_.find_article(id))
    {
      registry_.set_article_status(id, c.state);
    }
  }
}

ReviewCase const &Workflow::case_for(std::string_view article_id) const
{
  auto const it = cases_.find(article_id);
  if (it == cases_.end())
  {
    throw Error{ErrorKind::Lookup, "no review case for article '" + std::string{article_id} + "'"};
  }
  return it->second;
}

std::string const &Workflow::article_of_invitation(std::string_view invitation_id) const
{
  for (auto const &[id, c] : cases_)
  {
    if (c.find_invitation(invitation_id))
    {
      return id;
    }
  }
  throw Error{ErrorKind::Lookup, "unknown invitation '" + std::string{invitation_id} + "'"};
}

Workflow::Draft Workflow::draft() const
{
  Draft d;
  d.cases   = cases_;
  d.history = history_;
  return d;
}

ReviewCase &Workflow::draft_case(Draft &d, std::string_view article_id) const
{
  auto const it = d.cases.find(article_id);
  if (it == d.cases.end())
  {
    throw Error{ErrorKind::Lookup, "no review case for article '" + std::string{article_id} + "'"};
  }
  return it->second;
}

CodeName Workflow::pseudonym_of(std::string const &person_id) const
{
  return registry_.pseudonym(person_id, chain_.salt());
}

std::string Workflow::person_of(CodeName const &pseudonym) const
{
  for (auto const &[id, person] : registry_.persons())
  {
    if (registry::code_name(chain_.salt(), id) == pseudonym)
    {
      return id;
    }
  }
  throw Error{ErrorKind::Lookup, "no registered person behind pseudonym " + pseudonym.str()};
}

void Workflow::send_invitation(Draft &d, ReviewCase &c, std::string const &person_id,
                               std::int64_t at) const
{
  std::string const id = c.article_id + "-inv-" + std::to_string(c.invitations.size() + 1);
  WorkflowEvent     ev;
  ev.type       = EventType::InvitationSent;
  ev.article_id = c.article_id;
  ev.at         = at;
  ev.details    = {{"invitation_id", id},
                   {"reviewer", pseudonym_of(person_id).str()},
                   {"respond_by", at + kResponseWindowMs}};
  d.push(std::move(ev));
  d.outbox.push_back(*c.find_invitation(id));
}

bool Workflow::send_replacement(Draft &d, ReviewCase &c, std::int64_t at) const
{
  if (c.is_terminal() || c.accepted_count() >= kMinAcceptances ||
      c.accepted_count() + c.pending_count() >= kMaxAcceptances)
  {
    return false;
  }
  auto const &article    = registry_.article(c.article_id);
  auto const  candidates = selection::filter_reviewers(c.article_id, registry_, d.history,
                                                       options_.min_score);
  for (auto const &person_id : selection::eligible_reviewers(article, candidates, registry_))
  {
    if (!c.invited(pseudonym_of(person_id)))
    {
      send_invitation(d, c, person_id, at);
      d.transitions.push_back(Transition{Transition::Kind::ReplacementSent, c.article_id,
                                         c.invitations.back().invitation_id, at});
      return true;
    }
  }
  return false;
}

void Workflow::commit(Draft &&d, std::int64_t now)
{
  if (d.events.empty())
  {
    return;
  }

  std::vector<ledger::Block> mined;
  mined.reserve(d.events.size());
  ledger::Block const *tip = &chain_.tip();
  for (auto const &ev : d.events)
  {
    mined.push_back(ledger::mine_block(*tip, ev.to_payload(), chain_.difficulty(), now).block);
    tip = &mined.back();
  }
  for (auto &block : mined)
  {
    chain_.append(std::move(block));
  }

  cases_ = std::move(d.cases);
  history_ = std::move(d.history);
  if (options_.outbox)
  {
    for (auto const &inv : d.outbox)
    {
      options_.outbox->deliver(inv);
    }
  }
  for (auto const &ev : d.events)
  {
    if (registry_.find_article(ev.article_id))
    {
      registry_.set_article_status(ev.article_id, cases_.at(ev.article_id).state);
    }
  }
}

ReviewCase const &Workflow::submit_manuscript(std::string_view article_id, std::int64_t now)
{
  auto const &article = registry_.article(article_id);
  if (cases_.count(article_id) != 0)
  {
    throw Error{ErrorKind::Conflict,
                "a review case already exists for article '" + std::string{article_id} + "'"};
  }
  Draft         d = draft();
  WorkflowEvent ev;
  ev.type       = EventType::Submitted;
  ev.article_id = article.article_id;
  ev.actor      = pseudonym_of(article.author_ids.front()).str();
  ev.at         = now;
  d.push(std::move(ev));
  commit(std::move(d), now);
  return case_for(article_id);
}

ReviewCase const &Workflow::screen(std::string_view article_id, ScreenDecision decision,
                                   std::int64_t now, int y)
{
  if (decision == ScreenDecision::Proceed &&
      (y < selection::kMinReviewers || y > selection::kMaxReviewers))
  {
    throw Error{ErrorKind::Parameter, "reviewer count must be in [3, 6], got " + std::to_string(y)};
  }
  auto const &current = case_for(article_id);
  if (current.state != ArticleStatus::Submitted && current.state != ArticleStatus::Screening)
  {
    throw Error{ErrorKind::State, "article '" + std::string{article_id} + "' is " +
                                      std::string{registry::to_string(current.state)} +
                                      ", not awaiting screening"};
  }

  bool const needs_event =
      decision == ScreenDecision::DeskReject || current.state == ArticleStatus::Submitted;
  if (needs_event)
  {
    Draft         d = draft();
    WorkflowEvent ev;
    ev.type       = EventType::Screened;
    ev.article_id = std::string{article_id};
    ev.at         = now;
    ev.details    = {{"decision", std::string{to_string(decision)}}};
    d.push(std::move(ev));
    commit(std::move(d), now);
  }
  if (decision == ScreenDecision::DeskReject)
  {
    return case_for(article_id);
  }

  auto const &article    = registry_.article(article_id);
  auto const  candidates = selection::filter_reviewers(article_id, registry_, history_,
                                                       options_.min_score);
  auto const  selected   = selection::select_reviewers(article, y, candidates, registry_);
  return dispatch_invitations(article_id, selected, now);
}

ReviewCase const &Workflow::dispatch_invitations(std::string_view                   article_id,
                                                 selection::SelectedReviewers const &selected,
                                                 std::int64_t                        now)
{
  if (case_for(article_id).state != ArticleStatus::Screening)
  {
    throw Error{ErrorKind::State, "invitations go out only from Screening"};
  }
  if (selected.person_ids.empty())
  {
    throw Error{ErrorKind::Parameter, "no reviewers selected"};
  }
  Draft d = draft();
  auto &c = draft_case(d, article_id);
  for (auto const &person_id : selected.person_ids)
  {
    send_invitation(d, c, person_id, now);
  }
  commit(std::move(d), now);
  return case_for(article_id);
}

ReviewCase const &Workflow::respond(std::string_view invitation_id, Answer answer,
                                    std::int64_t now)
{
  auto const article_id = article_of_invitation(invitation_id);
  Draft      d          = draft();
  auto      &c          = draft_case(d, article_id);
  if (c.is_terminal())
  {
    throw Error{ErrorKind::State, "case for '" + article_id + "' is closed"};
  }
  auto const &inv = *c.find_invitation(invitation_id);
  if (inv.state == InvitationState::Expired ||
      (inv.state == InvitationState::Pending && now > inv.respond_by))
  {
    throw Error{ErrorKind::LateResponse, "invitation '" + std::string{invitation_id} +
                                             "' expired at " + std::to_string(inv.respond_by)};
  }
  if (inv.state != InvitationState::Pending)
  {
    throw Error{ErrorKind::State, "invitation '" + std::string{invitation_id} + "' is already " +
                                      std::string{to_string(inv.state)}};
  }

  CodeName const    reviewer  = inv.reviewer_pseudonym;
  std::string const person_id = person_of(reviewer);

  WorkflowEvent ev;
  ev.type       = EventType::InvitationAnswered;
  ev.article_id = article_id;
  ev.actor      = reviewer.str();
  ev.at         = now;
  ev.details    = {{"invitation_id", std::string{invitation_id}},
                   {"answer", std::string{to_string(answer)}}};
  d.push(std::move(ev));

  if (answer == Answer::Accept)
  {
    d.history.record_outcome(registry_, person_id, selection::Outcome::Accepted, article_id);
  }
  else
  {
    d.history.record_outcome(registry_, person_id, selection::Outcome::Declined, article_id);
    send_replacement(d, c, now);
  }
  commit(std::move(d), now);
  return case_for(article_id);
}

std::vector<Transition> Workflow::tick(std::int64_t now)
{
  Draft d = draft();

  for (;;)
  {
    // Earliest lapsed deadline across all open cases.
    std::optional<std::tuple<std::int64_t, std::string, std::string, Transition::Kind>> next;
    for (auto const &[id, c] : d.cases)
    {
      if (c.is_terminal())
      {
        continue;
      }
      for (auto const &inv : c.invitations)
      {
        std::optional<std::int64_t> deadline;
        Transition::Kind            kind = Transition::Kind::ResponseExpired;
        if (inv.state == InvitationState::Pending)
        {
          deadline = inv.respond_by;
        }
        else if (inv.state == InvitationState::Accepted && !c.has_report(inv.invitation_id, c.round))
        {
          deadline = inv.report_due;
          kind     = Transition::Kind::ReportOverdue;
        }
        if (deadline && *deadline < now)
        {
          auto candidate = std::make_tuple(*deadline, id, inv.invitation_id, kind);
          if (!next || candidate < *next)
          {
            next = std::move(candidate);
          }
        }
      }
    }
    if (!next)
    {
      break;
    }

    auto const &[deadline, article_id, invitation_id, kind] = *next;
    std::int64_t const at = deadline + 1;
    auto              &c  = draft_case(d, article_id);

    std::string const person_id = person_of(c.find_invitation(invitation_id)->reviewer_pseudonym);
    WorkflowEvent     ev;
    ev.type       = EventType::InvitationExpired;
    ev.article_id = article_id;
    ev.at         = at;
    ev.details    = {{"invitation_id", invitation_id}};
    d.push(std::move(ev));
    d.history.record_outcome(registry_, person_id, selection::Outcome::Expired, article_id);
    d.transitions.push_back(Transition{kind, article_id, invitation_id, at});

    send_replacement(d, c, at);
  }

  auto transitions = d.transitions;
  commit(std::move(d), now);
  return transitions;
}

ReviewCase const &Workflow::submit_report(std::string_view invitation_id,
                                          Recommendation recommendation, std::int64_t now)
{
  auto const article_id = article_of_invitation(invitation_id);
  Draft      d          = draft();
  auto      &c          = draft_case(d, article_id);
  if (c.is_terminal())
  {
    throw Error{ErrorKind::State, "case for '" + article_id + "' is closed"};
  }
  auto const &inv = *c.find_invitation(invitation_id);
  if (inv.state != InvitationState::Accepted)
  {
    throw Error{ErrorKind::State, "invitation '" + std::string{invitation_id} + "' is " +
                                      std::string{to_string(inv.state)} + ", not accepted"};
  }
  if (c.has_report(invitation_id, c.round))
  {
    throw Error{ErrorKind::Conflict,
                "report already submitted for '" + std::string{invitation_id} + "'"};
  }
  if (now > *inv.report_due)
  {
    throw Error{ErrorKind::Overdue, "report for '" + std::string{invitation_id} + "' was due at " +
                                        std::to_string(*inv.report_due)};
  }

  CodeName const    reviewer  = inv.reviewer_pseudonym;
  std::string const person_id = person_of(reviewer);

  WorkflowEvent ev;
  ev.type       = EventType::ReportSubmitted;
  ev.article_id = article_id;
  ev.actor      = reviewer.str();
  ev.at         = now;
  ev.details    = {{"invitation_id", std::string{invitation_id}},
                   {"recommendation", std::string{to_string(recommendation)}}};
  d.push(std::move(ev));
  d.history.record_outcome(registry_, person_id,
                           recommendation == Recommendation::Reject
                               ? selection::Outcome::ReportedReject
                               : selection::Outcome::ReportedAccept,
                           article_id);
  commit(std::move(d), now);
  return case_for(article_id);
}

ReviewCase const &Workflow::decide(std::string_view article_id, Verdict verdict,
                                   std::int64_t now)
{
  auto const &current = case_for(article_id);
  if (current.state != ArticleStatus::DecisionPending)
  {
    throw Error{ErrorKind::State, "article '" + std::string{article_id} + "' is " +
                                      std::string{registry::to_string(current.state)} +
                                      ", not awaiting a decision"};
  }
  Draft         d = draft();
  WorkflowEvent ev;
  ev.type       = EventType::Decision;
  ev.article_id = std::string{article_id};
  ev.at         = now;
  ev.details    = {{"verdict", std::string{to_string(verdict)}}};
  d.push(std::move(ev));
  commit(std::move(d), now);
  return case_for(article_id);
}

}  // namespace revchain::workflow
