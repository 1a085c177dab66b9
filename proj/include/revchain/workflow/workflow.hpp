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
#include "revchain/selection/history.hpp"
#include "revchain/selection/selection.hpp"
#include "revchain/workflow/review_case.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revchain::workflow {

struct Transition
{
  enum class Kind
  {
    ResponseExpired,  // no answer within the response window
    ReportOverdue,    // accepted but no report within the report window
    ReplacementSent,
  };

  Kind         kind;
  std::string  article_id;
  std::string  invitation_id;
  std::int64_t at = 0;

  bool operator==(Transition const &) const = default;
};

/// Writes one `{invitation_id}.json` per invitation into a directory; the
/// stand-in for emailing reviewers.
class Outbox
{
public:
  explicit Outbox(std::filesystem::path dir);

  void                         deliver(Invitation const &invitation) const;
  std::filesystem::path const &dir() const noexcept
  {
    return dir_;
  }

private:
  std::filesystem::path dir_;
};

struct WorkflowOptions
{
  double                min_score = 0.0;
  std::optional<Outbox> outbox;
};

/// The review state machine. Each command validates against the current case,
/// derives the events it implies, mines one block per event on top of the
/// chain, and only then commits: a command that throws leaves the chain, the
/// cases, the history and the outbox untouched.
///
/// Case state is never stored separately; it is rebuilt from the chain on
/// construction.
class Workflow
{
public:
  Workflow(registry::Registry &registry, selection::ReviewerHistory &history,
           ledger::Chain &chain, WorkflowOptions options = {});

  ReviewCase const &submit_manuscript(std::string_view article_id, std::int64_t now);

  /// Proceed commits the Screened event first, then selects `y` reviewers and
  /// dispatches; if selection fails the case stays in Screening.
  ReviewCase const &screen(std::string_view article_id, ScreenDecision decision,
                           std::int64_t now, int y = kInitialInvitations);

  ReviewCase const &dispatch_invitations(std::string_view                   article_id,
                                         selection::SelectedReviewers const &selected,
                                         std::int64_t                        now);

  ReviewCase const &respond(std::string_view invitation_id, Answer answer, std::int64_t now);

  /// Expires every deadline strictly before `now`, in deadline order. Each
  /// expiry takes effect 1 ms after its deadline, so tick(t1); tick(t2) has
  /// the same effect as tick(t2) alone.
  std::vector<Transition> tick(std::int64_t now);

  ReviewCase const &submit_report(std::string_view invitation_id, Recommendation recommendation,
                                  std::int64_t now);

  ReviewCase const &decide(std::string_view article_id, Verdict verdict, std::int64_t now);

  ReviewCase const &case_for(std::string_view article_id) const;
  CaseMap const    &cases() const noexcept
  {
    return cases_;
  }

  /// Article id owning `invitation_id`; Error{Lookup} when unknown.
  std::string const &article_of_invitation(std::string_view invitation_id) const;

private:

  /// Pending work for one command, built on a scratch copy of the cases.
  struct Draft
  {
    CaseMap                    cases;
    std::vector<WorkflowEvent> events;
    /// History with this command's outcomes applied, so replacements chosen
    /// later in the same command already see earlier demotions.
    selection::ReviewerHistory history;
    std::vector<Invitation>    outbox;
    std::vector<Transition>    transitions;

    void push(WorkflowEvent ev);
  };

  Draft              draft() const;
  void               commit(Draft &&draft, std::int64_t now);
  ReviewCase        &draft_case(Draft &d, std::string_view article_id) const;
  registry::CodeName pseudonym_of(std::string const &person_id) const;
  std::string        person_of(registry::CodeName const &pseudonym) const;
  void               send_invitation(Draft &d, ReviewCase &c, std::string const &person_id,
                                     std::int64_t at) const;
  bool               send_replacement(Draft &d, ReviewCase &c, std::int64_t at) const;

  registry::Registry         &registry_;
  selection::ReviewerHistory &history_;
  ledger::Chain              &chain_;
  WorkflowOptions             options_;
  CaseMap                     cases_;
};

}  // namespace revchain::workflow
