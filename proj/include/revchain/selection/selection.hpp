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
#include "revchain/selection/history.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace revchain::selection {

inline constexpr int kMinReviewers = 3;
inline constexpr int kMaxReviewers = 6;

enum class Priority
{
  Normal,
  Low,
};

struct Candidate
{
  std::string person_id;
  double      score    = 0.0;
  Priority    priority = Priority::Normal;

  bool operator==(Candidate const &) const = default;
};

/// Ordered by (Normal before Low, score descending, person_id ascending).
using CandidateList = std::vector<Candidate>;

struct SelectedReviewers
{
  std::vector<std::string> person_ids;
  int                      target = 0;

  bool operator==(SelectedReviewers const &) const = default;
};

/// Reviewer-role persons whose keyword score beats `min_score`. A candidate is
/// Low priority if they ever declined or let an invitation lapse, or if they
/// previously reviewed this article with a reject. Authors are not removed
/// here; select_reviewers does that.
CandidateList filter_reviewers(std::string_view article_id, registry::Registry const &registry,
                               ReviewerHistory const &history, double min_score = 0.0);

/// True when `person_id` wrote the article or co-authored anything with one
/// of its authors.
bool has_conflict(registry::Article const &article, std::string_view person_id,
                  registry::Registry const &registry);

/// `candidates` with every conflicted person removed, order preserved.
std::vector<std::string> eligible_reviewers(registry::Article const &article,
                                            CandidateList const      &candidates,
                                            registry::Registry const &registry);

/// First `y` eligible candidates. Throws Error{Parameter} when y is outside
/// [3, 6] and InsufficientReviewersError when fewer than y remain.
SelectedReviewers select_reviewers(registry::Article const &article, int y,
                                   CandidateList const      &candidates,
                                   registry::Registry const &registry);

}  // namespace revchain::selection
