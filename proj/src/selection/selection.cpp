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

#include "revchain/selection/selection.hpp"

#include "revchain/error.hpp"

#include <algorithm>

namespace revchain::selection {

CandidateList filter_reviewers(std::string_view article_id, registry::Registry const &registry,
                               ReviewerHistory const &history, double min_score)
{
  if (min_score < 0.0 || min_score > 1.0)
  {
    throw Error{ErrorKind::Parameter, "min_score must lie in [0, 1]"};
  }
  auto const &article = registry.article(article_id);

  CandidateList out;
  for (auto const &[id, person] : registry.persons())
  {
    if (!person.is_reviewer())
    {
      continue;
    }
    double const score = registry::keyword_score(person, article);
    if (!(score > min_score))
    {
      continue;
    }
    auto const entry = history.entry(id);
    bool const low   = entry.declined_count > 0 ||
                     entry.negative_reviewed.count(article.article_id) != 0;
    out.push_back(Candidate{id, score, low ? Priority::Low : Priority::Normal});
  }

  std::sort(out.begin(), out.end(), [](Candidate const &a, Candidate const &b) {
    if (a.priority != b.priority)
    {
      return a.priority == Priority::Normal;
    }
    if (a.score != b.score)
    {
      return a.score > b.score;
    }
    return a.person_id < b.person_id;
  });
  return out;
}

bool has_conflict(registry::Article const &article, std::string_view person_id,
                  registry::Registry const &registry)
{
  for (auto const &author : article.author_ids)
  {
    if (author == person_id || registry.are_coauthors(author, person_id))
    {
      return true;
    }
  }
  return false;
}

std::vector<std::string> eligible_reviewers(registry::Article const &article,
                                            CandidateList const      &candidates,
                                            registry::Registry const &registry)
{
  std::vector<std::string> out;
  for (auto const &c : candidates)
  {
    if (!has_conflict(article, c.person_id, registry))
    {
      out.push_back(c.person_id);
    }
  }
  return out;
}

SelectedReviewers select_reviewers(registry::Article const &article, int y,
                                   CandidateList const      &candidates,
                                   registry::Registry const &registry)
{
  if (y < kMinReviewers || y > kMaxReviewers)
  {
    throw Error{ErrorKind::Parameter, "reviewer count must be in [" +
                                          std::to_string(kMinReviewers) + ", " +
                                          std::to_string(kMaxReviewers) + "], got " +
                                          std::to_string(y)};
  }

  SelectedReviewers sr;
  sr.target = y;
  for (auto const &id : eligible_reviewers(article, candidates, registry))
  {
    if (static_cast<int>(sr.person_ids.size()) == y)
    {
      break;
    }
    sr.person_ids.push_back(id);
  }
  if (static_cast<int>(sr.person_ids.size()) < y)
  {
    throw InsufficientReviewersError{y, static_cast<int>(sr.person_ids.size())};
  }
  return sr;
}

}  // namespace revchain::selection
