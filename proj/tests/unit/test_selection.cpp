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

#include "test_support.hpp"

#include "revchain/error.hpp"
#include "revchain/selection/selection.hpp"

#include <doctest.h>

#include <algorithm>

using namespace revchain;
using namespace revchain::selection;
using nlohmann::json;
namespace rt = revchain::testing;

namespace {

json person(std::string const &id, std::vector<std::string> roles, std::vector<std::string> keywords)
{
  return json{{"person_id", id}, {"display_name", "N " + id}, {"roles", roles}, {"keywords", keywords}};
}

json article(std::string const &id, std::vector<std::string> authors, std::vector<std::string> keywords)
{
  return json{{"article_id", id},     {"title", id},           {"abstract", ""},
              {"keywords", keywords}, {"author_ids", authors}, {"submitted_at", 0}};
}

json corpus_of(json persons, json articles)
{
  return json{{"version", 1}, {"persons", std::move(persons)}, {"articles", std::move(articles)}};
}

std::vector<std::string> ids(CandidateList const &list)
{
  std::vector<std::string> out;
  for (auto const &c : list)
  {
    out.push_back(c.person_id);
  }
  return out;
}

std::vector<std::string> oracle_ids(rt::OracleSelection const &o)
{
  std::vector<std::string> out;
  for (auto const &c : o.filtered)
  {
    out.push_back(c.person_id);
  }
  return out;
}

// Pool of 10 reviewers: two authors of the target article, one co-author of
// an author, three demoted reviewers and four clean ones.
json pool_of_ten()
{
  json persons = json::array();
  persons.push_back(person("au1", {"Author", "Reviewer"}, {"k1", "k2"}));
  persons.push_back(person("au2", {"Author", "Reviewer"}, {"k1"}));
  persons.push_back(person("coa", {"Author", "Reviewer"}, {"k1", "k2", "k3"}));
  for (int i = 0; i < 3; ++i)
  {
    persons.push_back(person("low" + std::to_string(i), {"Reviewer"}, {"k1", "k2"}));
  }
  persons.push_back(person("ok0", {"Reviewer"}, {"k1"}));
  persons.push_back(person("ok1", {"Reviewer"}, {"k2", "k9"}));
  persons.push_back(person("ok2", {"Reviewer"}, {"k3"}));
  persons.push_back(person("ok3", {"Reviewer"}, {"k1", "k2", "k3"}));
  json articles = json::array();
  articles.push_back(article("target", {"au1", "au2"}, {"k1", "k2", "k3"}));
  articles.push_back(article("older", {"au2", "coa"}, {"k9"}));
  return corpus_of(persons, articles);
}

}  // namespace

TEST_CASE("no reviewer-role persons gives an empty list")
{
  auto const corpus = corpus_of(json::array({person("a", {"Author"}, {"k"})}),
                                json::array({article("x", {"a"}, {"k"})}));
  auto const reg = rt::registry_from(corpus);
  CHECK(filter_reviewers("x", reg, ReviewerHistory{}).empty());
}

TEST_CASE("equal scores tie-break by person id")
{
  auto const corpus = corpus_of(json::array({person("p2", {"Reviewer"}, {"a", "z"}),
                                             person("p1", {"Reviewer"}, {"a", "y"}),
                                             person("w", {"Author"}, {})}),
                                json::array({article("x", {"w"}, {"a"})}));
  auto const reg  = rt::registry_from(corpus);
  auto const list = filter_reviewers("x", reg, ReviewerHistory{});
  REQUIRE(list.size() == 2);
  CHECK(list[0].person_id == "p1");
  CHECK(list[1].person_id == "p2");
  CHECK(list[0].score == 0.5);
  CHECK(list[0].priority == Priority::Normal);
}

TEST_CASE("unknown article is a lookup error")
{
  auto const reg = rt::registry_from(pool_of_ten());
  try
  {
    filter_reviewers("missing", reg, ReviewerHistory{});
    FAIL("expected lookup error");
  }
  catch (Error const &e)
  {
    CHECK(e.kind() == ErrorKind::Lookup);
  }
}

TEST_CASE("min_score excludes scores at or below the threshold")
{
  auto const reg  = rt::registry_from(pool_of_ten());
  auto const all  = filter_reviewers("target", reg, ReviewerHistory{});
  auto const high = filter_reviewers("target", reg, ReviewerHistory{}, 0.5);
  CHECK(std::all_of(high.begin(), high.end(), [](Candidate const &c) { return c.score > 0.5; }));
  CHECK(high.size() < all.size());
  // ok1 shares one of four keywords.
  auto const all_ids = ids(all);
  CHECK(std::find(all_ids.begin(), all_ids.end(), "ok1") != all_ids.end());
}

TEST_CASE("history demotes to Low but never removes")
{
  auto const      corpus = pool_of_ten();
  auto const      reg    = rt::registry_from(corpus);
  ReviewerHistory history;
  history.record_outcome(reg, "low0", Outcome::Declined, "older");
  history.record_outcome(reg, "low1", Outcome::Expired, "older");
  history.record_outcome(reg, "low2", Outcome::ReportedReject, "target");
  auto const list = filter_reviewers("target", reg, history);
  auto const it   = std::find_if(list.begin(), list.end(),
                                 [](Candidate const &c) { return c.priority == Priority::Low; });
  REQUIRE(it != list.end());
  CHECK(std::all_of(it, list.end(), [](Candidate const &c) { return c.priority == Priority::Low; }));
  CHECK(std::distance(it, list.end()) == 3);

  auto const oracle = rt::oracle_select(corpus, history.to_json(), "target", 4);
  CHECK(ids(list) == oracle_ids(oracle));
}

TEST_CASE("ReportedReject on another article does not demote for this one")
{
  auto const      corpus = pool_of_ten();
  auto const      reg    = rt::registry_from(corpus);
  ReviewerHistory history;
  history.record_outcome(reg, "ok0", Outcome::ReportedReject, "older");
  for (auto const &c : filter_reviewers("target", reg, history))
  {
    CHECK(c.priority == Priority::Normal);
  }
}

TEST_CASE("exactly y eligible candidates are all selected in order")
{
  auto const reg  = rt::registry_from(pool_of_ten());
  auto const list = filter_reviewers("target", reg, ReviewerHistory{});
  auto const elig = eligible_reviewers(reg.article("target"), list, reg);
  REQUIRE(elig.size() == 7);
  auto const sr = select_reviewers(reg.article("target"), 6, list, reg);
  CHECK(sr.target == 6);
  CHECK(sr.person_ids == std::vector<std::string>(elig.begin(), elig.begin() + 6));
}

TEST_CASE("authors and co-authors are skipped and the next candidate promoted")
{
  auto const reg  = rt::registry_from(pool_of_ten());
  auto const list = filter_reviewers("target", reg, ReviewerHistory{});
  // coa scores 1.0 and au1 2/3, so both sit at the front of the list.
  CHECK(list.front().person_id == "coa");
  CHECK(has_conflict(reg.article("target"), "au1", reg));
  CHECK(has_conflict(reg.article("target"), "coa", reg));
  CHECK_FALSE(has_conflict(reg.article("target"), "ok3", reg));
  auto const sr = select_reviewers(reg.article("target"), 3, list, reg);
  CHECK(sr.person_ids.front() == "ok3");
  for (auto const &p : sr.person_ids)
  {
    CHECK(p != "au1");
    CHECK(p != "au2");
    CHECK(p != "coa");
  }
}

TEST_CASE("pool of ten with conflicts and three Low matches the oracle at y=4")
{
  auto const      corpus = pool_of_ten();
  auto const      reg    = rt::registry_from(corpus);
  ReviewerHistory history;
  history.record_outcome(reg, "low0", Outcome::Declined, "older");
  history.record_outcome(reg, "low1", Outcome::Declined, "older");
  history.record_outcome(reg, "low2", Outcome::Declined, "older");
  auto const list   = filter_reviewers("target", reg, history);
  auto const sr     = select_reviewers(reg.article("target"), 4, list, reg);
  auto const oracle = rt::oracle_select(corpus, history.to_json(), "target", 4);
  REQUIRE(oracle.ok);
  CHECK(sr.person_ids == oracle.selected);
  // Four clean Normal reviewers exist, so no Low is needed.
  for (auto const &p : sr.person_ids)
  {
    CHECK(p.rfind("ok", 0) == 0);
  }
  // At y=6 two Low candidates must fill in after every Normal.
  auto const six = select_reviewers(reg.article("target"), 6, list, reg);
  CHECK(six.person_ids == rt::oracle_select(corpus, history.to_json(), "target", 6).selected);
  CHECK(six.person_ids[4].rfind("low", 0) == 0);
}

TEST_CASE("y outside [3, 6] is a parameter error")
{
  auto const reg  = rt::registry_from(pool_of_ten());
  auto const list = filter_reviewers("target", reg, ReviewerHistory{});
  for (int y : {-1, 0, 2, 7})
  {
    try
    {
      select_reviewers(reg.article("target"), y, list, reg);
      FAIL("expected parameter error");
    }
    catch (Error const &e)
    {
      CHECK(e.kind() == ErrorKind::Parameter);
    }
  }
}

TEST_CASE("too few eligible candidates names the shortfall")
{
  auto corpus = pool_of_ten();
  corpus["persons"].erase(corpus["persons"].begin() + 6, corpus["persons"].end());
  auto const reg  = rt::registry_from(corpus);
  auto const list = filter_reviewers("target", reg, ReviewerHistory{});
  try
  {
    select_reviewers(reg.article("target"), 5, list, reg);
    FAIL("expected insufficient reviewers");
  }
  catch (InsufficientReviewersError const &e)
  {
    CHECK(e.kind() == ErrorKind::InsufficientReviewers);
    CHECK(e.wanted() == 5);
    CHECK(e.found() == 3);
    CHECK(e.shortfall() == 2);
  }
}

TEST_CASE("record_outcome examples")
{
  auto const      reg = rt::registry_from(pool_of_ten());
  ReviewerHistory h;
  h.record_outcome(reg, "ok0", Outcome::Declined, "target");
  CHECK(h.entry("ok0").declined_count == 1);

  h.record_outcome(reg, "ok1", Outcome::ReportedReject, "a7");
  CHECK(h.entry("ok1").negative_reviewed.count("a7") == 1);

  h.record_outcome(reg, "ok2", Outcome::Expired, "target");
  h.record_outcome(reg, "ok2", Outcome::Expired, "target");
  h.record_outcome(reg, "ok2", Outcome::Accepted, "target");
  h.record_outcome(reg, "ok2", Outcome::ReportedAccept, "target");
  CHECK(h.entry("ok2").declined_count == 2);
  CHECK(h.entry("ok2").negative_reviewed.empty());

  CHECK(h.entry("nobody") == HistoryEntry{});
  CHECK_THROWS_AS(h.record_outcome(reg, "nobody", Outcome::Declined, "target"), Error);
  CHECK(ReviewerHistory::from_json(h.to_json()) == h);
}

TEST_CASE("randomized registries agree with the oracle")
{
  std::mt19937_64 rng{2024};
  int             errors = 0;
  for (int round = 0; round < 300; ++round)
  {
    auto const corpus  = rt::random_corpus(rng, 12, 5);
    auto const history = rt::random_history(rng, corpus);
    auto const reg     = rt::registry_from(corpus);
    auto const hist    = ReviewerHistory::from_json(history);
    for (auto const &[aid, art] : reg.articles())
    {
      int const  y      = 3 + static_cast<int>(rng() % 4);
      auto const oracle = rt::oracle_select(corpus, history, aid, y);
      auto const list   = filter_reviewers(aid, reg, hist);
      CHECK(ids(list) == oracle_ids(oracle));
      try
      {
        auto const sr = select_reviewers(art, y, list, reg);
        CHECK(oracle.ok);
        CHECK(sr.person_ids == oracle.selected);
        CHECK(select_reviewers(art, y, list, reg) == sr);
      }
      catch (InsufficientReviewersError const &e)
      {
        ++errors;
        CHECK_FALSE(oracle.ok);
        CHECK(e.found() == oracle.eligible);
      }
    }
  }
  CHECK(errors > 0);
}
