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

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace revchain::registry {

enum class Role
{
  Author,
  Reviewer,
};

enum class ArticleStatus
{
  Submitted,
  Screening,
  DeskRejected,
  InvitationsOut,
  InReview,
  DecisionPending,
  Revise,
  Accepted,
  Rejected,
};

std::string_view to_string(Role role);
std::string_view to_string(ArticleStatus status);
std::optional<ArticleStatus> parse_status(std::string_view text);

using KeywordSet = std::set<std::string>;

struct Person
{
  std::string                person_id;
  std::string                display_name;  // never written on-chain
  std::set<Role>             roles;
  KeywordSet                 keywords;
  std::optional<std::string> orcid_like_id;

  bool is_reviewer() const
  {
    return roles.count(Role::Reviewer) != 0;
  }

  bool operator==(Person const &) const = default;
};

struct Article
{
  std::string              article_id;
  std::string              title;
  std::string              abstract;
  KeywordSet               keywords;
  std::vector<std::string> author_ids;
  ArticleStatus            status       = ArticleStatus::Submitted;
  std::int64_t             submitted_at = 0;

  /// Compares the ingested fields only; status is workflow-owned.
  bool same_record(Article const &other) const;
};

/// Salted SHA-256 of a person identifier, 64 lowercase hex characters.
class CodeName
{
public:
  CodeName() = default;
  explicit CodeName(std::string hex)
    : hex_{std::move(hex)}
  {}

  std::string const &str() const noexcept
  {
    return hex_;
  }

  auto operator<=>(CodeName const &) const = default;

private:
  std::string hex_;
};

/// sha256(salt || utf8(person_id)) in hex.
CodeName code_name(ledger::Salt const &salt, std::string_view person_id);

/// Lowercase, trim, drop empties; the set deduplicates.
KeywordSet normalize_keywords(std::vector<std::string> const &raw);

/// Jaccard index |a ∩ b| / |a ∪ b|, 0 when either set is empty.
double jaccard(KeywordSet const &a, KeywordSet const &b);

double keyword_score(Person const &reviewer, Article const &article);

struct IngestReject
{
  std::string record;  // "persons[3]" style locator plus id when known
  std::string reason;
};

struct IngestReport
{
  std::size_t               persons_added  = 0;
  std::size_t               articles_added = 0;
  std::vector<IngestReject> rejects;
};

class Registry
{
public:
  /// Ingests a parsed corpus document. Throws Error{Schema} when the document
  /// itself is unusable (wrong version, missing arrays); bad individual
  /// records are listed in the report instead.
  IngestReport ingest(nlohmann::json const &corpus);
  IngestReport ingest_file(std::filesystem::path const &path);

  /// The registry as a version-1 corpus document; ingesting it into an empty
  /// registry reproduces this one.
  nlohmann::json to_corpus() const;

  Person const  &person(std::string_view person_id) const;   // Error{Lookup}
  Article const &article(std::string_view article_id) const; // Error{Lookup}
  Person const  *find_person(std::string_view person_id) const;
  Article const *find_article(std::string_view article_id) const;

  std::map<std::string, Person, std::less<>> const &persons() const noexcept
  {
    return persons_;
  }
  std::map<std::string, Article, std::less<>> const &articles() const noexcept
  {
    return articles_;
  }

  /// Everyone who shares at least one article with `person_id`.
  std::set<std::string> const &coauthors(std::string_view person_id) const;
  bool are_coauthors(std::string_view a, std::string_view b) const;

  /// Pseudonym of a registered person; Error{Lookup} when unknown.
  CodeName pseudonym(std::string_view person_id, ledger::Salt const &salt) const;

  /// Workflow-only mutation of an article's status.
  void set_article_status(std::string_view article_id, ArticleStatus status);

private:
  void rebuild_coauthorship();

  std::map<std::string, Person, std::less<>>                persons_;
  std::map<std::string, Article, std::less<>>               articles_;
  std::map<std::string, std::set<std::string>, std::less<>> coauthors_;
};

}  // namespace revchain::registry
