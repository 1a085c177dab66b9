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

#include "revchain/registry/registry.hpp"

#include "revchain/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace revchain::registry {

std::string_view to_string(Role role)
{
  return role == Role::Author ? "Author" : "Reviewer";
}

namespace {

constexpr std::array<std::pair<ArticleStatus, std::string_view>, 9> kStatusNames = {{
    {ArticleStatus::Submitted, "Submitted"},
    {ArticleStatus::Screening, "Screening"},
    {ArticleStatus::DeskRejected, "DeskRejected"},
    {ArticleStatus::InvitationsOut, "InvitationsOut"},
    {ArticleStatus::InReview, "InReview"},
    {ArticleStatus::DecisionPending, "DecisionPending"},
    {ArticleStatus::Revise, "Revise"},
    {ArticleStatus::Accepted, "Accepted"},
    {ArticleStatus::Rejected, "Rejected"},
}};

}  // namespace

std::string_view to_string(ArticleStatus status)
{
  for (auto const &[s, name] : kStatusNames)
  {
    if (s == status)
    {
      return name;
    }
  }
  return "Unknown";
}

std::optional<ArticleStatus> parse_status(std::string_view text)
{
  for (auto const &[s, name] : kStatusNames)
  {
    if (name == text)
    {
      return s;
    }
  }
  return std::nullopt;
}

bool Article::same_record(Article const &other) const
{
  return article_id == other.article_id && title == other.title && abstract == other.abstract &&
         keywords == other.keywords && author_ids == other.author_ids &&
         submitted_at == other.submitted_at;
}

CodeName code_name(ledger::Salt const &salt, std::string_view person_id)
{
  ledger::Bytes preimage(salt.begin(), salt.end());
  preimage.insert(preimage.end(), person_id.begin(), person_id.end());
  return CodeName{ledger::to_hex(ledger::sha256(preimage))};
}

KeywordSet normalize_keywords(std::vector<std::string> const &raw)
{
  KeywordSet out;
  for (auto const &kw : raw)
  {
    auto const is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    auto       first    = std::find_if_not(kw.begin(), kw.end(), is_space);
    auto       last     = std::find_if_not(kw.rbegin(), kw.rend(), is_space).base();
    if (first >= last)
    {
      continue;
    }
    std::string word(first, last);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.insert(std::move(word));
  }
  return out;
}

double jaccard(KeywordSet const &a, KeywordSet const &b)
{
  if (a.empty() || b.empty())
  {
    return 0.0;
  }
  std::size_t shared = 0;
  auto        ia     = a.begin();
  auto        ib     = b.begin();
  while (ia != a.end() && ib != b.end())
  {
    if (*ia < *ib)
    {
      ++ia;
    }
    else if (*ib < *ia)
    {
      ++ib;
    }
    else
    {
      ++shared;
      ++ia;
      ++ib;
    }
  }
  std::size_t const combined = a.size() + b.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(combined);
}

double keyword_score(Person const &reviewer, Article const &article)
{
  return jaccard(reviewer.keywords, article.keywords);
}

Person const *Registry::find_person(std::string_view person_id) const
{
  auto const it = persons_.find(person_id);
  return it == persons_.end() ? nullptr : &it->second;
}

Article const *Registry::find_article(std::string_view article_id) const
{
  auto const it = articles_.find(article_id);
  return it == articles_.end() ? nullptr : &it->second;
}

Person const &Registry::person(std::string_view person_id) const
{
  if (auto const *p = find_person(person_id))
  {
    return *p;
  }
  throw Error{ErrorKind::Lookup, "unknown person '" + std::string{person_id} + "'"};
}

Article const &Registry::article(std::string_view article_id) const
{
  if (auto const *a = find_article(article_id))
  {
    return *a;
  }
  throw Error{ErrorKind::Lookup, "unknown article '" + std::string{article_id} + "'"};
}

std::set<std::string> const &Registry::coauthors(std::string_view person_id) const
{
  static std::set<std::string> const kNone;
  auto const                         it = coauthors_.find(person_id);
  return it == coauthors_.end() ? kNone : it->second;
}

bool Registry::are_coauthors(std::string_view a, std::string_view b) const
{
  auto const &set = coauthors(a);
  return set.find(std::string{b}) != set.end();
}

CodeName Registry::pseudonym(std::string_view person_id, ledger::Salt const &salt) const
{
  return code_name(salt, person(person_id).person_id);
}

void Registry::set_article_status(std::string_view article_id, ArticleStatus status)
{
  auto const it = articles_.find(article_id);
  if (it == articles_.end())
  {
    throw Error{ErrorKind::Lookup, "unknown article '" + std::string{article_id} + "'"};
  }
  it->second.status = status;
}

void Registry::rebuild_coauthorship()
{
  coauthors_.clear();
  for (auto const &[id, art] : articles_)
  {
    for (auto const &a : art.author_ids)
    {
      for (auto const &b : art.author_ids)
      {
        if (a != b)
        {
          coauthors_[a].insert(b);
        }
      }
    }
  }
}

}  // namespace revchain::registry
