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

// Corpus ingestion. Document shape:
//
//   {"version": 1,
//    "persons":  [{"person_id", "display_name", "roles", "keywords", "orcid_like_id"?}],
//    "articles": [{"article_id", "title", "abstract", "keywords", "author_ids", "submitted_at"}]}

#include "revchain/error.hpp"
#include "revchain/registry/registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace revchain::registry {

using nlohmann::json;

namespace {

/// Record-level problem; turned into an IngestReject by the caller.
struct RecordError
{
  std::string reason;
};

void allow_only(json const &record, std::initializer_list<std::string_view> keys)
{
  for (auto const &item : record.items())
  {
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end())
    {
      throw RecordError{"unknown field '" + item.key() + "'"};
    }
  }
}

std::string const &require_string(json const &record, char const *key)
{
  auto const it = record.find(key);
  if (it == record.end())
  {
    throw RecordError{std::string{"missing "} + key};
  }
  if (!it->is_string())
  {
    throw RecordError{std::string{key} + " must be a string"};
  }
  return it->get_ref<std::string const &>();
}

std::vector<std::string> require_string_array(json const &record, char const *key)
{
  auto const it = record.find(key);
  if (it == record.end())
  {
    throw RecordError{std::string{"missing "} + key};
  }
  if (!it->is_array())
  {
    throw RecordError{std::string{key} + " must be an array"};
  }
  std::vector<std::string> out;
  for (auto const &v : *it)
  {
    if (!v.is_string())
    {
      throw RecordError{std::string{key} + " must contain strings only"};
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

Person parse_person(json const &record)
{
  if (!record.is_object())
  {
    throw RecordError{"record is not an object"};
  }
  Person p;
  p.person_id = require_string(record, "person_id");
  if (p.person_id.empty())
  {
    throw RecordError{"missing person_id"};
  }
  allow_only(record, {"person_id", "display_name", "roles", "keywords", "orcid_like_id"});
  p.display_name = require_string(record, "display_name");

  for (auto const &r : require_string_array(record, "roles"))
  {
    if (r == "Author")
    {
      p.roles.insert(Role::Author);
    }
    else if (r == "Reviewer")
    {
      p.roles.insert(Role::Reviewer);
    }
    else
    {
      throw RecordError{"unknown role '" + r + "'"};
    }
  }
  if (p.roles.empty())
  {
    throw RecordError{"roles must be non-empty"};
  }
  p.keywords = normalize_keywords(require_string_array(record, "keywords"));
  if (record.contains("orcid_like_id"))
  {
    p.orcid_like_id = require_string(record, "orcid_like_id");
  }
  return p;
}

Article parse_article(json const &record)
{
  if (!record.is_object())
  {
    throw RecordError{"record is not an object"};
  }
  Article a;
  a.article_id = require_string(record, "article_id");
  if (a.article_id.empty())
  {
    throw RecordError{"missing article_id"};
  }
  allow_only(record,
             {"article_id", "title", "abstract", "keywords", "author_ids", "submitted_at"});
  a.title      = require_string(record, "title");
  a.abstract   = require_string(record, "abstract");
  a.keywords   = normalize_keywords(require_string_array(record, "keywords"));
  a.author_ids = require_string_array(record, "author_ids");
  if (a.author_ids.empty())
  {
    throw RecordError{"author_ids must be non-empty"};
  }
  for (std::size_t i = 0; i < a.author_ids.size(); ++i)
  {
    for (std::size_t j = 0; j < i; ++j)
    {
      if (a.author_ids[i] == a.author_ids[j])
      {
        throw RecordError{"duplicate author '" + a.author_ids[i] + "'"};
      }
    }
  }
  auto const ts = record.find("submitted_at");
  if (ts == record.end())
  {
    throw RecordError{"missing submitted_at"};
  }
  if (!ts->is_number_integer())
  {
    throw RecordError{"submitted_at must be an integer"};
  }
  a.submitted_at = ts->get<std::int64_t>();
  return a;
}

std::string locator(char const *array, std::size_t i, std::string const &id)
{
  std::string out = std::string{array} + "[" + std::to_string(i) + "]";
  if (!id.empty())
  {
    out += " " + id;
  }
  return out;
}

std::string id_of(json const &record, char const *key)
{
  if (record.is_object())
  {
    auto const it = record.find(key);
    if (it != record.end() && it->is_string())
    {
      return it->get<std::string>();
    }
  }
  return {};
}

}  // namespace

IngestReport Registry::ingest(json const &corpus)
{
  if (!corpus.is_object())
  {
    throw Error{ErrorKind::Schema, "corpus must be a JSON object"};
  }
  auto const version = corpus.find("version");
  if (version == corpus.end() || !version->is_number_integer() || version->get<std::int64_t>() != 1)
  {
    throw Error{ErrorKind::Schema, "unsupported corpus schema version"};
  }
  for (auto const &item : corpus.items())
  {
    if (item.key() != "version" && item.key() != "persons" && item.key() != "articles")
    {
      throw Error{ErrorKind::Schema, "unknown top-level field '" + item.key() + "'"};
    }
  }
  auto const persons  = corpus.find("persons");
  auto const articles = corpus.find("articles");
  if (persons == corpus.end() || !persons->is_array() || articles == corpus.end() ||
      !articles->is_array())
  {
    throw Error{ErrorKind::Schema, "corpus needs 'persons' and 'articles' arrays"};
  }

  IngestReport report;

  for (std::size_t i = 0; i < persons->size(); ++i)
  {
    auto const &record = (*persons)[i];
    try
    {
      Person     p  = parse_person(record);
      auto const it = persons_.find(p.person_id);
      if (it != persons_.end())
      {
        if (!(it->second == p))
        {
          throw RecordError{"conflicts with existing person record"};
        }
        continue;
      }
      persons_.emplace(p.person_id, std::move(p));
      ++report.persons_added;
    }
    catch (RecordError const &e)
    {
      report.rejects.push_back({locator("persons", i, id_of(record, "person_id")), e.reason});
    }
  }

  for (std::size_t i = 0; i < articles->size(); ++i)
  {
    auto const &record = (*articles)[i];
    try
    {
      Article a = parse_article(record);
      for (auto const &author : a.author_ids)
      {
        if (!find_person(author))
        {
          throw RecordError{"unknown author '" + author + "'"};
        }
      }
      auto const it = articles_.find(a.article_id);
      if (it != articles_.end())
      {
        if (!it->second.same_record(a))
        {
          throw RecordError{"conflicts with existing article record"};
        }
        continue;
      }
      articles_.emplace(a.article_id, std::move(a));
      ++report.articles_added;
    }
    catch (RecordError const &e)
    {
      report.rejects.push_back({locator("articles", i, id_of(record, "article_id")), e.reason});
    }
  }

  rebuild_coauthorship();
  return report;
}

IngestReport Registry::ingest_file(std::filesystem::path const &path)
{
  std::ifstream in{path, std::ios::binary};
  if (!in)
  {
    throw Error{ErrorKind::Io, "cannot open corpus " + path.string()};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  json doc;
  try
  {
    doc = json::parse(buf.str());
  }
  catch (json::exception const &e)
  {
    throw Error{ErrorKind::Schema, std::string{"corpus is not valid JSON: "} + e.what()};
  }
  return ingest(doc);
}

json Registry::to_corpus() const
{
  json doc;
  doc["version"]  = 1;
  auto &persons   = doc["persons"] = json::array();
  auto &articles  = doc["articles"] = json::array();
  for (auto const &[id, p] : persons_)
  {
    json rec;
    rec["person_id"]    = p.person_id;
    rec["display_name"] = p.display_name;
    rec["roles"]        = json::array();
    for (auto r : p.roles)
    {
      rec["roles"].push_back(std::string{to_string(r)});
    }
    rec["keywords"] = p.keywords;
    if (p.orcid_like_id)
    {
      rec["orcid_like_id"] = *p.orcid_like_id;
    }
    persons.push_back(std::move(rec));
  }
  for (auto const &[id, a] : articles_)
  {
    json rec;
    rec["article_id"]   = a.article_id;
    rec["title"]        = a.title;
    rec["abstract"]     = a.abstract;
    rec["keywords"]     = a.keywords;
    rec["author_ids"]   = a.author_ids;
    rec["submitted_at"] = a.submitted_at;
    articles.push_back(std::move(rec));
  }
  return doc;
}

}  // namespace revchain::registry
