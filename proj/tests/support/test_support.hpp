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

// Helpers shared by the unit tests and the acceptance binary. The oracles in
// here are written against the raw corpus JSON, not against the library, so
// they can catch mistakes in the library's own bookkeeping.

#include "revchain/ledger/chain.hpp"
#include "revchain/registry/registry.hpp"
#include "revchain/selection/history.hpp"
#include "revchain/workflow/workflow.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace revchain::testing {

// Values computed once with Python's hashlib and frozen here.
inline constexpr char const *kSha256Empty =
    "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855";
inline constexpr char const *kGenesisHash =
    "ff7b7f6767b39e269028314bf5660aeb815f1f1827475026e2ef91bc1913522a";
// sha256("7|1700000000000|" + "ab"*32 + "|" + kSha256Empty + "|42")
inline constexpr char const *kSampleBlockHash =
    "1584a9b696ebeed8370bfe429076d71ac0f86ad5729015e8b455114da60e4a0f";
// sha256(bytes 0x00..0x1f || "person-alice")
inline constexpr char const *kAlicePseudonym =
    "27a1a1d85a5341f25988635a3d204b35bc62442428459097ea11941d8c185c39";

ledger::Salt counting_salt();  // 0x00, 0x01, ..., 0x1f
ledger::Salt salt_from_seed(std::uint64_t seed);

registry::Registry registry_from(nlohmann::json const &corpus);

// ---------------------------------------------------------------------------
// Selection oracle

struct Fraction
{
  std::int64_t num = 0;
  std::int64_t den = 1;
};

struct OracleCandidate
{
  std::string person_id;
  Fraction    score;
  bool        low = false;
};

struct OracleSelection
{
  std::vector<OracleCandidate> filtered;  // the sorted candidate list
  std::vector<std::string>     selected;  // first y eligible, if there are enough
  int                          eligible = 0;
  bool                         ok       = false;
};

/// Filter, classify, sort and walk, straight from the corpus document and a
/// history document in ReviewerHistory::to_json form. Scores are exact
/// fractions; min_score is 0.
OracleSelection oracle_select(nlohmann::json const &corpus, nlohmann::json const &history,
                              std::string const &article_id, int y);

/// Random corpus with at most `max_persons` persons and `max_articles`
/// articles, drawn from a small keyword pool so that ties are common.
nlohmann::json random_corpus(std::mt19937_64 &rng, int max_persons, int max_articles);
nlohmann::json random_history(std::mt19937_64 &rng, nlohmann::json const &corpus);

// ---------------------------------------------------------------------------
// Chains

/// Appends `blocks` freshly mined blocks with random payloads.
ledger::Chain random_chain(std::mt19937_64 &rng, int difficulty, int blocks);

// ---------------------------------------------------------------------------
// Workflow scenarios

/// Corpus for end-to-end runs: `reviewers` reviewers sharing keywords with
/// `articles` articles by two authors. Every id and display name contains
/// letters outside [0-9a-f], so a substring scan of hex data cannot produce a
/// false match.
nlohmann::json scenario_corpus(int reviewers, int articles);

struct ScenarioStats
{
  int commands          = 0;
  int rejected_commands = 0;  // domain errors raised by the engine
  int terminal_cases    = 0;
  std::vector<std::string> violations;
};

struct ScenarioWorld
{
  registry::Registry         registry;
  selection::ReviewerHistory history;
  ledger::Chain              chain;
  std::int64_t               now = 0;

  explicit ScenarioWorld(ledger::Chain c)
    : chain{std::move(c)}
  {}
};

/// Drives `wf` with a random mix of commands and clock advances, checking
/// the timing constants after every step. `steps` bounds the command count.
ScenarioStats run_random_scenario(std::mt19937_64 &rng, ScenarioWorld &world,
                                  workflow::Workflow &wf, int steps);

/// A temporary directory removed on destruction.
class TempDir
{
public:
  TempDir();
  ~TempDir();
  TempDir(TempDir const &)            = delete;
  TempDir &operator=(TempDir const &) = delete;

  std::filesystem::path const &path() const noexcept
  {
    return path_;
  }

private:
  std::filesystem::path path_;
};

}  // namespace revchain::testing
