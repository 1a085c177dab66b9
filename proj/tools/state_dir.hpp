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

#include <cstdint>
#include <filesystem>
#include <optional>

namespace revchain::cli {

// On-disk layout:
//   chain.jsonl   the ledger
//   registry.json persons and articles, corpus format
//   history.json  reviewer history
//   outbox/       one JSON file per invitation
//   clock         simulated time in ms, decimal text
//   .lock         flock target; held for the life of a command
inline constexpr char const *kChainFile    = "chain.jsonl";
inline constexpr char const *kRegistryFile = "registry.json";
inline constexpr char const *kHistoryFile  = "history.json";
inline constexpr char const *kOutboxDir    = "outbox";
inline constexpr char const *kClockFile    = "clock";
inline constexpr char const *kLockFile     = ".lock";

inline constexpr int kDefaultDifficulty = 3;

/// Exclusive advisory lock on the state directory.
class DirLock
{
public:
  explicit DirLock(std::filesystem::path const &dir);
  ~DirLock();

  DirLock(DirLock const &)            = delete;
  DirLock &operator=(DirLock const &) = delete;

private:
  int fd_ = -1;
};

/// Creates a fresh state directory. Error{Conflict} if one already exists.
void init_state(std::filesystem::path const &dir, ledger::Difficulty difficulty);

/// Everything a command needs, loaded under the directory lock. Nothing is
/// written back unless save() is called.
class State
{
  std::filesystem::path dir_;
  DirLock               lock_;

public:
  explicit State(std::filesystem::path dir);

  std::filesystem::path const &dir() const noexcept
  {
    return dir_;
  }
  std::filesystem::path outbox_dir() const
  {
    return dir_ / kOutboxDir;
  }

  registry::Registry         registry;
  selection::ReviewerHistory history;
  ledger::Chain              chain;
  std::int64_t               clock_ms = 0;

  void save() const;
};

std::int64_t wall_clock_ms();

}  // namespace revchain::cli
