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

#include "state_dir.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/chain_file.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

namespace revchain::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(fs::path const &path)
{
  std::ifstream in{path, std::ios::binary};
  if (!in)
  {
    throw Error{ErrorKind::Io, "cannot read " + path.string()};
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json read_json(fs::path const &path)
{
  try
  {
    return json::parse(read_text(path));
  }
  catch (json::exception const &)
  {
    throw Error{ErrorKind::Schema, path.string() + " is not valid JSON"};
  }
}

void require_state(fs::path const &dir)
{
  if (!fs::exists(dir / kChainFile))
  {
    throw Error{ErrorKind::Config, "no state in " + dir.string() + " (run `revchain init` first)"};
  }
}

ledger::Chain load_state_chain(fs::path const &dir)
{
  require_state(dir);
  return ledger::load_chain(dir / kChainFile);
}

std::int64_t parse_clock(std::string const &text)
{
  std::string_view trimmed{text};
  while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == ' '))
  {
    trimmed.remove_suffix(1);
  }
  std::int64_t value = 0;
  auto const [end, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (ec != std::errc{} || end != trimmed.data() + trimmed.size() || value < 0)
  {
    throw Error{ErrorKind::Schema, "clock file does not hold a non-negative integer"};
  }
  return value;
}

}  // namespace

DirLock::DirLock(fs::path const &dir)
{
  require_state(dir);
  auto const path = dir / kLockFile;
  fd_             = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0)
  {
    throw Error{ErrorKind::Io, "cannot open lock file " + path.string()};
  }
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0)
  {
    ::close(fd_);
    throw Error{ErrorKind::Conflict, "state directory " + dir.string() + " is in use"};
  }
}

DirLock::~DirLock()
{
  if (fd_ >= 0)
  {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

void init_state(fs::path const &dir, ledger::Difficulty difficulty)
{
  if (fs::exists(dir / kChainFile))
  {
    throw Error{ErrorKind::Conflict, "state already initialised in " + dir.string()};
  }
  fs::create_directories(dir / kOutboxDir);
  registry::Registry const         empty_registry;
  selection::ReviewerHistory const empty_history;
  ledger::write_file_atomic(dir / kRegistryFile, empty_registry.to_corpus().dump(2) + "\n");
  ledger::write_file_atomic(dir / kHistoryFile, empty_history.to_json().dump(2) + "\n");
  ledger::write_file_atomic(dir / kClockFile, "0\n");
  // Chain last: its presence is what marks the directory as initialised.
  ledger::save_chain(ledger::Chain{difficulty, ledger::random_salt()}, dir / kChainFile);
}

State::State(fs::path dir)
  : dir_{std::move(dir)}
  , lock_{dir_}
  , chain{load_state_chain(dir_)}
{
  auto const report = registry.ingest(read_json(dir_ / kRegistryFile));
  if (!report.rejects.empty())
  {
    throw Error{ErrorKind::Schema, kRegistryFile + std::string{": "} +
                                       report.rejects.front().record + ": " +
                                       report.rejects.front().reason};
  }
  history  = selection::ReviewerHistory::from_json(read_json(dir_ / kHistoryFile));
  clock_ms = parse_clock(read_text(dir_ / kClockFile));
  fs::create_directories(outbox_dir());
}

void State::save() const
{
  ledger::save_chain(chain, dir_ / kChainFile);
  ledger::write_file_atomic(dir_ / kRegistryFile, registry.to_corpus().dump(2) + "\n");
  ledger::write_file_atomic(dir_ / kHistoryFile, history.to_json().dump(2) + "\n");
  ledger::write_file_atomic(dir_ / kClockFile, std::to_string(clock_ms) + "\n");
}

std::int64_t wall_clock_ms()
{
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace revchain::cli
