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

#include <optional>
#include <string>

namespace revchain::node {

struct ForkResolution
{
  ledger::Chain              chosen;
  bool                       adopted_remote = false;
  std::optional<std::string> rejection;  // set when the remote failed validation
};

/// Longest valid chain wins; equal lengths go to the smaller tip hash, so
/// both sides of a fork pick the same winner. An invalid remote is never
/// adopted. Throws Error{Protocol} when the genesis blocks differ, or when
/// the chain parameters differ and the local chain already holds blocks
/// (a genesis-only local chain adopts the remote's parameters).
ForkResolution resolve_fork(ledger::Chain const &local, ledger::Chain const &remote);

}  // namespace revchain::node
