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

#include "revchain/node/fork.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/validate.hpp"
#include "revchain/node/message.hpp"

namespace revchain::node {

ForkResolution resolve_fork(ledger::Chain const &local, ledger::Chain const &remote)
{
  if (local.blocks().empty() || remote.blocks().empty())
  {
    throw Error{ErrorKind::Protocol, "cannot resolve a fork against an empty chain"};
  }
  if (remote.blocks().front() != local.blocks().front())
  {
    throw Error{ErrorKind::Protocol, "genesis mismatch"};
  }
  bool const same_params =
      remote.difficulty() == local.difficulty() && remote.salt() == local.salt();
  if (!same_params && local.size() > 1)
  {
    throw Error{ErrorKind::Protocol, "chain parameters differ (difficulty or salt)"};
  }

  auto const report = ledger::validate_chain(remote);
  if (!report.valid)
  {
    return ForkResolution{local, false, report.describe()};
  }
  if (better_claim(claim_of(remote), claim_of(local)))
  {
    return ForkResolution{remote, true, std::nullopt};
  }
  return ForkResolution{local, false, std::nullopt};
}

}  // namespace revchain::node
