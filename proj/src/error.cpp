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

#include "revchain/error.hpp"

#include <cstdio>

namespace revchain {

std::string_view to_string(ErrorKind kind)
{
  switch (kind)
  {
  case ErrorKind::Input:
    return "input error";
  case ErrorKind::Lookup:
    return "lookup error";
  case ErrorKind::Conflict:
    return "conflict";
  case ErrorKind::State:
    return "state error";
  case ErrorKind::Parameter:
    return "parameter error";
  case ErrorKind::InsufficientReviewers:
    return "insufficient reviewers";
  case ErrorKind::Mining:
    return "mining failure";
  case ErrorKind::Structural:
    return "structural error";
  case ErrorKind::Load:
    return "load error";
  case ErrorKind::Integrity:
    return "integrity error";
  case ErrorKind::Rejected:
    return "rejected";
  case ErrorKind::Protocol:
    return "protocol error";
  case ErrorKind::Schema:
    return "schema error";
  case ErrorKind::Budget:
    return "budget exceeded";
  case ErrorKind::LateResponse:
    return "late response";
  case ErrorKind::Overdue:
    return "overdue";
  case ErrorKind::Config:
    return "config error";
  case ErrorKind::Io:
    return "io error";
  }
  return "error";
}

namespace {

std::string compose(ErrorKind kind, std::string const &detail)
{
  std::string out{to_string(kind)};
  if (!detail.empty())
  {
    out += ": ";
    out += detail;
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string const &detail)
  : std::runtime_error{compose(kind, detail)}
  , kind_{kind}
  , detail_{detail}
{}

LoadError::LoadError(std::size_t line, std::string const &detail)
  : Error{ErrorKind::Load, "line " + std::to_string(line) + ": " + detail}
  , line_{line}
{}

IntegrityError::IntegrityError(std::uint64_t index, std::string const &reason)
  : Error{ErrorKind::Integrity, "block " + std::to_string(index) + ": " + reason}
  , index_{index}
{}

InsufficientReviewersError::InsufficientReviewersError(int wanted, int found)
  : Error{ErrorKind::InsufficientReviewers,
          "needed " + std::to_string(wanted) + ", found " + std::to_string(found) + " (short by " +
              std::to_string(wanted - found) + ")"}
  , wanted_{wanted}
  , found_{found}
{}

namespace {

std::string budget_text(double estimate, double budget)
{
  char buf[160];
  std::snprintf(buf, sizeof(buf), "projected runtime %.1f s exceeds budget %.1f s", estimate,
                budget);
  return buf;
}

}  // namespace

BudgetExceededError::BudgetExceededError(double estimate_seconds, double budget_seconds)
  : Error{ErrorKind::Budget, budget_text(estimate_seconds, budget_seconds)}
  , estimate_seconds_{estimate_seconds}
{}

}  // namespace revchain
