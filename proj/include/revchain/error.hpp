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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revchain {

/// Broad error classes shared by every module. The CLI maps these onto exit
/// codes, so each module reports failures through one of these kinds rather
/// than inventing its own.
enum class ErrorKind
{
  Input,
  Lookup,
  Conflict,
  State,
  Parameter,
  InsufficientReviewers,
  Mining,
  Structural,
  Load,
  Integrity,
  Rejected,
  Protocol,
  Schema,
  Budget,
  LateResponse,
  Overdue,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, std::string const &detail);

  ErrorKind kind() const noexcept
  {
    return kind_;
  }

  std::string const &detail() const noexcept
  {
    return detail_;
  }

private:
  ErrorKind   kind_;
  std::string detail_;
};

/// Raised by chain-file loading; `line` is 1-based.
class LoadError : public Error
{
public:
  LoadError(std::size_t line, std::string const &detail);

  std::size_t line() const noexcept
  {
    return line_;
  }

private:
  std::size_t line_;
};

/// A loaded chain failed validation at block `index`.
class IntegrityError : public Error
{
public:
  IntegrityError(std::uint64_t index, std::string const &reason);

  std::uint64_t index() const noexcept
  {
    return index_;
  }

private:
  std::uint64_t index_;
};

class InsufficientReviewersError : public Error
{
public:
  InsufficientReviewersError(int wanted, int found);

  int wanted() const noexcept
  {
    return wanted_;
  }
  int found() const noexcept
  {
    return found_;
  }
  int shortfall() const noexcept
  {
    return wanted_ - found_;
  }

private:
  int wanted_;
  int found_;
};

class BudgetExceededError : public Error
{
public:
  BudgetExceededError(double estimate_seconds, double budget_seconds);

  double estimate_seconds() const noexcept
  {
    return estimate_seconds_;
  }

private:
  double estimate_seconds_;
};

}  // namespace revchain
