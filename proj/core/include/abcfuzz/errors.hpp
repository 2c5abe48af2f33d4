// Copyright 2026 The abc-fuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABCFUZZ_ERRORS_HPP
#define ABCFUZZ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

/**
 * \file
 * \brief Exception types shared by every module.
 *
 * The command line front end maps each category onto a stable exit status:
 * configuration and usage errors exit with 2, environment errors with 3 and
 * numerical degeneracy with 4.
 */

namespace abcfuzz {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation was violated by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Failures outside the process: IO, child process spawning.
class EnvironmentError : public Error {
 public:
  using Error::Error;
};

/// An external oracle did not finish within its time limit.
class TimeoutError : public EnvironmentError {
 public:
  using EnvironmentError::EnvironmentError;
};

/// Numerical degeneracy: nothing left to weight or compare.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Every weight of a population collapsed to zero.
class DegenerateWeightsError : public NumericalError {
 public:
  DegenerateWeightsError(const std::string& what, std::size_t step)
      : NumericalError(what + " (step " + std::to_string(step) + ")"), step_{step} {}

  [[nodiscard]] std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A Metropolis comparison between two states that both have zero likelihood.
class DegenerateStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace abcfuzz

#endif
