// Copyright 2026 The funbandit Authors
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

#ifndef FUNBANDIT_ERRORS_HPP
#define FUNBANDIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace funbandit {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument is outside its mathematical domain (bad probability,
/// budget below the schedule's minimum, and the like).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested (distribution, functional) pair has no defined ground truth.
class UnsupportedFunctional : public Error {
 public:
  using Error::Error;
};

/// The operation is undefined for this distribution variant
/// (e.g. density queries on a discrete law).
class UnsupportedDistribution : public Error {
 public:
  using Error::Error;
};

class EmptySample : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// All sample values identical where a spread is required.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

/// floor(T / H) = 0: the budget cannot fund a single pull per round.
class InsufficientBudget : public Error {
 public:
  using Error::Error;
};

/// A variance-over-squared-margin bound is vacuous because the bias
/// term reaches half the gap.
class BiasDominates : public Error {
 public:
  using Error::Error;
};

/// The per-arm sample count fails the precondition of the
/// average-value-at-risk concentration bound.
class SampleConditionUnmet : public Error {
 public:
  using Error::Error;
};

/// Configuration document failed schema validation; the message names
/// the offending key path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace funbandit

#endif  // FUNBANDIT_ERRORS_HPP
