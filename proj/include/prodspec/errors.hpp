// Copyright 2026 The prodspec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRODSPEC_ERRORS_HPP
#define PRODSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prodspec {

// A spec or config field violates one of its invariants.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// An argument lies outside the domain of a mathematical function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A linear solve in the direct matrix path was too ill-conditioned to trust.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

// A series evaluation cannot meet the requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double error_bound)
      : std::runtime_error(what), error_bound_(error_bound) {}

  double error_bound() const noexcept { return error_bound_; }

 private:
  double error_bound_;
};

}  // namespace prodspec

#endif  // PRODSPEC_ERRORS_HPP
