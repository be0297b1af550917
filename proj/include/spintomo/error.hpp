// Copyright 2026 The spintomo Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace spintomo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation (non-square, size mismatch,
/// qubit index out of range, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  NotHermitianError(const std::string& what, double max_asymmetry)
      : Error(what), max_asymmetry_(max_asymmetry) {}
  double max_asymmetry() const { return max_asymmetry_; }

 private:
  double max_asymmetry_;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

/// A closed-form or timing formula does not apply to the given parameters.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The planner could not cover a target, or a plan violates triangularity.
class PlanError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree (e.g. direct trace vs. equivalent-measurement
/// form) disagree beyond tolerance. Always indicates a convention bug.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed config, plan, record or state file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spintomo
