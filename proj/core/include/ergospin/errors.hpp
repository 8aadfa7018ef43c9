// Copyright 2026 The ergospin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ergospin {

/// Malformed arguments: dimension mismatch, support not contained, bad config.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration value; carries the JSON pointer of the offending key.
class ConfigError : public InputError {
 public:
  ConfigError(std::string pointer, const std::string& what)
      : InputError(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// A dense representation would exceed the configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An eigen-solver or decomposition did not converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A user-supplied builder produced an operator violating its contract
/// (typically: not self-adjoint).
class ConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A structural identity that must hold (gram covariance, unitarity) failed.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ergospin
