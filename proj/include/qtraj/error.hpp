// Copyright 2026 The qtraj Authors
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

namespace qtraj {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the domain of an operation (negative rate, eta > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A state left the set of valid density matrices, or a numerical
/// precondition such as the step-size bound was violated.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File system failures; the message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtraj
