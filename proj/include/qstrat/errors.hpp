// Copyright 2026 The qstrat Authors
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

namespace qstrat {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LabelNotFoundError : public Error {
 public:
  explicit LabelNotFoundError(const std::string& label)
      : Error("label not found: " + label) {}
};

/// A precondition of an operation was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class InsufficientEnvironmentError : public Error {
 public:
  using Error::Error;
};

class NoIsometryError : public Error {
 public:
  using Error::Error;
};

class DescriptionInvalidError : public Error {
 public:
  using Error::Error;
};

class ProfileMismatchError : public Error {
 public:
  using Error::Error;
};

/// A representation failed the linear/PSD characterization it was expected
/// to satisfy.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent dimensions or names in an SDP model.
class ModelError : public Error {
 public:
  using Error::Error;
};

class RefereeModelError : public Error {
 public:
  using Error::Error;
};

class ProtocolShapeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qstrat
