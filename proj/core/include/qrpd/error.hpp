// Copyright 2026 The qrpd Authors
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

namespace qrpd {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or otherwise malformed numeric input.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's calling contract.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A numeric invariant (normalisation, unitarity) does not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Unknown action, strategy, pair or figure name.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Value outside the mathematical domain (e.g. discount factor >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested work exceeds a configured guard.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Operation not available for these inputs (e.g. aperiodic pair).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrpd
