// Copyright 2026 The tradius Authors
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

namespace tradius {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A node identifier that is not part of the graph.
class IdentifierError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the supported domain (bad family size, foreign component, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An analysis that only exists for t < kappa(G) was requested with t >= kappa(G).
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// A decision rule found nothing to decide on.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A structural fact that must hold by construction was observed to fail.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed graph or pattern documents.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tradius
