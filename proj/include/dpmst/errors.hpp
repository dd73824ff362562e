// Copyright 2026 The dpmst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dpmst {

// Base for every error raised by the library. Each subclass maps onto one
// process exit code of the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
};

// Malformed input: bad graph, bad weights, out-of-range parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

// An exhaustive enumeration would exceed its size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

// Floating point results left their admissible range (e.g. a sampler
// probability far outside [0, 1], or a singular reduced Laplacian).
class NumericsError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

}  // namespace dpmst
