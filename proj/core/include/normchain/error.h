// Copyright 2026 The normchain Authors.
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

#ifndef NORMCHAIN_ERROR_H_
#define NORMCHAIN_ERROR_H_

#include <stdexcept>
#include <string>

namespace normchain {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: bad records, duplicate ids, invalid stories.
class DataError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or configuration (unknown setting, k > n, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A generator, classifier or embedder call failed: transport problem,
// backend error payload or a response that violates the wire contract.
class ProviderError : public Error {
 public:
  using Error::Error;
};

}  // namespace normchain

#endif  // NORMCHAIN_ERROR_H_
