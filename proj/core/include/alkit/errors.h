// Copyright 2026 The autolabel-kit Authors.
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

#ifndef ALKIT_ERRORS_H_
#define ALKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace alkit {

// Base of every error raised by the library. The subclasses map one-to-one
// onto the command-line exit codes (config 2, I/O 3, data 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user configuration or arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Input data violates a documented invariant: malformed records, unknown
// enum values, misaligned datasets, detections without confidence, ...
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace alkit

#endif  // ALKIT_ERRORS_H_
