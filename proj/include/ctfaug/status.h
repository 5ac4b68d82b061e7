// Copyright 2026 The ctfaug Authors
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

#ifndef CTFAUG_STATUS_H_
#define CTFAUG_STATUS_H_

#include <stdexcept>
#include <string>

namespace ctfaug {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Caller passed something that violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// A file could not be read or parsed.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// A named entity (session, term, document) does not exist.
class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(what) {}
};

// The resource is held by a running job.
class Busy : public Error {
 public:
  explicit Busy(const std::string& what) : Error(what) {}
};

}  // namespace ctfaug

#endif  // CTFAUG_STATUS_H_
