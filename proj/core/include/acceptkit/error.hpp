// Copyright 2026 The acceptkit Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acceptkit {

// Base class for every error raised by the library. The CLI maps these to
// exit code 2 (data error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line is 1-based; 0 when the error is not tied to a
// particular line.
class ParseError : public Error {
 public:
  ParseError(std::string origin, std::size_t line, const std::string& what)
      : Error(origin + (line ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        origin_(std::move(origin)),
        line_(line) {}

  const std::string& origin() const noexcept { return origin_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string origin_;
  std::size_t line_;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

// Violated operation precondition (bad sizes, out-of-range ids, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An external downstream system or MT command failed.
class ExternalCommandError : public Error {
 public:
  ExternalCommandError(const std::string& what, int exit_status,
                       std::string stderr_text)
      : Error(what), exit_status_(exit_status),
        stderr_text_(std::move(stderr_text)) {}

  int exit_status() const noexcept { return exit_status_; }
  const std::string& stderr_text() const noexcept { return stderr_text_; }

 private:
  int exit_status_;
  std::string stderr_text_;
};

}  // namespace acceptkit
