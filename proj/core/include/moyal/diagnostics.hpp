// Copyright 2026 The Moyal Authors
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

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moyal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: wrong sizes, off-grid points, unknown names, malformed config.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation ran but its result cannot be trusted (integration failure,
/// loss of resolution, content leaving the box).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Raised when an evolved observable reaches the edge of the lattice.
class EscapeError : public NumericalError {
 public:
  EscapeError(const std::string& what, double max_usable_time)
      : NumericalError(what), max_usable_time_(max_usable_time) {}
  /// Largest sampled time that passed the escape monitor (negative if none).
  double max_usable_time() const { return max_usable_time_; }

 private:
  double max_usable_time_;
};

using WarningHandler = std::function<void(std::string_view)>;

/// Installs a process-wide warning sink and returns the previous one.
/// The default sink writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

/// Collects warnings emitted while in scope instead of printing them.
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
  WarningHandler previous_;
};

}  // namespace moyal
