/*
 * Copyright 2026 The irscale Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IRSCALE_ERROR_HPP
#define IRSCALE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace irscale {

/// Broad failure classes. Each maps onto one CLI exit code.
enum class ErrorKind {
  kInput = 1,       // malformed input, bad parameters, unresolved names
  kSizeLimit = 2,   // universe larger than the configured cap
  kDegenerate = 3,  // degenerate data: single-point scale, zero denominator
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::kInput, what) {}
};

class SizeLimitError : public Error {
 public:
  explicit SizeLimitError(const std::string& what)
      : Error(ErrorKind::kSizeLimit, what) {}
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what)
      : Error(ErrorKind::kDegenerate, what) {}
};

}  // namespace irscale

#endif  // IRSCALE_ERROR_HPP
