// Copyright 2026 e2rkit authors
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

#ifndef E2R_ERRORS_HPP
#define E2R_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace e2r {

/// Base class for every error the toolkit raises on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A strategy code or class label that is not in the taxonomy table.
class UnknownCode : public Error {
public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what_arg, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what_arg
                       : what_arg),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class DuplicateId : public Error {
public:
  using Error::Error;
};

class EmptyCorpus : public Error {
public:
  using Error::Error;
};

class EmptyInput : public Error {
public:
  using Error::Error;
};

class InvalidK : public Error {
public:
  using Error::Error;
};

class InvalidConfig : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class LengthMismatch : public Error {
public:
  using Error::Error;
};

/// Non-finite loss or gradient during training.
class NumericalError : public Error {
public:
  using Error::Error;
};

}  // namespace e2r

#endif  // E2R_ERRORS_HPP
