/* Copyright 2026 The Collo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef COLLO_ERROR_HPP_
#define COLLO_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace collo {

// Broad failure classes. They map one-to-one onto the C API status codes and
// the CLI exit codes.
enum class ErrorKind {
  kInput,      // malformed or inconsistent user input
  kArgument,   // a precondition on a function argument was violated
  kIo,         // file could not be opened/written
  kInvariant,  // internal invariant violation (a bug)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(ErrorKind::kInput, line > 0 ? "line " + std::to_string(line) +
                                                ": " + what
                                          : what),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

inline Error InputError(const std::string& what) {
  return Error(ErrorKind::kInput, what);
}
inline Error ArgumentError(const std::string& what) {
  return Error(ErrorKind::kArgument, what);
}
inline Error IoError(const std::string& what) {
  return Error(ErrorKind::kIo, what);
}
inline Error InvariantError(const std::string& what) {
  return Error(ErrorKind::kInvariant, what);
}

}  // namespace collo

#endif  // COLLO_ERROR_HPP_
