// Copyright the cubeslice authors. Licensed under the Apache 2.0 license. See LICENSE in the project root.

#pragma once

#include <stdexcept>
#include <string>

namespace cubeslice {

// Base class for all cubeslice errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid user input: malformed requests, unknown axis names, violated
// preconditions. The CLI maps this to exit code 1.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Filesystem and bundle-format problems. The CLI maps this to exit code 2.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace cubeslice
