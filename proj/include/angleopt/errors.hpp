// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace angleopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different ambient spaces.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration or matrix violates its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input text could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace angleopt
