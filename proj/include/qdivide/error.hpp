// Copyright 2026 The qdivide Authors
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

#include <stdexcept>
#include <string>

namespace qdivide {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument: non-Hermitian matrix, invalid weights, bad dimension.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Query outside the domain a model is defined on (e.g. tabulated grid).
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the parameter domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A decay factor vanished, so the time-local generator does not exist.
class NonInvertible : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition of a region test.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Boundary mixture weights (some p_k = 0) where the asymptotic expansion
/// has a different leading order.
class BoundaryCase : public Error {
 public:
  using Error::Error;
};

}  // namespace qdivide
