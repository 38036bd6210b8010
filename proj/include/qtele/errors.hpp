// Copyright 2026 The qtele Authors
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

#include <stdexcept>
#include <string>

namespace qtele {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Matrix has the wrong structure (non-square, non-Hermitian, non-finite).
class ShapeError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

/// A measurement, Bell or Kraus family fails its completeness relation.
class InvalidFamilyError : public Error {
 public:
  using Error::Error;
};

class UnknownLabelError : public Error {
 public:
  using Error::Error;
};

/// Quantity conditioned on an outcome that has (numerically) zero probability.
class NullBranchError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtele
