// Copyright 2026 The qio developers
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

namespace qio {

/// Base class for all qio errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape or size mismatch between operands.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A value failed a domain invariant (non-finite entry, broken
/// normalization, completeness residual above the gate, invalid density
/// matrix, ...). A channel raising this is rejected outright.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// The Choi matrix carries weight on slot pairs that no incoherent Kraus
/// operator can produce, so the channel is not an incoherent operation.
class NotIncoherentError : public Error {
 public:
  explicit NotIncoherentError(const std::string& what) : Error(what) {}
};

/// An internal consistency condition of the decomposition failed; this
/// signals numerically inconsistent input rather than a usage error.
class ConstraintViolation : public Error {
 public:
  explicit ConstraintViolation(const std::string& what) : Error(what) {}
};

/// Neither root of the reduced quadratic satisfies the pre-squaring
/// product conditions.
class NoValidRootError : public Error {
 public:
  explicit NoValidRootError(const std::string& what) : Error(what) {}
};

/// Malformed input text or an unexpected JSON shape.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace qio
