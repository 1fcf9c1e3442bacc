// SPDX-License-Identifier: Apache-2.0
//
// atfkit: region-to-region acoustic transfer function interpolation
// Copyright (C) 2026 The atfkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace atfkit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or value outside the mathematical domain of an operation
/// (coincident points, mismatched lengths, non-finite input).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An intermediate quantity would leave the double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A linear system could not be factorized or is too ill-conditioned.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not defined for the given configuration.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed file or configuration content, or a failed read/write.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace atfkit
