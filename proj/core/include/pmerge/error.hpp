// Copyright 2026 The pmerge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pmerge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid (p, k) or other out-of-range user parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A network and a value sequence (or a comparator and a network) do not fit
/// together: index out of range, overlapping comparators in one stage, etc.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A builder produced something that violates its own structural contract.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an input outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A claimed property (merging, sorting, ...) did not hold on a concrete run.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace pmerge
