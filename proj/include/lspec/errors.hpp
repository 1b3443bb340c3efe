// Copyright 2026 The lspec authors
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

namespace lspec {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid Hilbert-space dimension or a problem too large for a dense path.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands with incompatible shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A physically invalid parameter (negative rate, bad grid, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not converge; the message carries diagnostics.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A matrix that should be a density matrix is not (negative eigenvalue
/// beyond the clipping floor, non-unit trace, non-Hermitian).
class StateError : public Error {
 public:
  using Error::Error;
};

/// hermitian_split was asked to decompose something it cannot.
class SplitError : public Error {
 public:
  using Error::Error;
};

/// hermitize received two eigenpairs that are not conjugate partners.
class PairingError : public Error {
 public:
  using Error::Error;
};

/// analysis-level failure (fit did not converge, bifurcation not found).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lspec
