// SPDX-License-Identifier: Apache-2.0
//
// ricap: capacity-achieving input covariance for correlated Rician MIMO channels
// Copyright (C) 2026 The ricap authors
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

#ifndef RICAP_ERROR_HPP
#define RICAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ricap
{

// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Inputs violating a documented precondition (dimensions, ranges, normalizations).
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

// A matrix expected to be positive (semi)definite is not, beyond rounding tolerance.
class NotPositiveError : public Error
{
public:
    using Error::Error;
};

// An iterative solver exhausted its budget without meeting its tolerance.
class ConvergenceError : public Error
{
public:
    ConvergenceError(const std::string &what, int iterations, double residual)
        : Error(what + " (iterations=" + std::to_string(iterations) + ", residual=" + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual)
    {
    }

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

// Malformed model files or command-line configurations.
class ConfigError : public Error
{
public:
    using Error::Error;
};

} // namespace ricap

#endif
