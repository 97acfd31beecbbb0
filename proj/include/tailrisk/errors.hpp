// Copyright 2026 The Tailrisk Authors
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

#ifndef TAILRISK_ERRORS_HPP_
#define TAILRISK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tailrisk {

// Base class for all analysis errors raised by this library. CLI maps these
// to exit code 1; argument-parsing problems are handled before any of these
// can be thrown.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// The input is formally valid but makes the requested statistic undefined
// (e.g. a flat likelihood because all excesses coincide).
class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what) : Error(what) {}
};

// An iterative optimizer ran out of iterations. Carries the best iterate so
// callers can decide whether it is usable anyway.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_gamma, double best_sigma)
      : Error(what), best_gamma(best_gamma), best_sigma(best_sigma) {}
  double best_gamma;
  double best_sigma;
};

// A data-driven selection procedure could not produce an answer.
class SelectionError : public Error {
 public:
  explicit SelectionError(const std::string& what) : Error(what) {}
};

// Inconsistent or unusable configuration (weights, measures, simulation
// settings).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// File access / parsing problems.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace tailrisk

#endif  // TAILRISK_ERRORS_HPP_
