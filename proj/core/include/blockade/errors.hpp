// Copyright 2026 The Blockade Authors
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

namespace blockade {

/// Bad user input: a parameter, level, index or scenario key outside its contract.
class ValidationError : public std::invalid_argument {
 public:
    explicit ValidationError(const std::string &what) : std::invalid_argument(what) {}
};

/// Requested transition would create a second Rydberg excitation.
class BlockedTransitionError : public std::logic_error {
 public:
    explicit BlockedTransitionError(const std::string &what) : std::logic_error(what) {}
};

/// The ODE integrator could not continue (step underflow, NaN, step budget).
class IntegrationError : public std::runtime_error {
 public:
    IntegrationError(const std::string &what, double time_us)
        : std::runtime_error(what + " at t = " + std::to_string(time_us) + " us"), time_us_(time_us) {}

    double time_us() const noexcept { return time_us_; }

 private:
    double time_us_;
};

/// Malformed scenario text; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
    ParseError(const std::string &what, int line, int column)
        : std::runtime_error(what), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

 private:
    int line_;
    int column_;
};

/// Output artifact could not be written.
class OutputError : public std::runtime_error {
 public:
    explicit OutputError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace blockade
