// SPDX-License-Identifier: Apache-2.0
//
// fddprobe: downlink probing and feedback simulation for FDD massive MIMO
// Copyright (C) 2026 The fddprobe Authors
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

#ifndef FDDPROBE_ERRORS_HPP
#define FDDPROBE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fddprobe
{

// Argument outside the mathematical domain of an operation (angle outside the scanned range, index out of range, ...)
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Infeasible or inconsistent configuration (m > M, support longer than the angular range, malformed config file, ...)
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Operand shapes do not agree
class StructuralError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Matrix too ill-conditioned to invert; carries the measured condition number
class SingularityError : public std::runtime_error
{
public:
    SingularityError(const std::string &what, double condition_number)
        : std::runtime_error(what), condition_number_(condition_number) {}

    double condition_number() const noexcept { return condition_number_; }

private:
    double condition_number_;
};

} // namespace fddprobe

#endif
