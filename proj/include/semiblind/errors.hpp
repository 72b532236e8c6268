// SPDX-License-Identifier: Apache-2.0
//
// semiblind: time-domain semi-blind MIMO-OFDM channel estimation
// Copyright (C) 2026 The semiblind authors
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

#ifndef SEMIBLIND_ERRORS_HPP
#define SEMIBLIND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semiblind {

// Raised when a caller breaks an operation's precondition (dimension
// mismatch, zero counts, out-of-range indices).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised for invalid simulation configuration, before any work is done.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& what)
{
    if (!condition)
        throw ContractViolation(what);
}

} // namespace semiblind

#endif
