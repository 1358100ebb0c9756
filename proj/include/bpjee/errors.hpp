// SPDX-License-Identifier: Apache-2.0
//
// bpjee: energy-efficient multimode transmission for downlink MIMO
// Copyright (C) 2026 The bpjee authors
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

#ifndef bpjee_errors_H
#define bpjee_errors_H

#include <stdexcept>
#include <string>

namespace bpjee
{
    // Argument outside the mathematical domain of a function (non-finite input, d <= 0, W <= 0, ...)
    using domain_error = std::domain_error;

    // Caller broke a documented precondition, e.g. a non-concave numerator handed to the ratio solver
    class precondition_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // The ratio f(x)/(ax+b) has no interior maximum on the searched range
    class no_optimum_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Mode cannot be served: BD null space too small, too many antennas requested, ...
    class infeasible_mode_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class io_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
