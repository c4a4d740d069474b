// SPDX-License-Identifier: Apache-2.0
//
// fdsi: full-duplex array geometry and self-interference toolkit
// Copyright (C) 2026 The fdsi Authors
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

namespace fdsi
{
    // Bad argument to a generator or analysis routine (zero antenna count, eps out of range, ...)
    class invalid_parameter : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A Tx and an Rx antenna share a position; the spherical-wave model divides by their distance
    class colocated_antennas : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Non-finite input or a failed decomposition
    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed geometry / matrix file
    class parse_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Vector or matrix shapes do not agree
    class dimension_mismatch : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };
}
