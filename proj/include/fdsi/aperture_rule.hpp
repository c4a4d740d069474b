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

#include "errors.hpp"
#include "geometry.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fdsi
{
    enum class Family
    {
        partitioned,
        interleaved,
        nested
    };

    inline std::string_view to_string(Family f)
    {
        switch (f)
        {
        case Family::partitioned:
            return "partitioned";
        case Family::interleaved:
            return "interleaved";
        case Family::nested:
            return "nested";
        }
        return "unknown";
    }

    inline Family family_from_string(std::string_view s)
    {
        if (s == "partitioned")
            return Family::partitioned;
        if (s == "interleaved")
            return Family::interleaved;
        if (s == "nested")
            return Family::nested;
        throw invalid_parameter("unknown array family '" + std::string(s) + "'");
    }

    // Target joint aperture as a function of the per-side antenna count N
    struct ApertureRule
    {
        enum class Kind
        {
            constant,  // L = c
            linear,    // L = c N
            quadratic  // L = c N^2
        };
        Kind kind = Kind::linear;
        double coefficient = 2.0;

        static ApertureRule linear(double c = 2.0) { return {Kind::linear, c}; }
        static ApertureRule quadratic(double c = 0.26) { return {Kind::quadratic, c}; }
        static ApertureRule constant(double c) { return {Kind::constant, c}; }

        double target(std::size_t n) const
        {
            const double x = static_cast<double>(n);
            switch (kind)
            {
            case Kind::constant:
                return coefficient;
            case Kind::linear:
                return coefficient * x;
            case Kind::quadratic:
                return coefficient * x * x;
            }
            return 0.0;
        }
    };

    inline std::string_view to_string(ApertureRule::Kind k)
    {
        switch (k)
        {
        case ApertureRule::Kind::constant:
            return "constant";
        case ApertureRule::Kind::linear:
            return "linear";
        case ApertureRule::Kind::quadratic:
            return "quadratic";
        }
        return "unknown";
    }

    // Family parameters solved from a target aperture. `feasible` is false when the raw inverse fell
    // below the family minimum and had to be clamped.
    struct SolvedParams
    {
        Family family;
        std::size_t n = 0;
        std::int64_t delta = 0; // delta1, delta2 or delta3
        std::size_t m1 = 0;     // nested only
        std::size_t m2 = 0;
        bool feasible = true;

        FullDuplexLayout layout() const
        {
            switch (family)
            {
            case Family::partitioned:
                return generate_partitioned(n, delta);
            case Family::interleaved:
                return generate_interleaved(n, delta);
            case Family::nested:
                return generate_nested(m1, m2, delta);
            }
            throw invalid_parameter("SolvedParams: unknown family");
        }

        std::string describe() const
        {
            switch (family)
            {
            case Family::partitioned:
                return "delta1=" + std::to_string(delta);
            case Family::interleaved:
                return "delta2=" + std::to_string(delta);
            case Family::nested:
                return "m1=" + std::to_string(m1) + " m2=" + std::to_string(m2) + " delta3=" + std::to_string(delta);
            }
            return {};
        }
    };

    // Nested split used throughout: m1 = ceil(n/2), m2 = n - m1. Requires n >= 2.
    inline std::pair<std::size_t, std::size_t> nested_split(std::size_t n)
    {
        if (n < 2)
            throw invalid_parameter("nested_split: nested arrays need n >= 2");
        const std::size_t m1 = (n + 1) / 2;
        return {m1, n - m1};
    }

    // Inverts each family's aperture formula:
    //   partitioned  L = 2N - 1 + delta1            -> delta1 = L - (2N - 1), clamped at 0
    //   interleaved  L = delta2 (2N - 1)            -> delta2 = max(1, round(L / (2N - 1)))
    //   nested       L = delta3 (2 m2 + 1) + 2(m1-1) -> delta3 = max(1, floor((L - 2(m1 - 1)) / (2 m2 + 1)))
    inline SolvedParams solve_for_aperture(Family family, std::size_t n, double l_target)
    {
        if (n == 0)
            throw invalid_parameter("solve_for_aperture: n must be at least 1");
        if (!std::isfinite(l_target))
            throw invalid_parameter("solve_for_aperture: target aperture must be finite");
        SolvedParams p{family, n};
        const double nd = static_cast<double>(n);
        switch (family)
        {
        case Family::partitioned:
        {
            const double raw = std::round(l_target - (2.0 * nd - 1.0));
            p.feasible = raw >= 0.0;
            p.delta = p.feasible ? static_cast<std::int64_t>(raw) : 0;
            break;
        }
        case Family::interleaved:
        {
            const double raw = std::round(l_target / (2.0 * nd - 1.0));
            p.feasible = raw >= 1.0;
            p.delta = p.feasible ? static_cast<std::int64_t>(raw) : 1;
            break;
        }
        case Family::nested:
        {
            std::tie(p.m1, p.m2) = nested_split(n);
            const double raw = std::floor((l_target - 2.0 * (static_cast<double>(p.m1) - 1.0)) / (2.0 * static_cast<double>(p.m2) + 1.0));
            p.feasible = raw >= 1.0;
            p.delta = p.feasible ? static_cast<std::int64_t>(raw) : 1;
            break;
        }
        }
        return p;
    }
}
