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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace fdsi
{
    // Uniformly weighted narrowband array factor, positions in half-wavelength units:
    //   A(theta) = sum_n exp(j * pi * d_n * (sin(theta) - sin(theta_s)))
    inline std::complex<double> array_factor(const ArrayGeometry &g, double theta, double theta_s)
    {
        constexpr double lim = std::numbers::pi / 2 + 1e-12;
        if (!(std::abs(theta) <= lim) || !(std::abs(theta_s) <= lim))
            throw invalid_parameter("array_factor: angles must lie in [-pi/2, pi/2]");
        const double u = std::sin(theta) - std::sin(theta_s);
        std::complex<double> acc = 0.0;
        for (const auto &p : g.positions())
        {
            const double ph = std::numbers::pi * to_double(p) * u;
            acc += std::complex<double>(std::cos(ph), std::sin(ph));
        }
        return acc;
    }

    inline constexpr double beampattern_floor_db = -120.0;
    inline constexpr std::size_t default_grid_size = 4096;

    struct BeampatternCurve
    {
        std::vector<double> thetas;   // uniform over [-pi/2, pi/2], inclusive
        std::vector<double> gains_db; // 20 log10 |A|, clamped at beampattern_floor_db
        double steering = 0.0;
        bool normalized = false;
    };

    inline BeampatternCurve beampattern(const ArrayGeometry &g, double theta_s = 0.0,
                                        std::size_t grid_size = default_grid_size, bool normalized = false)
    {
        if (grid_size < 3)
            throw invalid_parameter("beampattern: grid_size must be at least 3");
        constexpr double half_pi = std::numbers::pi / 2;
        if (!(std::abs(theta_s) <= half_pi + 1e-12))
            throw invalid_parameter("beampattern: steering angle must lie in [-pi/2, pi/2]");

        BeampatternCurve c;
        c.steering = theta_s;
        c.normalized = normalized;
        c.thetas.resize(grid_size);
        c.gains_db.resize(grid_size);
        const double step = std::numbers::pi / static_cast<double>(grid_size - 1);
        for (std::size_t i = 0; i < grid_size; ++i)
            c.thetas[i] = -half_pi + step * static_cast<double>(i);
        c.thetas.back() = half_pi;

        for (std::size_t i = 0; i < grid_size; ++i)
        {
            const double mag = std::abs(array_factor(g, c.thetas[i], theta_s));
            c.gains_db[i] = mag > 0.0 ? 20.0 * std::log10(mag) : -std::numeric_limits<double>::infinity();
        }
        if (normalized)
        {
            const double peak = *std::max_element(c.gains_db.begin(), c.gains_db.end());
            for (auto &v : c.gains_db)
                v -= peak;
        }
        for (auto &v : c.gains_db)
            v = std::max(v, beampattern_floor_db);
        return c;
    }

    namespace detail
    {
        inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }

        // Vertex offset (in samples, within [-1, 1]) of the parabola through (-1, a), (0, b), (1, c)
        inline double parabola_vertex(double a, double b, double c)
        {
            const double den = a - 2.0 * b + c;
            if (den == 0.0)
                return 0.0;
            return std::clamp(0.5 * (a - c) / den, -1.0, 1.0);
        }

        // Interpolated angle of sample i given the fractional offset
        inline double angle_at(const BeampatternCurve &c, std::size_t i, double off)
        {
            const double step = c.thetas[1] - c.thetas[0];
            return c.thetas[i] + off * step;
        }

        inline bool is_local_max(const std::vector<double> &v, std::size_t i)
        {
            const bool left = (i == 0) || v[i] >= v[i - 1];
            const bool right = (i + 1 == v.size()) || v[i] >= v[i + 1];
            // plateaus: only report the first sample of a run
            const bool first = (i == 0) || v[i] != v[i - 1];
            return left && right && first;
        }

        inline double refine_max(const BeampatternCurve &c, std::size_t i)
        {
            const auto &v = c.gains_db;
            if (i == 0 || i + 1 == v.size())
                return c.thetas[i];
            return angle_at(c, i, parabola_vertex(v[i - 1], v[i], v[i + 1]));
        }

        // Null location refined on linear power, which is locally quadratic at a zero of A
        inline double refine_min(const BeampatternCurve &c, std::size_t i)
        {
            const auto &v = c.gains_db;
            if (i == 0 || i + 1 == v.size())
                return c.thetas[i];
            return angle_at(c, i, parabola_vertex(db_to_power(v[i - 1]), db_to_power(v[i]), db_to_power(v[i + 1])));
        }

        // Sample index of the local maximum nearest the steering angle
        inline std::size_t main_peak_index(const BeampatternCurve &c)
        {
            const auto &v = c.gains_db;
            const double global = *std::max_element(v.begin(), v.end());
            std::size_t best = 0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                // the main lobe of a uniformly weighted array always reaches the global peak
                if (v[i] < global - 1.0 || !is_local_max(v, i))
                    continue;
                const double d = std::abs(c.thetas[i] - c.steering);
                if (d < best_dist)
                {
                    best_dist = d;
                    best = i;
                }
            }
            return best;
        }
    }

    namespace detail
    {
        // -3 dB crossings either side of sample pk, linearly interpolated in dB; grid ends if none
        inline std::pair<double, double> half_power_edges(const BeampatternCurve &curve, std::size_t pk)
        {
            const auto &v = curve.gains_db;
            const double hp = v[pk] - 10.0 * std::log10(2.0);
            auto crossing = [&](int dir) -> double
            {
                for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(pk); i + dir >= 0 && i + dir < static_cast<std::ptrdiff_t>(v.size()); i += dir)
                {
                    const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(i + dir);
                    if (v[b] <= hp)
                    {
                        const double t = (v[a] - hp) / (v[a] - v[b]);
                        return curve.thetas[a] + t * (curve.thetas[b] - curve.thetas[a]);
                    }
                }
                return dir < 0 ? curve.thetas.front() : curve.thetas.back();
            };
            return {crossing(-1), crossing(+1)};
        }
    }

    struct MainLobe
    {
        double width = 0.0; // radians
        double left = 0.0;  // edge angles
        double right = 0.0;
        bool null_to_null = true; // false: half-power width fallback
    };

    // Null-to-null main lobe width around the steering angle. The main lobe ends at the first local
    // minimum on each side; it counts as a null when it lies at least 20 dB below the peak. If either
    // side has no such null (shallow first minimum, or none before the grid edge) the half-power
    // (-3 dB) width is returned and null_to_null is false. Throws invalid_parameter for a flat curve.
    inline MainLobe main_lobe_width(const BeampatternCurve &curve)
    {
        const auto &v = curve.gains_db;
        if (v.size() < 3 || curve.thetas.size() != v.size())
            throw invalid_parameter("main_lobe_width: curve needs at least 3 samples");
        const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
        if (*mx - *mn < 1e-9)
            throw invalid_parameter("main_lobe_width: degenerate flat beampattern");

        const std::size_t pk = detail::main_peak_index(curve);
        const double peak = v[pk];
        const double null_level = peak - 20.0;

        auto find_null = [&](int dir) -> std::optional<double>
        {
            for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(pk) + dir; i > 0 && i + 1 < static_cast<std::ptrdiff_t>(v.size()); i += dir)
            {
                const auto k = static_cast<std::size_t>(i);
                if (v[k] <= v[k - 1] && v[k] <= v[k + 1])
                {
                    if (v[k] > null_level)
                        return std::nullopt;
                    return detail::refine_min(curve, k);
                }
            }
            return std::nullopt;
        };

        MainLobe out;
        const auto l = find_null(-1), r = find_null(+1);
        if (l && r)
        {
            out.left = *l;
            out.right = *r;
            out.width = *r - *l;
            return out;
        }

        const auto [lo, hi] = detail::half_power_edges(curve, pk);
        out.null_to_null = false;
        out.left = lo;
        out.right = hi;
        out.width = hi - lo;
        return out;
    }

    // Half-power (-3 dB) width of the main lobe around the steering angle, in radians
    inline double half_power_width(const BeampatternCurve &curve)
    {
        if (curve.gains_db.size() < 3 || curve.thetas.size() != curve.gains_db.size())
            throw invalid_parameter("half_power_width: curve needs at least 3 samples");
        const auto [lo, hi] = detail::half_power_edges(curve, detail::main_peak_index(curve));
        return hi - lo;
    }

    // Angles of all local maxima within tol_db of the global peak, excluding the main lobe at the
    // steering angle. Grid endpoints count as local maxima.
    inline std::vector<double> grating_lobes(const BeampatternCurve &curve, double tol_db = 0.5)
    {
        std::vector<double> out;
        const auto &v = curve.gains_db;
        if (v.size() < 3)
            return out;
        const double global = *std::max_element(v.begin(), v.end());
        const double step = curve.thetas[1] - curve.thetas[0];
        const std::size_t pk = detail::main_peak_index(curve);
        const bool main_at_steering = std::abs(curve.thetas[pk] - curve.steering) <= 2.0 * step;

        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if (!detail::is_local_max(v, i) || v[i] < global - tol_db)
                continue;
            if (main_at_steering && i == pk)
                continue;
            out.push_back(detail::refine_max(curve, i));
        }
        return out;
    }
}
