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

#include "aperture_rule.hpp"
#include "errors.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

namespace fdsi
{
    // Virtual array of all pairwise sums d_tx + d_rx
    struct SumCoarray
    {
        std::vector<Position> sums;              // distinct, ascending
        std::vector<std::size_t> multiplicities; // number of (tx, rx) pairs per sum
        std::optional<std::size_t> contiguous_len; // longest run of consecutive integers; integer grids only

        std::size_t total_pairs() const
        {
            std::size_t t = 0;
            for (auto m : multiplicities)
                t += m;
            return t;
        }
    };

    // Longest run of consecutive integers in an ascending list of distinct integer positions
    inline std::size_t longest_integer_run(const std::vector<Position> &sorted_integers)
    {
        if (sorted_integers.empty())
            return 0;
        std::size_t best = 1, cur = 1;
        for (std::size_t i = 1; i < sorted_integers.size(); ++i)
        {
            cur = (sorted_integers[i] - sorted_integers[i - 1] == 1) ? cur + 1 : 1;
            best = std::max(best, cur);
        }
        return best;
    }

    inline SumCoarray sum_coarray(const FullDuplexLayout &layout)
    {
        SumCoarray out;
        if (layout.on_integer_grid())
        {
            // Integer layouts: histogram over the bounded sum range.
            const std::int64_t lo = (layout.tx.min() + layout.rx.min()).numerator();
            const std::int64_t hi = (layout.tx.max() + layout.rx.max()).numerator();
            std::vector<std::size_t> hist(static_cast<std::size_t>(hi - lo + 1), 0);
            for (const auto &t : layout.tx.positions())
                for (const auto &r : layout.rx.positions())
                    ++hist[static_cast<std::size_t>((t + r).numerator() - lo)];
            for (std::size_t i = 0; i < hist.size(); ++i)
                if (hist[i] > 0)
                {
                    out.sums.emplace_back(lo + static_cast<std::int64_t>(i));
                    out.multiplicities.push_back(hist[i]);
                }
            out.contiguous_len = longest_integer_run(out.sums);
            return out;
        }

        std::map<Position, std::size_t> counts;
        for (const auto &t : layout.tx.positions())
            for (const auto &r : layout.rx.positions())
                ++counts[t + r];
        for (const auto &[s, m] : counts)
        {
            out.sums.push_back(s);
            out.multiplicities.push_back(m);
        }
        return out;
    }

    struct CoarrayScalingRow
    {
        std::size_t n;
        std::size_t contiguous_len;
        Position aperture; // achieved joint aperture L
        SolvedParams params;
    };

    // Contiguous sum co-array length of the nested array across n, with (m1, m2, delta3) solved
    // from the aperture rule (see solve_for_aperture).
    inline std::vector<CoarrayScalingRow> coarray_scaling(std::span<const std::size_t> ns, const ApertureRule &rule)
    {
        if (ns.empty())
            throw invalid_parameter("coarray_scaling: empty N range");
        std::vector<CoarrayScalingRow> rows;
        rows.reserve(ns.size());
        for (auto n : ns)
        {
            const auto p = solve_for_aperture(Family::nested, n, rule.target(n));
            const auto layout = p.layout();
            rows.push_back({n, *sum_coarray(layout).contiguous_len, joint_aperture(layout), p});
        }
        std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b)
                  { return a.n < b.n; });
        return rows;
    }

    // Least-squares slope of log(y) against log(x)
    inline double loglog_slope(std::span<const double> x, std::span<const double> y)
    {
        if (x.size() != y.size() || x.size() < 2)
            throw invalid_parameter("loglog_slope: need at least two matching points");
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double k = static_cast<double>(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            if (!(x[i] > 0.0) || !(y[i] > 0.0))
                throw invalid_parameter("loglog_slope: values must be positive");
            const double lx = std::log(x[i]), ly = std::log(y[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double den = k * sxx - sx * sx;
        if (den == 0.0)
            throw invalid_parameter("loglog_slope: x values are all equal");
        return (k * sxy - sx * sy) / den;
    }

    inline double loglog_slope(const std::vector<CoarrayScalingRow> &rows)
    {
        std::vector<double> x, y;
        for (const auto &r : rows)
        {
            x.push_back(static_cast<double>(r.n));
            y.push_back(static_cast<double>(r.contiguous_len));
        }
        return loglog_slope(x, y);
    }
}
