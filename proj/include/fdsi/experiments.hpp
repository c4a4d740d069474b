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
#include "beampattern.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "si_model.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <vector>

namespace fdsi
{
    struct SweepRow
    {
        std::size_t n;
        double l_target;
        Position l; // achieved joint aperture
        Family family;
        double spectral_norm;
        SolvedParams params;
        bool feasible; // false: the rule could not be met and the parameter was clamped
    };

    struct SweepResult
    {
        ApertureRule rule;
        double rho = 1.0;
        std::vector<SweepRow> rows; // sorted by (n, family)
    };

    // ||H_si||_2 across n for each family, with geometry parameters solved from the aperture rule.
    // Rows are computed concurrently; the result order is deterministic.
    inline SweepResult scaling_sweep(std::span<const Family> families, std::span<const std::size_t> ns,
                                     const ApertureRule &rule, double rho = 1.0)
    {
        if (ns.empty() || families.empty())
            throw invalid_parameter("scaling_sweep: empty N range or family list");
        if (!(rho > 0.0))
            throw invalid_parameter("scaling_sweep: rho must be positive");

        std::vector<std::future<SweepRow>> jobs;
        for (auto n : ns)
            for (auto f : families)
                jobs.push_back(std::async(std::launch::async, [=, &rule]
                                          {
                    const double target = rule.target(n);
                    const auto p = solve_for_aperture(f, n, target);
                    const auto layout = p.layout();
                    return SweepRow{n, target, joint_aperture(layout), f,
                                    spectral_norm(si_matrix(layout, rho)), p, p.feasible}; }));

        SweepResult out{rule, rho, {}};
        out.rows.reserve(jobs.size());
        for (auto &j : jobs)
            out.rows.push_back(j.get());
        std::stable_sort(out.rows.begin(), out.rows.end(), [](const SweepRow &a, const SweepRow &b)
                         { return a.n != b.n ? a.n < b.n : a.family < b.family; });
        return out;
    }

    inline SweepResult scaling_sweep(Family family, std::span<const std::size_t> ns, const ApertureRule &rule, double rho = 1.0)
    {
        const std::array<Family, 1> f{family};
        return scaling_sweep(f, ns, rule, rho);
    }

    // Rows of one family, in n order
    inline std::vector<SweepRow> rows_of(const SweepResult &r, Family f)
    {
        std::vector<SweepRow> out;
        std::copy_if(r.rows.begin(), r.rows.end(), std::back_inserter(out), [f](const SweepRow &row)
                     { return row.family == f; });
        return out;
    }

    struct FamilyStudy
    {
        Family family;
        FullDuplexLayout layout;
        BeampatternCurve rx_beampattern; // Rx geometry steered to broadside
        SingularSpectrum spectrum;
    };

    struct ComparisonParameters
    {
        std::size_t n = 11;
        std::int64_t delta1 = 23;
        std::int64_t delta2 = 2;
        std::size_t m1 = 6, m2 = 5;
        std::int64_t delta3 = 3;
    };

    // Partitioned, interleaved and nested layouts with N = 11 antennas per side: geometry,
    // broadside Rx beampattern and SI singular spectrum of each.
    inline std::array<FamilyStudy, 3> comparison_study(double rho = 0.2, std::size_t grid_size = default_grid_size,
                                                       const ComparisonParameters &prm = {})
    {
        const std::array<FullDuplexLayout, 3> layouts{generate_partitioned(prm.n, prm.delta1),
                                                      generate_interleaved(prm.n, prm.delta2),
                                                      generate_nested(prm.m1, prm.m2, prm.delta3)};
        const std::array<Family, 3> fams{Family::partitioned, Family::interleaved, Family::nested};
        auto study = [&](std::size_t i)
        {
            return FamilyStudy{fams[i], layouts[i], beampattern(layouts[i].rx, 0.0, grid_size),
                               svd_spectrum(si_matrix(layouts[i], rho))};
        };
        return {study(0), study(1), study(2)};
    }
}
