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
#include "si_model.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <utility>
#include <vector>

namespace fdsi
{
    struct SingularSpectrum
    {
        std::vector<double> sigmas; // descending, min(rows, cols) values
        double frob = 0.0;          // Frobenius norm of the source matrix
        double recon_error = 0.0;   // max |H - U S V*| when factors were computed, else 0
        bool factors_checked = false;
    };

    // All singular values of h in descending order. Values are reported as computed, with no
    // truncation of tiny trailing values. Throws numerical_error on non-finite input.
    inline SingularSpectrum svd_spectrum(const Eigen::MatrixXcd &h, bool check_reconstruction = false)
    {
        if (h.size() == 0)
            throw invalid_parameter("svd_spectrum: matrix is empty");
        if (!h.allFinite())
            throw numerical_error("svd_spectrum: matrix has non-finite entries");

        SingularSpectrum out;
        out.frob = h.norm();

        const unsigned opts = check_reconstruction ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, opts);
        const auto &s = svd.singularValues();
        out.sigmas.assign(s.data(), s.data() + s.size());

        for (double v : out.sigmas)
            if (!std::isfinite(v))
                throw numerical_error("svd_spectrum: decomposition produced non-finite singular values");

        if (check_reconstruction)
        {
            const Eigen::MatrixXcd r = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
            out.recon_error = (h - r).cwiseAbs().maxCoeff();
            out.factors_checked = true;
        }
        return out;
    }

    inline SingularSpectrum svd_spectrum(const SIChannelMatrix &si, bool check_reconstruction = false)
    {
        return svd_spectrum(si.h, check_reconstruction);
    }

    inline double spectral_norm(const Eigen::MatrixXcd &h) { return svd_spectrum(h).sigmas.front(); }
    inline double spectral_norm(const SIChannelMatrix &si) { return spectral_norm(si.h); }

    // Number of singular values >= eps * sigma_max; 0 for the zero matrix. eps must lie in (0, 1).
    inline std::size_t effective_rank(const SingularSpectrum &spec, double eps)
    {
        if (!(eps > 0.0 && eps < 1.0))
            throw invalid_parameter("effective_rank: eps must lie in (0, 1)");
        if (spec.sigmas.empty() || spec.sigmas.front() == 0.0)
            return 0;
        const double cut = eps * spec.sigmas.front();
        std::size_t k = 0;
        for (double s : spec.sigmas)
            if (s >= cut)
                ++k;
        return k;
    }

    struct Rank1GapRow
    {
        std::int64_t delta1;
        double ratio; // sigma_2 / sigma_1
    };

    // sigma_2 / sigma_1 of the two-antenna partitioned array for each gap delta1.
    // The ratio decays towards zero as the matrix approaches rank one.
    inline std::vector<Rank1GapRow> partitioned_rank1_gap(std::span<const std::int64_t> delta1s, double rho = 1.0)
    {
        std::vector<Rank1GapRow> rows;
        rows.reserve(delta1s.size());
        for (auto d1 : delta1s)
        {
            const auto spec = svd_spectrum(si_matrix(generate_partitioned(2, d1), rho));
            rows.push_back({d1, spec.sigmas[1] / spec.sigmas[0]});
        }
        return rows;
    }

    // Closed-form singular values of the two-antenna interleaved array:
    // sqrt((14 +- 4 sqrt(10)) / 9) * rho / delta2
    inline std::pair<double, double> interleaved_closed_form_n2(double rho, std::int64_t delta2)
    {
        if (!(rho > 0.0) || delta2 < 1)
            throw invalid_parameter("interleaved_closed_form_n2: rho must be positive and delta2 >= 1");
        const double scale = rho / static_cast<double>(delta2);
        const double r10 = std::sqrt(10.0);
        return {std::sqrt((14.0 + 4.0 * r10) / 9.0) * scale, std::sqrt((14.0 - 4.0 * r10) / 9.0) * scale};
    }
}
