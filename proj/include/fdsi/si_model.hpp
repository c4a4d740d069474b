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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>
#include <vector>

namespace fdsi
{
    using cplx = std::complex<double>;

    // Exact Tx-Rx distance matrix, rows index Rx antennas and columns index Tx antennas
    class DistanceMatrix
    {
    public:
        DistanceMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        const Position &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
        Position &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

        bool all_integer() const
        {
            return std::all_of(data_.begin(), data_.end(), [](const Position &p)
                               { return is_integer(p); });
        }

        bool operator==(const DistanceMatrix &) const = default;

    private:
        std::size_t rows_, cols_;
        std::vector<Position> data_;
    };

    // delta(n, m) = |rx[n] - tx[m]|. Throws colocated_antennas for an invalid layout.
    inline DistanceMatrix distance_matrix(const FullDuplexLayout &layout)
    {
        require_valid(layout);
        const auto &rx = layout.rx.positions();
        const auto &tx = layout.tx.positions();
        DistanceMatrix d(rx.size(), tx.size());
        for (std::size_t n = 0; n < rx.size(); ++n)
            for (std::size_t m = 0; m < tx.size(); ++m)
                d(n, m) = boost::abs(rx[n] - tx[m]);
        return d;
    }

    namespace detail
    {
        inline double abs_diff(const Position &a, const Position &b) { return to_double(boost::abs(a - b)); }
        inline double abs_diff(const cplx &a, const cplx &b) { return std::abs(a - b); }
        inline double abs_diff(double a, double b) { return std::abs(a - b); }

        inline bool exact_equal(const Position &a, const Position &b) { return a == b; }
        inline bool exact_equal(const cplx &a, const cplx &b) { return a == b; }
        inline bool exact_equal(double a, double b) { return a == b; }
    }

    // True iff every diagonal of m is constant within tol. tol = 0 requires exact equality.
    template <class Matrix>
        requires requires(const Matrix &m) { m.rows(); m.cols(); m(0, 0); }
    bool is_toeplitz(const Matrix &m, double tol = 0.0)
    {
        const auto rows = static_cast<std::size_t>(m.rows());
        const auto cols = static_cast<std::size_t>(m.cols());
        for (std::size_t i = 1; i < rows; ++i)
            for (std::size_t j = 1; j < cols; ++j)
            {
                const auto &a = m(i, j);
                const auto &b = m(i - 1, j - 1);
                if (tol == 0.0 ? !detail::exact_equal(a, b) : detail::abs_diff(a, b) > tol)
                    return false;
            }
        return true;
    }

    // Spherical-wave coupling between two antennas at distance delta (half-wavelength units):
    // rho * exp(j*pi*delta) / delta. Integer distances use the exact sign (-1)^delta, and
    // half-integer distances the exact phase +-j; other phases reduce delta mod 2 exactly first.
    inline cplx spherical_wave_coupling(const Position &delta, double rho)
    {
        if (delta <= 0)
            throw colocated_antennas("spherical_wave_coupling: distance must be positive");
        const double mag = rho / to_double(delta);
        if (is_integer(delta))
            return {(delta.numerator() % 2 == 0) ? mag : -mag, 0.0};

        // delta mod 2, exact
        const std::int64_t den = delta.denominator();
        const Position frac(delta.numerator() % (2 * den), den);
        if (frac == Position(1, 2))
            return {0.0, mag};
        if (frac == Position(3, 2))
            return {0.0, -mag};
        const double phase = std::numbers::pi * to_double(frac);
        return {mag * std::cos(phase), mag * std::sin(phase)};
    }

    struct SIChannelMatrix
    {
        Eigen::MatrixXcd h; // N_rx x N_tx
        double rho = 1.0;
        FullDuplexLayout layout;
        DistanceMatrix delta;
    };

    // Self-interference channel under the spherical-wave model. Throws invalid_parameter for
    // rho <= 0 (or non-finite) and colocated_antennas for an invalid layout.
    inline SIChannelMatrix si_matrix(const FullDuplexLayout &layout, double rho = 1.0)
    {
        if (!(rho > 0.0) || !std::isfinite(rho))
            throw invalid_parameter("si_matrix: rho must be a positive finite number");
        auto d = distance_matrix(layout);
        Eigen::MatrixXcd h(d.rows(), d.cols());
        for (std::size_t n = 0; n < d.rows(); ++n)
            for (std::size_t m = 0; m < d.cols(); ++m)
                h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = spherical_wave_coupling(d(n, m), rho);
        return {std::move(h), rho, layout, std::move(d)};
    }

    enum class SignPattern
    {
        alternating, // real entries whose sign follows (-1)^delta, both parities present
        uniform,     // real entries that all share one sign
        mixed,       // real entries, neither of the above
        complex      // some entry has a nonzero imaginary part
    };

    inline std::string_view to_string(SignPattern p)
    {
        switch (p)
        {
        case SignPattern::alternating:
            return "alternating";
        case SignPattern::uniform:
            return "uniform";
        case SignPattern::mixed:
            return "mixed";
        case SignPattern::complex:
            return "complex";
        }
        return "unknown";
    }

    inline SignPattern sign_pattern(const SIChannelMatrix &si)
    {
        const auto &h = si.h;
        for (Eigen::Index i = 0; i < h.size(); ++i)
            if (h.data()[i].imag() != 0.0)
                return SignPattern::complex;

        bool any_pos = false, any_neg = false;
        for (Eigen::Index i = 0; i < h.size(); ++i)
            (h.data()[i].real() > 0.0 ? any_pos : any_neg) = true;
        if (!(any_pos && any_neg))
            return SignPattern::uniform;

        // Real entries imply every distance is an integer; the sign must be a fixed
        // multiple of (-1)^delta across the whole matrix.
        int expected = 0;
        for (std::size_t n = 0; n < si.delta.rows(); ++n)
            for (std::size_t m = 0; m < si.delta.cols(); ++m)
            {
                const auto &d = si.delta(n, m);
                if (!is_integer(d))
                    return SignPattern::mixed;
                const int parity_sign = (d.numerator() % 2 == 0) ? 1 : -1;
                const int entry_sign = h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)).real() > 0.0 ? 1 : -1;
                const int rel = parity_sign * entry_sign;
                if (expected == 0)
                    expected = rel;
                else if (rel != expected)
                    return SignPattern::mixed;
            }
        return SignPattern::alternating;
    }

    // The H_si * s term of the uplink receive signal
    inline Eigen::VectorXcd si_leakage(const Eigen::MatrixXcd &h, const Eigen::VectorXcd &s)
    {
        if (s.size() != h.cols())
            throw dimension_mismatch("si_leakage: signal length " + std::to_string(s.size()) +
                                     " does not match N_tx = " + std::to_string(h.cols()));
        return h * s;
    }

    inline Eigen::VectorXcd si_leakage(const SIChannelMatrix &si, const Eigen::VectorXcd &s) { return si_leakage(si.h, s); }
}
