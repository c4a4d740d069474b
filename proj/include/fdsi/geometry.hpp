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

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// boost::rational's free operator==(integer, rational) calls itself under C++20 reversed-operand
// rewriting, since GCC prefers it over the member template. Exact-match non-templates win overload
// resolution and forward to the member comparison.
namespace boost
{
#define FDSI_RATIONAL_EQ(I)                                                                                     \
    constexpr bool operator==(const rational<std::int64_t> &a, I b) { return a.operator==(std::int64_t(b)); } \
    constexpr bool operator==(I b, const rational<std::int64_t> &a) { return a.operator==(std::int64_t(b)); }
    FDSI_RATIONAL_EQ(int)
    FDSI_RATIONAL_EQ(long)
    FDSI_RATIONAL_EQ(unsigned)
    FDSI_RATIONAL_EQ(unsigned long)
    FDSI_RATIONAL_EQ(long long)
#undef FDSI_RATIONAL_EQ
}

namespace fdsi
{
    // Antenna position on the array axis, in half-wavelength units. Exact so that distances
    // and the (-1)^Delta phase of integer-grid layouts are computed without rounding.
    using Position = boost::rational<std::int64_t>;

    inline bool is_integer(const Position &p) { return p.denominator() == 1; }
    inline double to_double(const Position &p) { return boost::rational_cast<double>(p); }

    inline std::string to_string(const Position &p)
    {
        if (is_integer(p))
            return std::to_string(p.numerator());
        return std::to_string(p.numerator()) + "/" + std::to_string(p.denominator());
    }

    // Sorted set of distinct collinear antenna positions (at least one element)
    class ArrayGeometry
    {
    public:
        // Sorts the input. Throws invalid_parameter if it is empty or contains duplicates.
        explicit ArrayGeometry(std::vector<Position> positions) : pos_(std::move(positions))
        {
            if (pos_.empty())
                throw invalid_parameter("ArrayGeometry: at least one antenna position is required");
            std::sort(pos_.begin(), pos_.end());
            auto dup = std::adjacent_find(pos_.begin(), pos_.end());
            if (dup != pos_.end())
                throw invalid_parameter("ArrayGeometry: duplicate position " + to_string(*dup));
        }

        // {0, 1, ..., n-1}
        static ArrayGeometry first_n(std::size_t n)
        {
            if (n == 0)
                throw invalid_parameter("ArrayGeometry::first_n: n must be at least 1");
            std::vector<Position> p;
            p.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
                p.emplace_back(static_cast<std::int64_t>(i));
            return ArrayGeometry(std::move(p));
        }

        const std::vector<Position> &positions() const { return pos_; }
        std::size_t size() const { return pos_.size(); }
        const Position &min() const { return pos_.front(); }
        const Position &max() const { return pos_.back(); }
        Position aperture() const { return max() - min(); }

        bool on_integer_grid() const
        {
            return std::all_of(pos_.begin(), pos_.end(), [](const Position &p)
                               { return is_integer(p); });
        }

        std::vector<double> to_doubles() const
        {
            std::vector<double> out;
            out.reserve(pos_.size());
            for (const auto &p : pos_)
                out.push_back(to_double(p));
            return out;
        }

        bool contains(const Position &p) const { return std::binary_search(pos_.begin(), pos_.end(), p); }

        // c * X; c must be nonzero (c = 0 collapses every antenna onto one point)
        ArrayGeometry scaled(const Position &c) const
        {
            if (c == 0)
                throw invalid_parameter("ArrayGeometry::scaled: scale factor must be nonzero");
            std::vector<Position> p(pos_);
            for (auto &x : p)
                x *= c;
            return ArrayGeometry(std::move(p));
        }

        // X + c
        ArrayGeometry shifted(const Position &c) const
        {
            std::vector<Position> p(pos_);
            for (auto &x : p)
                x += c;
            return ArrayGeometry(std::move(p));
        }

        // Set union; positions present in both appear once
        ArrayGeometry united(const ArrayGeometry &other) const
        {
            std::vector<Position> p;
            p.reserve(size() + other.size());
            std::set_union(pos_.begin(), pos_.end(), other.pos_.begin(), other.pos_.end(), std::back_inserter(p));
            return ArrayGeometry(std::move(p));
        }

        bool operator==(const ArrayGeometry &) const = default;

    private:
        std::vector<Position> pos_;
    };

    inline Position aperture(const ArrayGeometry &g) { return g.aperture(); }

    // Tx geometry paired with an Rx geometry. Disjointness is checked by validate() / require_valid(),
    // not by construction, so that invalid layouts read from files can still be reported on.
    struct FullDuplexLayout
    {
        ArrayGeometry tx;
        ArrayGeometry rx;
        std::string label;

        std::size_t n_tx() const { return tx.size(); }
        std::size_t n_rx() const { return rx.size(); }
        bool on_integer_grid() const { return tx.on_integer_grid() && rx.on_integer_grid(); }

        bool operator==(const FullDuplexLayout &) const = default;
    };

    // L = max(tx u rx) - min(tx u rx)
    inline Position joint_aperture(const FullDuplexLayout &layout)
    {
        return std::max(layout.tx.max(), layout.rx.max()) - std::min(layout.tx.min(), layout.rx.min());
    }

    struct ValidationIssue
    {
        enum class Severity
        {
            info,
            warning,
            error
        };
        Severity severity;
        std::string message;
    };

    struct ValidationReport
    {
        std::vector<ValidationIssue> issues;

        bool ok() const
        {
            return std::none_of(issues.begin(), issues.end(), [](const ValidationIssue &i)
                                { return i.severity == ValidationIssue::Severity::error; });
        }

        std::vector<std::string> errors() const
        {
            std::vector<std::string> out;
            for (const auto &i : issues)
                if (i.severity == ValidationIssue::Severity::error)
                    out.push_back(i.message);
            return out;
        }
    };

    // Checks raw (possibly unsorted, possibly duplicated) position lists. Only Tx/Rx overlap and empty
    // sides are errors; duplicates within one side are warnings, everything else informational.
    inline ValidationReport validate(std::span<const Position> tx, std::span<const Position> rx)
    {
        using S = ValidationIssue::Severity;
        ValidationReport rep;

        auto sorted = [](std::span<const Position> s)
        {
            std::vector<Position> v(s.begin(), s.end());
            std::sort(v.begin(), v.end());
            return v;
        };
        const auto t = sorted(tx), r = sorted(rx);

        if (t.empty())
            rep.issues.push_back({S::error, "tx: no antennas"});
        if (r.empty())
            rep.issues.push_back({S::error, "rx: no antennas"});

        auto check_dups = [&](const std::vector<Position> &v, const char *side)
        {
            for (std::size_t i = 1; i < v.size(); ++i)
                if (v[i] == v[i - 1] && (i < 2 || v[i - 2] != v[i]))
                    rep.issues.push_back({S::warning, std::string(side) + ": duplicate position " + to_string(v[i])});
        };
        check_dups(t, "tx");
        check_dups(r, "rx");

        std::vector<Position> common;
        std::set_intersection(t.begin(), t.end(), r.begin(), r.end(), std::back_inserter(common));
        common.erase(std::unique(common.begin(), common.end()), common.end());
        for (const auto &p : common)
            rep.issues.push_back({S::error, "colocated Tx/Rx pair at " + to_string(p)});

        if (!t.empty() && !r.empty())
        {
            const Position lo = std::min(t.front(), r.front()), hi = std::max(t.back(), r.back());
            rep.issues.push_back({S::info, "joint aperture " + to_string(hi - lo)});
            if (lo < 0)
                rep.issues.push_back({S::info, "negative positions present (min " + to_string(lo) + ")"});
            auto all_int = [](const std::vector<Position> &v)
            { return std::all_of(v.begin(), v.end(), [](const Position &p)
                                 { return is_integer(p); }); };
            if (!all_int(t) || !all_int(r))
                rep.issues.push_back({S::info, "positions not on the integer half-wavelength grid"});
        }
        return rep;
    }

    inline ValidationReport validate(const FullDuplexLayout &layout)
    {
        return validate(std::span<const Position>(layout.tx.positions()), std::span<const Position>(layout.rx.positions()));
    }

    // Throws colocated_antennas if any Tx and Rx antenna share a position.
    inline void require_valid(const FullDuplexLayout &layout)
    {
        const auto rep = validate(layout);
        if (!rep.ok())
        {
            std::string msg = "invalid layout";
            if (!layout.label.empty())
                msg += " '" + layout.label + "'";
            for (const auto &e : rep.errors())
                msg += ": " + e;
            throw colocated_antennas(msg);
        }
    }

    // Partitioned array: rx = {0..n-1}, tx = rx + n + delta1
    inline FullDuplexLayout generate_partitioned(std::size_t n, std::int64_t delta1)
    {
        if (n == 0)
            throw invalid_parameter("generate_partitioned: n must be at least 1");
        if (delta1 < 0)
            throw invalid_parameter("generate_partitioned: delta1 must be nonnegative");
        auto rx = ArrayGeometry::first_n(n);
        auto tx = rx.shifted(Position(static_cast<std::int64_t>(n) + delta1));
        return {std::move(tx), std::move(rx),
                "partitioned(n=" + std::to_string(n) + ", delta1=" + std::to_string(delta1) + ")"};
    }

    // Interleaved array: rx = 2*delta2*{0..n-1}, tx = rx + delta2
    inline FullDuplexLayout generate_interleaved(std::size_t n, std::int64_t delta2)
    {
        if (n == 0)
            throw invalid_parameter("generate_interleaved: n must be at least 1");
        if (delta2 < 1)
            throw invalid_parameter("generate_interleaved: delta2 must be at least 1 (delta2 = 0 colocates Tx and Rx)");
        auto rx = ArrayGeometry::first_n(n).scaled(Position(2 * delta2));
        auto tx = rx.shifted(Position(delta2));
        return {std::move(tx), std::move(rx),
                "interleaved(n=" + std::to_string(n) + ", delta2=" + std::to_string(delta2) + ")"};
    }

    // Nested full-duplex array:
    //   rx = {0..m1-1} u (2*delta3*({0..m2-1} + 1) + m1 - 1)
    //   tx = max(rx) - rx + m1 - 1 + delta3
    inline FullDuplexLayout generate_nested(std::size_t m1, std::size_t m2, std::int64_t delta3)
    {
        if (m1 == 0 || m2 == 0 || delta3 < 1)
            throw invalid_parameter("generate_nested: m1, m2 and delta3 must all be at least 1");
        const auto dense = ArrayGeometry::first_n(m1);
        const auto sparse = ArrayGeometry::first_n(m2)
                                .shifted(Position(1))
                                .scaled(Position(2 * delta3))
                                .shifted(Position(static_cast<std::int64_t>(m1) - 1));
        auto rx = dense.united(sparse);
        auto tx = rx.scaled(Position(-1)).shifted(rx.max() + static_cast<std::int64_t>(m1) - 1 + delta3);
        return {std::move(tx), std::move(rx),
                "nested(m1=" + std::to_string(m1) + ", m2=" + std::to_string(m2) + ", delta3=" + std::to_string(delta3) + ")"};
    }

    // One character per integer grid point from min to max: 'R' receive, 'T' transmit, 'X' both, '.' empty.
    // Off-grid layouts fall back to listing positions.
    inline std::string sketch(const FullDuplexLayout &layout)
    {
        const Position lo = std::min(layout.tx.min(), layout.rx.min());
        if (!layout.on_integer_grid() || joint_aperture(layout) > 4096)
        {
            std::string s = "rx {";
            for (const auto &p : layout.rx.positions())
                s += " " + to_string(p);
            s += " } tx {";
            for (const auto &p : layout.tx.positions())
                s += " " + to_string(p);
            return s + " }";
        }
        std::string s(static_cast<std::size_t>(joint_aperture(layout).numerator()) + 1, '.');
        for (const auto &p : layout.rx.positions())
            s[static_cast<std::size_t>((p - lo).numerator())] = 'R';
        for (const auto &p : layout.tx.positions())
        {
            auto &c = s[static_cast<std::size_t>((p - lo).numerator())];
            c = (c == 'R') ? 'X' : 'T';
        }
        return s;
    }
}
