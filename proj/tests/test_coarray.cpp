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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include <fdsi/coarray.hpp>

#include <random>

using fdsi::ArrayGeometry;
using fdsi::Position;

namespace
{
    std::vector<std::int64_t> ints(const ArrayGeometry &g)
    {
        std::vector<std::int64_t> v;
        for (const auto &p : g.positions())
            v.push_back(p.numerator());
        return v;
    }

    // compares sum_coarray against exhaustive enumeration
    void check_against_oracle(const fdsi::FullDuplexLayout &layout)
    {
        const auto ca = fdsi::sum_coarray(layout);
        const auto ref = oracle::pair_sums(ints(layout.tx), ints(layout.rx));
        REQUIRE(ca.sums.size() == ref.size());
        std::size_t i = 0;
        for (const auto &[s, m] : ref)
        {
            CHECK(ca.sums[i] == s);
            CHECK(ca.multiplicities[i] == m);
            ++i;
        }
        REQUIRE(ca.contiguous_len.has_value());
        CHECK(*ca.contiguous_len == oracle::longest_run(ref));
        CHECK(ca.total_pairs() == layout.n_tx() * layout.n_rx());
        CHECK(*ca.contiguous_len <= ca.sums.size());
    }
}

TEST_CASE("sum_coarray - small layouts")
{
    const fdsi::FullDuplexLayout l{ArrayGeometry({Position(2), Position(3)}), ArrayGeometry({Position(0), Position(1)}), ""};
    const auto ca = fdsi::sum_coarray(l);
    CHECK(ca.sums == std::vector<Position>{Position(2), Position(3), Position(4)});
    CHECK(ca.multiplicities == std::vector<std::size_t>{1, 2, 1});
    CHECK(ca.contiguous_len == 3u);

    const fdsi::FullDuplexLayout p{ArrayGeometry({Position(5)}), ArrayGeometry({Position(0)}), ""};
    const auto cp = fdsi::sum_coarray(p);
    CHECK(cp.sums == std::vector<Position>{Position(5)});
    CHECK(cp.contiguous_len == 1u);

    // nested(6,5,3): every sum from 8 to 78 is present
    const auto nested = fdsi::sum_coarray(fdsi::generate_nested(6, 5, 3));
    CHECK(nested.contiguous_len == 71u);
    CHECK(*nested.contiguous_len >= 2 * (6 - 1) + 1);
    check_against_oracle(fdsi::generate_nested(6, 5, 3));
}

TEST_CASE("sum_coarray - off-grid layouts report sums only")
{
    const fdsi::FullDuplexLayout l{ArrayGeometry({Position(1, 2), Position(3)}), ArrayGeometry({Position(0), Position(1, 2)}), ""};
    const auto ca = fdsi::sum_coarray(l);
    CHECK_FALSE(ca.contiguous_len.has_value());
    CHECK(ca.sums == std::vector<Position>{Position(1, 2), Position(1), Position(3), Position(7, 2)});
    CHECK(ca.total_pairs() == 4);
}

TEST_CASE("sum_coarray - brute-force equivalence up to N = 64 (property)")
{
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> nd(1, 64), dd(0, 9);
    for (int trial = 0; trial < 60; ++trial)
    {
        const auto n = static_cast<std::size_t>(nd(rng));
        check_against_oracle(fdsi::generate_partitioned(n, dd(rng)));
        check_against_oracle(fdsi::generate_interleaved(n, dd(rng) + 1));
        if (n >= 2)
        {
            const auto [m1, m2] = fdsi::nested_split(n);
            check_against_oracle(fdsi::generate_nested(m1, m2, dd(rng) + 1));
        }
    }

    // random integer layouts
    std::uniform_int_distribution<std::int64_t> pos(-200, 200);
    for (int trial = 0; trial < 60; ++trial)
    {
        std::vector<Position> tx, rx;
        for (int k = nd(rng); k > 0; --k)
            tx.emplace_back(pos(rng));
        for (int k = nd(rng); k > 0; --k)
            rx.emplace_back(pos(rng));
        auto uniq = [](std::vector<Position> &v)
        {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        uniq(tx);
        uniq(rx);
        if (!fdsi::validate(tx, rx).ok())
            continue;
        check_against_oracle({ArrayGeometry(tx), ArrayGeometry(rx), ""});
    }
}

TEST_CASE("sum_coarray - translation and mirror symmetry")
{
    const auto base = fdsi::generate_nested(5, 4, 2);
    const auto ca = fdsi::sum_coarray(base);
    const fdsi::FullDuplexLayout moved{base.tx.shifted(Position(17)), base.rx, ""};
    const auto cm = fdsi::sum_coarray(moved);
    REQUIRE(cm.sums.size() == ca.sums.size());
    for (std::size_t i = 0; i < ca.sums.size(); ++i)
        CHECK(cm.sums[i] == ca.sums[i] + 17);
    CHECK(cm.multiplicities == ca.multiplicities);
    CHECK(cm.contiguous_len == ca.contiguous_len);

    for (auto [m1, m2, d3] : {std::tuple{6u, 5u, 3}, std::tuple{3u, 7u, 1}, std::tuple{10u, 10u, 4}})
    {
        const auto c = fdsi::sum_coarray(fdsi::generate_nested(m1, m2, d3));
        auto rev = c.multiplicities;
        std::reverse(rev.begin(), rev.end());
        CHECK(rev == c.multiplicities);
        // sums symmetric about the midpoint
        for (std::size_t i = 0; i < c.sums.size(); ++i)
            CHECK(c.sums[i] + c.sums[c.sums.size() - 1 - i] == c.sums.front() + c.sums.back());
    }
}

TEST_CASE("coarray_scaling")
{
    std::vector<std::size_t> ns;
    for (std::size_t n = 10; n <= 60; ++n)
        ns.push_back(n);
    const auto rows = fdsi::coarray_scaling(ns, fdsi::ApertureRule::quadratic());
    REQUIRE(rows.size() == ns.size());
    for (const auto &r : rows)
    {
        const auto layout = r.params.layout();
        std::vector<std::int64_t> tx, rx;
        for (const auto &p : layout.tx.positions())
            tx.push_back(p.numerator());
        for (const auto &p : layout.rx.positions())
            rx.push_back(p.numerator());
        CHECK(r.contiguous_len == oracle::longest_run(oracle::pair_sums(tx, rx)));
    }
    // frozen from exhaustive enumeration
    CHECK(rows.front().contiguous_len == 29);
    CHECK(rows.back().contiguous_len == 1739);
    const double slope = fdsi::loglog_slope(rows);
    CHECK(slope >= 1.7);
    CHECK(slope <= 2.3);

    // smallest case
    const std::vector<std::size_t> two{2};
    CHECK(fdsi::coarray_scaling(two, fdsi::ApertureRule::quadratic()).front().contiguous_len > 0);

    // constant aperture: the co-array cannot outgrow the sum span 2L + 1
    std::vector<std::size_t> ns2;
    for (std::size_t n = 10; n <= 30; ++n)
        ns2.push_back(n);
    for (const auto &r : fdsi::coarray_scaling(ns2, fdsi::ApertureRule::constant(100)))
        CHECK(static_cast<std::int64_t>(r.contiguous_len) <= 2 * r.aperture.numerator() + 1);

    CHECK_THROWS_AS(fdsi::coarray_scaling(std::vector<std::size_t>{}, fdsi::ApertureRule::quadratic()), fdsi::invalid_parameter);
}

TEST_CASE("loglog_slope")
{
    const std::vector<double> x{1, 2, 4, 8}, y{3, 12, 48, 192};
    CHECK_THAT(fdsi::loglog_slope(x, y), Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_THROWS_AS(fdsi::loglog_slope(std::vector<double>{1}, std::vector<double>{1}), fdsi::invalid_parameter);
    CHECK_THROWS_AS(fdsi::loglog_slope(std::vector<double>{1, 1}, std::vector<double>{1, 2}), fdsi::invalid_parameter);
}
