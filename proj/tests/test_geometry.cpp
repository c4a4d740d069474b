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

#include <fdsi/geometry.hpp>

#include <random>

using fdsi::ArrayGeometry;
using fdsi::Position;

namespace
{
    std::vector<std::int64_t> ints(const ArrayGeometry &g)
    {
        std::vector<std::int64_t> out;
        for (const auto &p : g.positions())
        {
            REQUIRE(p.denominator() == 1);
            out.push_back(p.numerator());
        }
        return out;
    }

    std::vector<std::int64_t> iota(std::int64_t lo, std::int64_t hi, std::int64_t step = 1)
    {
        std::vector<std::int64_t> v;
        for (auto x = lo; x <= hi; x += step)
            v.push_back(x);
        return v;
    }
}

TEST_CASE("ArrayGeometry - sorted distinct positions")
{
    ArrayGeometry g({Position(3), Position(1, 2), Position(-2)});
    CHECK(g.size() == 3);
    CHECK(g.min() == Position(-2));
    CHECK(g.max() == Position(3));
    CHECK(fdsi::aperture(g) == Position(5));
    CHECK_FALSE(g.on_integer_grid());

    CHECK_THROWS_AS(ArrayGeometry({}), fdsi::invalid_parameter);
    CHECK_THROWS_AS(ArrayGeometry({Position(1), Position(2), Position(1)}), fdsi::invalid_parameter);

    CHECK(fdsi::aperture(ArrayGeometry({Position(5)})) == 0);
}

TEST_CASE("ArrayGeometry - set scaling and translation")
{
    // c (X + a) on X = {0, 1, 3}
    const ArrayGeometry x({Position(0), Position(1), Position(3)});
    CHECK(ints(x.shifted(Position(2)).scaled(Position(3))) == std::vector<std::int64_t>{6, 9, 15});
    CHECK(ints(x.scaled(Position(-1))) == std::vector<std::int64_t>{-3, -1, 0});
    CHECK(x.scaled(Position(1, 2)).positions() == std::vector<Position>{Position(0), Position(1, 2), Position(3, 2)});
    CHECK(ints(x.united(ArrayGeometry({Position(3), Position(7)}))) == std::vector<std::int64_t>{0, 1, 3, 7});
    CHECK(ints(ArrayGeometry::first_n(4)) == std::vector<std::int64_t>{0, 1, 2, 3});
    CHECK_THROWS_AS(x.scaled(Position(0)), fdsi::invalid_parameter);
    CHECK_THROWS_AS(ArrayGeometry::first_n(0), fdsi::invalid_parameter);
}

TEST_CASE("generate_partitioned")
{
    const auto ref11 = fdsi::generate_partitioned(11, 0);
    CHECK(ints(ref11.rx) == iota(0, 10));
    CHECK(ints(ref11.tx) == iota(11, 21));
    CHECK(fdsi::joint_aperture(ref11) == 21);

    const auto one = fdsi::generate_partitioned(1, 0);
    CHECK(ints(one.rx) == std::vector<std::int64_t>{0});
    CHECK(ints(one.tx) == std::vector<std::int64_t>{1});

    const auto gap = fdsi::generate_partitioned(2, 5);
    CHECK(ints(gap.rx) == std::vector<std::int64_t>{0, 1});
    CHECK(ints(gap.tx) == std::vector<std::int64_t>{7, 8});

    CHECK_THROWS_AS(fdsi::generate_partitioned(0, 0), fdsi::invalid_parameter);
    CHECK_THROWS_AS(fdsi::generate_partitioned(3, -1), fdsi::invalid_parameter);
}

TEST_CASE("generate_interleaved")
{
    const auto ref11 = fdsi::generate_interleaved(11, 1);
    CHECK(ints(ref11.rx) == iota(0, 20, 2));
    CHECK(ints(ref11.tx) == iota(1, 21, 2));

    const auto one = fdsi::generate_interleaved(1, 3);
    CHECK(ints(one.rx) == std::vector<std::int64_t>{0});
    CHECK(ints(one.tx) == std::vector<std::int64_t>{3});

    CHECK(fdsi::joint_aperture(fdsi::generate_interleaved(11, 2)) == 42);
    CHECK_THROWS_AS(fdsi::generate_interleaved(4, 0), fdsi::invalid_parameter);
    CHECK_THROWS_AS(fdsi::generate_interleaved(0, 1), fdsi::invalid_parameter);
}

TEST_CASE("generate_nested")
{
    const auto nested11 = fdsi::generate_nested(6, 5, 3);
    CHECK(ints(nested11.rx) == std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, 11, 17, 23, 29, 35});
    CHECK(ints(nested11.tx) == std::vector<std::int64_t>{8, 14, 20, 26, 32, 38, 39, 40, 41, 42, 43});
    CHECK(fdsi::joint_aperture(nested11) == 43);
    CHECK(fdsi::validate(nested11).ok());

    // smallest case coincides with the interleaved array n = 2, delta2 = 1
    const auto tiny = fdsi::generate_nested(1, 1, 1);
    CHECK(ints(tiny.rx) == std::vector<std::int64_t>{0, 2});
    CHECK(ints(tiny.tx) == std::vector<std::int64_t>{1, 3});
    CHECK(fdsi::validate(tiny).ok());
    const auto il = fdsi::generate_interleaved(2, 1);
    CHECK(tiny.rx == il.rx);
    CHECK(tiny.tx == il.tx);

    CHECK_THROWS_AS(fdsi::generate_nested(0, 5, 3), fdsi::invalid_parameter);
    CHECK_THROWS_AS(fdsi::generate_nested(6, 0, 3), fdsi::invalid_parameter);
    CHECK_THROWS_AS(fdsi::generate_nested(6, 5, 0), fdsi::invalid_parameter);
}

TEST_CASE("validate")
{
    const std::vector<Position> zero{Position(0)};
    const auto rep = fdsi::validate(zero, zero);
    REQUIRE_FALSE(rep.ok());
    REQUIRE(rep.errors().size() == 1);
    CHECK(rep.errors()[0] == "colocated Tx/Rx pair at 0");

    const std::vector<Position> rx{Position(0), Position(1)}, tx{Position(2), Position(3)};
    CHECK(fdsi::validate(tx, rx).ok());

    // duplicates are reported but do not fail validation
    const std::vector<Position> dup{Position(4), Position(4)};
    const auto drep = fdsi::validate(dup, rx);
    CHECK(drep.ok());
    CHECK(std::any_of(drep.issues.begin(), drep.issues.end(), [](const auto &i)
                      { return i.severity == fdsi::ValidationIssue::Severity::warning; }));

    CHECK_FALSE(fdsi::validate(std::vector<Position>{}, rx).ok());

    const fdsi::FullDuplexLayout bad{ArrayGeometry({Position(0), Position(1)}), ArrayGeometry({Position(1)}), "bad"};
    CHECK_THROWS_AS(fdsi::require_valid(bad), fdsi::colocated_antennas);
}

TEST_CASE("joint_aperture")
{
    CHECK(fdsi::joint_aperture(fdsi::generate_partitioned(11, 0)) == 21);
    CHECK(fdsi::joint_aperture(fdsi::generate_nested(6, 5, 3)) == 43);
    // delta1 = 23 gives 2N - 1 + 23 = 44, one more than the nested array of the same study
    CHECK(fdsi::joint_aperture(fdsi::generate_partitioned(11, 23)) == 44);
}

TEST_CASE("Generated layouts satisfy family invariants (property)")
{
    std::mt19937_64 rng(20261017);
    std::uniform_int_distribution<int> nd(1, 40), dd(0, 12);
    for (int trial = 0; trial < 300; ++trial)
    {
        const auto n = static_cast<std::size_t>(nd(rng));
        const std::int64_t d = dd(rng);

        const auto p = fdsi::generate_partitioned(n, d);
        REQUIRE(fdsi::validate(p).ok());
        CHECK(p.n_rx() == n);
        CHECK(p.n_tx() == n);
        CHECK(p.tx.min() - p.rx.max() == d + 1);
        CHECK(fdsi::joint_aperture(p) == static_cast<std::int64_t>(2 * n - 1) + d);

        const auto il = fdsi::generate_interleaved(n, d + 1);
        REQUIRE(fdsi::validate(il).ok());
        CHECK(fdsi::joint_aperture(il) == (d + 1) * static_cast<std::int64_t>(2 * n - 1));
        // sorted merge alternates R, T, R, T, ...
        const std::string sk = fdsi::sketch(il);
        std::string merged;
        for (char c : sk)
            if (c != '.')
                merged += c;
        for (std::size_t i = 0; i < merged.size(); ++i)
            CHECK(merged[i] == (i % 2 == 0 ? 'R' : 'T'));

        const auto m1 = static_cast<std::size_t>(nd(rng)), m2 = static_cast<std::size_t>(nd(rng));
        const auto ne = fdsi::generate_nested(m1, m2, d + 1);
        REQUIRE(fdsi::validate(ne).ok());
        CHECK(ne.n_rx() == m1 + m2);
        CHECK(ne.n_tx() == m1 + m2);
        // tx is the mirror image of rx shifted by m1 - 1 + delta3
        const auto mirrored = ne.rx.scaled(Position(-1)).shifted(ne.rx.max() + static_cast<std::int64_t>(m1) - 1 + d + 1);
        CHECK(mirrored == ne.tx);
        CHECK(fdsi::joint_aperture(ne) == (d + 1) * static_cast<std::int64_t>(2 * m2 + 1) + 2 * (static_cast<std::int64_t>(m1) - 1));
    }
}

TEST_CASE("sketch")
{
    CHECK(fdsi::sketch(fdsi::generate_partitioned(3, 1)) == "RRR.TTT");
    CHECK(fdsi::sketch(fdsi::generate_interleaved(2, 2)) == "R.T.R.T");
    const fdsi::FullDuplexLayout half{ArrayGeometry({Position(1, 2)}), ArrayGeometry({Position(0)}), ""};
    CHECK(fdsi::sketch(half) == "rx { 0 } tx { 1/2 }");
}
