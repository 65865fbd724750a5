// SPDX-License-Identifier: Apache-2.0
//
// jpta-beam: frequency-dependent 3D beam design for joint phase-time arrays
// Copyright (C) 2026 The jpta-beam authors
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

#include "linsys_oracle.hpp"

#include "jpta/analytic.hpp"
#include "jpta/gain.hpp"
#include "jpta/linsys.hpp"
#include "jpta/objective.hpp"
#include "jpta/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace jpta;

using oracle::brute_force_minimax;
using oracle::l2;
using oracle::linf;
using oracle::pinv_fit;
using oracle::random_system;
using oracle::raw_system;

TEST_CASE("nu examples")
{
    CHECK(nu(0, 0, Direction(33.0, 120.0)) == 0.0);
    for (std::size_t y = 0; y < 4; ++y)
        for (std::size_t z = 0; z < 4; ++z)
            CHECK(std::abs(nu(y, z, Direction(0.0, 90.0))) < 1e-14);
    CHECK(nu(2, 1, Direction(90.0, 90.0)) == doctest::Approx(2.0 * oracle::pi).epsilon(1e-12));
    const Direction d(20.0, 70.0);
    CHECK(nu(3, 5, d) == doctest::Approx(nu_az(3, d) + nu_el(5, d)));
}

TEST_CASE("k offsets")
{
    CHECK(k_offsets(std::vector<double>{1.3}) == std::vector<long>{0});
    CHECK(k_offsets(std::vector<double>{0.0, 7.0}) == std::vector<long>{0, -1});
    CHECK(7.0 - 2.0 * oracle::pi == doctest::Approx(0.7168).epsilon(1e-4));
    CHECK(k_offsets(std::vector<double>{3.0, 3.0}) == std::vector<long>{0, 0});
    // Exact half turn rounds away from zero.
    CHECK(k_offsets(std::vector<double>{0.0, -oracle::pi}) == std::vector<long>{0, 1});
    CHECK_THROWS_AS(k_offsets(std::vector<double>{}), std::invalid_argument);

    oracle::Random rnd(17);
    for (int t = 0; t < 200; ++t)
    {
        std::vector<double> nus(rnd.index(1, 6));
        for (double &v : nus)
            v = rnd.uniform(-60.0, 60.0);
        const auto k = k_offsets(nus);
        CHECK(k[0] == 0);
        for (std::size_t i = 1; i < nus.size(); ++i)
        {
            const double prev = nus[i - 1] + 2.0 * oracle::pi * double(k[i - 1]);
            const double cur = nus[i] + 2.0 * oracle::pi * double(k[i]);
            CHECK(std::abs(cur - prev) <= oracle::pi + 1e-9);
        }
    }
}

TEST_CASE("scenario partition")
{
    const UserScenario two({Direction(0, 90), Direction(10, 100)}, {0.5, 0.5}, 5);
    CHECK(two.subbands()[0].size() == 2);
    CHECK(two.subbands()[1].size() == 3);
    CHECK_THROWS_AS(FrequencyGrid(28e9, 120e3, 4), std::invalid_argument);

    CHECK_THROWS_AS(UserScenario({Direction(0, 90)}, {0.9}, 5), std::invalid_argument);
    CHECK_THROWS_AS(UserScenario({Direction(0, 90), Direction(0, 90)}, {1.2, -0.2}, 5), std::invalid_argument);
    CHECK_THROWS_AS(UserScenario({Direction(0, 90), Direction(0, 90)}, {0.5, 0.5}, 0), std::invalid_argument);
    CHECK_THROWS_AS(UserScenario({Direction(0, 90), Direction(0, 90)}, {0.05, 0.95}, 5), std::invalid_argument);
    CHECK_THROWS_AS(UserScenario({Direction(0, 90)}, {0.5, 0.5}, 5), std::invalid_argument);

    oracle::Random rnd(8);
    for (auto rule : {PartitionRule::cumulative_floor, PartitionRule::per_user_floor})
        for (int t = 0; t < 100; ++t)
        {
            const std::size_t n = rnd.index(1, 6);
            const std::size_t m_count = 2 * rnd.index(20, 400) + 1;
            const UserScenario s(std::vector<Direction>(n, Direction(0, 90)), rnd.alphas(n), m_count, rule);
            std::size_t next = 0;
            for (std::size_t i = 0; i < n; ++i)
            {
                const auto &band = s.subbands()[i];
                REQUIRE(!band.empty());
                for (std::size_t m : band)
                {
                    CHECK(m == next);
                    CHECK(s.owner()[m] == i);
                    ++next;
                }
                const double ideal = s.alphas()[i] * double(m_count);
                if (i + 1 < n)
                    CHECK(std::abs(double(band.size()) - ideal) < 1.0 + 1e-9);
                if (rule == PartitionRule::per_user_floor && i + 1 < n)
                    CHECK(band.size() == std::size_t(std::floor(ideal + 1e-9)));
            }
            CHECK(next == m_count);
        }

    const auto eq = equal_alphas(4);
    CHECK(std::accumulate(eq.begin(), eq.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("build_system examples")
{
    const ArrayGeometry a(4, 4);
    const FrequencyGrid g(28e9, 120e3, 9);
    const UserScenario broadside({Direction(0, 90)}, {1.0}, 9);
    const auto s = build_system(a, g, broadside, 3, 2);
    for (double b : s.rhs)
        CHECK(std::abs(b) < 1e-12);

    const UserScenario two({Direction(0, 90), Direction(0, 90)}, {0.5, 0.5}, 5);
    const auto t = build_system(two, std::vector<double>{0.0, 7.0});
    REQUIRE(t.rhs.size() == 5);
    CHECK(t.rhs[0] == 0.0);
    CHECK(t.rhs[1] == 0.0);
    for (std::size_t m = 2; m < 5; ++m)
        CHECK(t.rhs[m] == doctest::Approx(7.0 - 2.0 * oracle::pi));
    CHECK(t.offsets == std::vector<long>{0, -1});
    CHECK(t.row_index(0) == -2.0);
    CHECK(t.row_index(4) == 2.0);

    oracle::Random rnd(99);
    const FrequencyGrid big(28e9, 120e3, 101);
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto sc = rnd.scenario(rnd.index(1, 5), 101);
        const auto sys = build_system(a, big, sc, rnd.index(0, 3), rnd.index(0, 3));
        for (std::size_t i = 0; i < sc.user_count(); ++i)
            for (std::size_t m : sc.subbands()[i])
                CHECK(sys.rhs[m] == doctest::Approx(sys.nu[i] + 2.0 * oracle::pi * double(sys.offsets[i])));
        for (std::size_t i = 1; i < sc.user_count(); ++i)
            CHECK(std::abs(sys.rhs[sc.subbands()[i].front()] - sys.rhs[sc.subbands()[i - 1].back()]) <=
                  oracle::pi + 1e-9);
    }
    CHECK_THROWS_AS(build_system(a, g, broadside, 4, 0), std::invalid_argument);
}

TEST_CASE("least squares examples")
{
    const auto c = solve_ls(raw_system({2.5, 2.5, 2.5, 2.5, 2.5}));
    CHECK(c.phase_var == doctest::Approx(2.5));
    CHECK(c.slope_var == doctest::Approx(0.0));
    CHECK(c.residual_l2 == doctest::Approx(0.0));

    const auto l = solve_ls(raw_system({0.0, 1.0, 2.0}));
    const auto p = pinv_fit(raw_system({0.0, 1.0, 2.0}));
    CHECK(l.phase_var == doctest::Approx(1.0));
    CHECK(l.slope_var == doctest::Approx(1.0));
    CHECK(l.residual_linf == doctest::Approx(0.0));
    CHECK(p(0) == doctest::Approx(1.0));
    CHECK(p(1) == doctest::Approx(1.0));

    const auto one = solve_ls(raw_system({0.7}));
    CHECK(one.degenerate);
    CHECK(one.slope_var == 0.0);
    CHECK(one.phase_var == doctest::Approx(0.7));

    CHECK_THROWS_AS(solve_ls(raw_system({})), std::invalid_argument);
}

TEST_CASE("least squares closed form matches the weighted target sum")
{
    const ArrayGeometry a(16, 24);
    const FrequencyGrid g(28e9, 120e3, 793);
    const UserScenario s({Direction(-60, 90), Direction(60, 120)}, {0.3, 0.7}, 793);
    for (std::size_t y : {0ul, 5ul, 15ul})
        for (std::size_t z : {0ul, 7ul, 23ul})
        {
            const auto sys = build_system(a, g, s, y, z);
            const auto fit = solve_ls(sys);
            double weighted = 0.0;
            for (std::size_t i = 0; i < 2; ++i)
                weighted += s.alphas()[i] * (sys.nu[i] + 2.0 * oracle::pi * double(sys.offsets[i]));
            CHECK(std::abs(fit.phase_var - weighted) <= 2.0 * oracle::pi / 793.0);

            // Exact when block sizes are used as weights.
            double exact = 0.0;
            for (std::size_t i = 0; i < 2; ++i)
                exact += double(s.subbands()[i].size()) / 793.0 *
                         (sys.nu[i] + 2.0 * oracle::pi * double(sys.offsets[i]));
            CHECK(fit.phase_var == doctest::Approx(exact).epsilon(1e-12));
        }
}

TEST_CASE("least squares optimality on random systems")
{
    oracle::Random rnd(123);
    for (int t = 0; t < 200; ++t)
    {
        const auto s = random_system(rnd, 61);
        const auto fit = solve_ls(s);
        if (s.m_count > 1)
        {
            const auto p = pinv_fit(s);
            CHECK(oracle::rel_close(fit.phase_var, p(0), 1e-9));
            CHECK(oracle::rel_close(fit.slope_var, p(1), 1e-9));
        }
        CHECK(fit.residual_l2 == doctest::Approx(l2(s, fit.phase_var, fit.slope_var)).epsilon(1e-12));
        for (int k = 0; k < 1000; ++k)
        {
            const double d1 = rnd.uniform(-1.0, 1.0) * std::pow(10.0, rnd.uniform(-6.0, 0.0));
            const double d2 = rnd.uniform(-1.0, 1.0) * std::pow(10.0, rnd.uniform(-6.0, 0.0));
            CHECK(fit.residual_l2 <= l2(s, fit.phase_var + d1, fit.slope_var + d2) + 1e-12);
        }
    }
}

TEST_CASE("minimax examples")
{
    const auto lin = raw_system({-1.0, 0.5, 2.0, 3.5, 5.0});
    const auto mm = solve_minimax(lin);
    const auto ls = solve_ls(lin);
    CHECK(mm.residual_linf == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mm.phase_var == doctest::Approx(ls.phase_var));
    CHECK(mm.slope_var == doctest::Approx(ls.slope_var));

    const auto step = raw_system({0.0, 0.0, 1.0});
    const auto f = solve_minimax(step);
    CHECK(f.phase_var == doctest::Approx(0.25));
    CHECK(f.slope_var == doctest::Approx(0.5));
    CHECK(f.residual_linf == doctest::Approx(0.25));
    CHECK(has_equioscillation(step, f));
    // Residual signs in row order: -, +, -.
    CHECK(f.phase_var - f.slope_var - 0.0 < 0.0);
    CHECK(f.phase_var - 0.0 > 0.0);
    CHECK(f.phase_var + f.slope_var - 1.0 < 0.0);
    CHECK(brute_force_minimax(step) == doctest::Approx(0.25).epsilon(1e-6));

    const auto single = solve_minimax(raw_system({1.5}));
    CHECK(single.residual_linf == 0.0);
    CHECK(single.phase_var == 1.5);

    CHECK(solve(step, Criterion::minimax).residual_linf == doctest::Approx(0.25));
    CHECK(solve(step, Criterion::ls).residual_l2 <= f.residual_l2);
}

TEST_CASE("minimax matches brute force and carries a certificate")
{
    oracle::Random rnd(321);
    for (int t = 0; t < 30; ++t)
    {
        const auto s = random_system(rnd, 21);
        const auto fit = solve_minimax(s);
        CHECK(std::abs(fit.residual_linf - brute_force_minimax(s)) < 1e-4);
        CHECK(fit.residual_linf == doctest::Approx(linf(s, fit.phase_var, fit.slope_var)).epsilon(1e-12));
        if (fit.residual_linf > 1e-9)
            CHECK(has_equioscillation(s, fit));
    }
}

TEST_CASE("norm ordering between the two criteria")
{
    oracle::Random rnd(77);
    for (int t = 0; t < 300; ++t)
    {
        const auto s = random_system(rnd, 201);
        const auto ls = solve_ls(s);
        const auto mm = solve_minimax(s);
        CHECK(mm.residual_linf <= ls.residual_linf + 1e-12);
        CHECK(ls.residual_l2 <= mm.residual_l2 + 1e-12);
    }
}

TEST_CASE("analytic solutions")
{
    const ArrayGeometry a(16, 24);
    const FrequencyGrid g(28e9, 120e3, 793);
    const UserScenario broadside({Direction(0, 90)}, {1.0}, 793);
    for (auto crit : {Criterion::ls, Criterion::minimax})
    {
        const auto j = joint_analytic(a, g, broadside, crit);
        for (double p : j.phase.values())
            CHECK(circular_distance(p, 0.0) < 1e-9);
        for (double d : j.delay.values())
            CHECK(std::abs(d) < 1e-15);
        const auto s = separated_analytic(a, g, broadside, crit);
        for (const auto *v : {&s.phase_az, &s.phase_el})
            for (double p : *v)
                CHECK(circular_distance(p, 0.0) < 1e-9);
        for (const auto *v : {&s.delay_az, &s.delay_el})
            for (double d : *v)
                CHECK(std::abs(d) < 1e-15);
    }

    oracle::Random rnd(4);
    for (int t = 0; t < 5; ++t)
    {
        const UserScenario one({Direction(rnd.uniform(-60, 60), rnd.uniform(80, 130))}, {1.0}, 793);
        const auto j = joint_analytic(a, g, one, Criterion::ls);
        const auto s = separated_analytic(a, g, one, Criterion::ls);
        const double gj = gain(a, g, j, one.directions()[0], 396);
        const double gs = gain(a, g, s.expand(), one.directions()[0], 396);
        CHECK(gj == doctest::Approx(384.0).epsilon(0.01));
        CHECK(std::abs(gj - gs) <= 1e-6 * gj);
    }

    const UserScenario two({Direction(-60, 90), Direction(60, 120)}, {0.5, 0.5}, 793);
    const auto j = joint_analytic(a, g, two, Criterion::ls);
    // Every system of element (0, 0) has zero targets; the shift to a
    // non-negative delay range only adds the matching carrier phase.
    const double shift = j.delay(0, 0);
    CHECK(shift >= 0.0);
    CHECK(circular_distance(j.phase(0, 0), wrap_phase(-2.0 * oracle::pi * g.carrier() * shift)) < 1e-6);
    CHECK(*std::min_element(j.delay.values().begin(), j.delay.values().end()) == 0.0);

    const UserScenario wrong({Direction(0, 90)}, {1.0}, 11);
    CHECK_THROWS_AS(joint_analytic(a, g, wrong, Criterion::ls), std::invalid_argument);
}

TEST_CASE("minimax narrows the per-user gain spread")
{
    const ArrayGeometry a(16, 24);
    const FrequencyGrid g(28e9, 120e3, 793);
    std::vector<Direction> dirs;
    for (int i = 0; i < 5; ++i)
        dirs.emplace_back(-60.0 + 30.0 * i, 90.0 + 7.5 * i);
    const UserScenario s(dirs, {0.3, 0.2, 0.15, 0.1, 0.25}, 793);
    auto spread = [&](const JptaConfig &c) {
        const auto u = user_mean_gains(a, g, c, s);
        const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
        return to_db(*hi) - to_db(*lo);
    };
    CHECK(spread(joint_analytic(a, g, s, Criterion::minimax)) < spread(joint_analytic(a, g, s, Criterion::ls)));
}
