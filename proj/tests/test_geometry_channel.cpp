// SPDX-License-Identifier: Apache-2.0
//
// risran: system-level simulator for RIS-assisted Open RAN slicing
// Copyright (C) 2026 The risran authors
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

#include "risran/geometry_channel.hpp"
#include "risran/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace risran;
using Catch::Approx;

namespace
{

constexpr double kPi = std::numbers::pi;

// Free-space loss at 1 m plus the log-distance term, written out.
double path_loss_oracle(double d, double f, double n)
{
    const double lambda = 299792458.0 / f;
    return 20.0 * std::log10(4.0 * kPi / lambda) + 10.0 * n * std::log10(d);
}

cplx random_cplx(Rng &rng)
{
    return {rng.normal(), rng.normal()};
}

} // namespace

TEST_CASE("geometry basics")
{
    CHECK(distance({0, 0, 0}, {3, 4, 12}) == 13.0);
    CHECK(direction_cosine({0, 0, 0}, {3, 4, 0}) == Approx(0.6));
    CHECK_THROWS_AS(direction_cosine({1, 1, 1}, {1, 1, 1}), std::invalid_argument);

    NodeGeometry g;
    g.bs_position = {25, 50, 25};
    g.ris_reference_position = {30, 40, 20};
    g.ue_positions = {{10, 10, 20}};
    CHECK(g.wavelength() == Approx(299792458.0 / 5.9e9));
    CHECK(g.separation() == Approx(g.wavelength() / 2));
    CHECK_NOTHROW(g.validate());
    g.ue_positions.push_back(g.bs_position);
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.ue_positions = {{1, 1, 1}, {1, 1, 1}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("path loss model")
{
    PathLossModel pl;
    CHECK(pl.loss_db(1.0, true) == Approx(path_loss_oracle(1.0, 5.9e9, 2.0)).epsilon(1e-12));
    CHECK(pl.loss_db(1.0, true) == Approx(47.86).margin(0.01));
    CHECK(pl.loss_db(30.0, false) == Approx(path_loss_oracle(30.0, 5.9e9, 3.2)).epsilon(1e-12));
    CHECK(pl.power_gain(20.0, true) == Approx(std::pow(10.0, -path_loss_oracle(20.0, 5.9e9, 2.0) / 10.0)));
    CHECK_THROWS_AS(pl.loss_db(0.0, true), std::invalid_argument);
}

TEST_CASE("generate_mpcs")
{
    const MultipathSettings settings;
    SECTION("single LoS component carries the full path-loss power")
    {
        const auto mpcs = generate_mpcs(LinkKind::UeToRis, 20.0, true, 1, 7);
        REQUIRE(mpcs.size() == 1);
        CHECK(mpcs[0].magnitude == Approx(std::sqrt(settings.path_loss.power_gain(20.0, true))).epsilon(1e-12));
    }
    SECTION("deterministic per seed")
    {
        CHECK(generate_mpcs(LinkKind::UeToBs, 30.0, false, 8, 1) == generate_mpcs(LinkKind::UeToBs, 30.0, false, 8, 1));
        CHECK(generate_mpcs(LinkKind::UeToBs, 30.0, false, 8, 1) != generate_mpcs(LinkKind::UeToBs, 30.0, false, 8, 2));
    }
    SECTION("LoS dominant component holds K/(K+1) of the power")
    {
        const auto mpcs = generate_mpcs(LinkKind::RisToBs, 12.0, true, 8, 3);
        const double k = std::pow(10.0, 1.0);
        const double p = settings.path_loss.power_gain(12.0, true);
        CHECK(mpcs[0].magnitude * mpcs[0].magnitude == Approx(p * k / (k + 1)).epsilon(1e-12));
        const double lambda = 299792458.0 / 5.9e9;
        const double expected_phase = std::fmod(std::fmod(-2 * kPi * 12.0 / lambda, 2 * kPi) + 2 * kPi, 2 * kPi);
        CHECK(mpcs[0].phase == Approx(expected_phase).margin(1e-9));
    }
    SECTION("phases in [0, 2pi) and magnitudes non-negative")
    {
        for (std::uint64_t s = 0; s < 200; ++s)
            for (const auto &c : generate_mpcs(LinkKind::UeToBs, 40.0, s % 2 == 0, 8, s))
            {
                CHECK(c.magnitude >= 0.0);
                CHECK(c.phase >= 0.0);
                CHECK(c.phase < 2 * kPi);
            }
    }
    SECTION("mean total power matches the path-loss model")
    {
        const double expect = settings.path_loss.power_gain(30.0, false);
        double sum = 0.0;
        const int n = 100000;
        for (int s = 0; s < n; ++s)
            for (const auto &c : generate_mpcs(LinkKind::UeToBs, 30.0, false, 8, static_cast<std::uint64_t>(s)))
                sum += c.magnitude * c.magnitude;
        CHECK(sum / n == Approx(expect).epsilon(0.02));
    }
    SECTION("argument errors")
    {
        CHECK_THROWS_AS(generate_mpcs(LinkKind::UeToBs, 0.0, false, 8, 1), std::invalid_argument);
        CHECK_THROWS_AS(generate_mpcs(LinkKind::UeToBs, 10.0, false, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("combine_mpcs")
{
    const std::vector<MultipathComponent> one{{0.5, kPi / 3}};
    CHECK(std::abs(combine_mpcs(one) - std::polar(0.5, kPi / 3)) < 1e-15);
    const std::vector<MultipathComponent> cancel{{1, 0}, {1, kPi}};
    CHECK(std::abs(combine_mpcs(cancel)) < 1e-15);
    const std::vector<MultipathComponent> three{{1, 0}, {1, 0}, {1, 0}};
    CHECK(combine_mpcs(three) == cplx(3, 0));
    CHECK_THROWS_AS(combine_mpcs({}), std::invalid_argument);

    // Linear in the list.
    Rng rng(4);
    for (int t = 0; t < 100; ++t)
    {
        std::vector<MultipathComponent> a, b;
        for (int i = 0; i < 5; ++i)
            a.push_back({rng.uniform(), rng.uniform(0, 2 * kPi)});
        for (int i = 0; i < 3; ++i)
            b.push_back({rng.uniform(), rng.uniform(0, 2 * kPi)});
        auto ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        CHECK(std::abs(combine_mpcs(ab) - (combine_mpcs(a) + combine_mpcs(b))) < 1e-12);
    }
}

TEST_CASE("average_realizations")
{
    const LinkSpec nlos{LinkKind::UeToBs, 30.0, false, 8};
    SECTION("one realization equals one combined draw")
    {
        const auto mpcs = generate_mpcs(nlos.kind, nlos.distance, nlos.los, nlos.mpc_count, realization_seed(11, 0));
        CHECK(average_realizations(nlos, 1, 11) == combine_mpcs(mpcs));
    }
    SECTION("LoS mean keeps the dominant component")
    {
        const MultipathSettings settings;
        const double k = 10.0;
        for (std::uint64_t s = 1; s <= 20; ++s)
        {
            const LinkSpec los{LinkKind::UeToRis, 20.0 + static_cast<double>(s), true, 8};
            const double dominant = std::sqrt(settings.path_loss.power_gain(los.distance, true) * k / (k + 1));
            CHECK(std::abs(average_realizations(los, 100, s)) >= dominant * k / (k + 1));
        }
    }
    SECTION("different seeds converge to the same mean")
    {
        const std::size_t n = 10000;
        const cplx m1 = average_realizations(nlos, n, 1);
        const cplx m2 = average_realizations(nlos, n, 2);
        // Per-realization variance of the complex gain is the path-loss power.
        const double var = MultipathSettings{}.path_loss.power_gain(30.0, false);
        const double se_diff = std::sqrt(2.0 * var / static_cast<double>(n));
        CHECK(std::abs(m1 - m2) <= 3.0 * se_diff);
    }
    SECTION("magnitude averaging keeps the complex-mean phase")
    {
        MultipathSettings mag;
        mag.averaging = AveragingMode::Magnitude;
        const cplx c = average_realizations(nlos, 50, 9);
        const cplx m = average_realizations(nlos, 50, 9, mag);
        CHECK(std::arg(m) == Approx(std::arg(c)).margin(1e-12));
        CHECK(std::abs(m) >= std::abs(c));
    }
    CHECK_THROWS_AS(average_realizations(nlos, 0, 1), std::invalid_argument);
}

TEST_CASE("steering vectors")
{
    const double lambda = 0.05;
    const auto a = steering_vector(3, 0.123, lambda, 0.0);
    for (const auto &e : a.entries)
        CHECK(e == cplx(1, 0));
    const auto b = steering_vector(2, lambda / 2, lambda, 1.0);
    CHECK(std::abs(b.entries[1] - cplx(-1, 0)) < 1e-12);
    const auto c = steering_vector(4, lambda / 2, lambda, 0.5);
    for (int m = 0; m < 4; ++m)
        CHECK(std::abs(c.entries[m] - std::polar(1.0, -kPi / 2 * m)) < 1e-12);
    Rng rng(6);
    for (int t = 0; t < 100; ++t)
    {
        const auto v = steering_vector(1 + rng.next() % 50, rng.uniform(0.001, 0.1), lambda, rng.uniform(-1, 1));
        CHECK(v.entries[0] == cplx(1, 0));
        for (const auto &e : v.entries)
            CHECK(std::abs(e) == Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(steering_vector(0, 0.1, lambda, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector(2, 0.1, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("apply_steering")
{
    SteeringVector ones{{1, 1, 1}, 0.0};
    CHECK(apply_steering(cplx(1, 0), ones) == std::vector<cplx>{1, 1, 1});
    SteeringVector pm{{1, -1}, 1.0};
    CHECK(apply_steering(cplx(0, 2), pm) == std::vector<cplx>{cplx(0, 2), cplx(0, -2)});
    Rng rng(8);
    const cplx g = random_cplx(rng);
    const auto out = apply_steering(g, steering_vector(8, 0.01, 0.05, 0.3));
    REQUIRE(out.size() == 8);
    for (const auto &e : out)
        CHECK(std::abs(e) == Approx(std::abs(g)).epsilon(1e-12));
}

TEST_CASE("overall_gain")
{
    const std::vector<cplx> zeros(4, 0.0), ones(4, 1.0);
    const std::vector<double> th(4, 0.0);
    CHECK(overall_gain(1.0, zeros, th, zeros) == 1.0);
    CHECK(overall_gain(0.0, ones, th, ones) == 16.0);
    CHECK_THROWS_AS(overall_gain(0.0, ones, std::vector<double>(3, 0.0), ones), std::invalid_argument);

    Rng rng(10);
    for (int t = 0; t < 200; ++t)
    {
        const cplx h = random_cplx(rng);
        std::vector<cplx> ra(3), ir(3);
        std::vector<double> theta(3);
        for (int m = 0; m < 3; ++m)
        {
            ra[m] = random_cplx(rng);
            ir[m] = random_cplx(rng);
            theta[m] = rng.uniform(0, 2 * kPi);
        }
        // Real/imaginary expansion of |h + sum conj(a) e^{j t} b|^2.
        double re = h.real(), im = h.imag();
        for (int m = 0; m < 3; ++m)
        {
            const double ar = ra[m].real(), ai = -ra[m].imag();
            const double cr = std::cos(theta[m]), ci = std::sin(theta[m]);
            const double pr = ar * cr - ai * ci, pi = ar * ci + ai * cr;
            re += pr * ir[m].real() - pi * ir[m].imag();
            im += pr * ir[m].imag() + pi * ir[m].real();
        }
        CHECK(overall_gain(h, ra, theta, ir) == Approx(re * re + im * im).epsilon(1e-12));
        CHECK(overall_gain(h, ra, theta, std::vector<cplx>(3, 0.0)) == Approx(std::norm(h)).epsilon(1e-12));
    }
}

TEST_CASE("aligned unit-modulus cascade grows as M squared")
{
    const auto cascade = [](std::size_t m) {
        const std::vector<cplx> ones(m, 1.0);
        return overall_gain(0.0, ones, std::vector<double>(m, 0.0), ones);
    };
    for (std::size_t m : {1u, 5u, 10u, 50u, 500u})
    {
        CHECK(cascade(m) == Approx(static_cast<double>(m * m)).epsilon(1e-9));
        CHECK(cascade(2 * m) / cascade(m) == Approx(4.0).epsilon(1e-9));
    }
}

TEST_CASE("build_channels")
{
    NodeGeometry g;
    g.bs_position = {25, 50, 25};
    g.ris_reference_position = {30, 40, 20};
    g.ue_positions = {{50, 40, 20}, {30, 106, 20}};
    g.ris_element_count = 16;
    const std::vector<std::uint32_t> ids{1, 5};
    const auto set = build_channels(g, ids, 77);
    CHECK_NOTHROW(set.validate());
    REQUIRE(set.ues.size() == 2);
    CHECK(set.ris_to_bs.element_gains.size() == 16);
    CHECK(set.ris_to_bs.los);
    for (const auto &ue : set.ues)
    {
        CHECK_FALSE(ue.direct.los);
        CHECK(ue.ue_to_ris.los);
        CHECK(ue.ue_to_ris.element_gains.size() == 16);
        // Steered entries share one magnitude.
        for (const auto &e : ue.ue_to_ris.element_gains)
            CHECK(std::abs(e) == Approx(std::abs(ue.ue_to_ris.element_gains[0])).epsilon(1e-12));
    }
    CHECK(set.ues[0].ue_to_ris_distance == Approx(20.0));

    SECTION("reproducible bit for bit")
    {
        const auto again = build_channels(g, ids, 77);
        CHECK(again.ris_to_bs.element_gains == set.ris_to_bs.element_gains);
        for (std::size_t i = 0; i < 2; ++i)
        {
            CHECK(again.ues[i].direct.scalar_gain == set.ues[i].direct.scalar_gain);
            CHECK(again.ues[i].ue_to_ris.element_gains == set.ues[i].ue_to_ris.element_gains);
        }
    }
    SECTION("a UE's channel does not depend on the other UEs")
    {
        NodeGeometry solo = g;
        solo.ue_positions = {g.ue_positions[1]};
        const std::vector<std::uint32_t> one{5};
        const auto s = build_channels(solo, one, 77);
        CHECK(s.ues[0].direct.scalar_gain == set.ues[1].direct.scalar_gain);
        CHECK(s.ues[0].ue_to_ris.element_gains == set.ues[1].ue_to_ris.element_gains);
    }
    SECTION("no RIS means no RIS links")
    {
        NodeGeometry bare = g;
        bare.ris_element_count = 0;
        const auto s = build_channels(bare, ids, 77);
        CHECK(s.ris_to_bs.element_gains.empty());
        CHECK(s.ues[0].ue_to_ris.element_gains.empty());
        CHECK(s.ues[0].direct.scalar_gain == set.ues[0].direct.scalar_gain);
    }
    SECTION("CSV dump")
    {
        const auto path = std::filesystem::temp_directory_path() / "risran_channels_test.csv";
        write_channel_csv(path, set);
        CHECK(std::filesystem::file_size(path) > 0);
        std::filesystem::remove(path);
    }
    CHECK_THROWS_AS(build_channels(g, std::vector<std::uint32_t>{1}, 77), std::invalid_argument);
}
