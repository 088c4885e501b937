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

#include "risran/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace risran;
using Catch::Approx;

namespace
{

std::string error_of(std::string_view text)
{
    try
    {
        parse_scenario(text);
    }
    catch (const std::exception &e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("bandwidth to PRB quota")
{
    CHECK(prb_quota_from_bandwidth(3.6) == 18);
    CHECK(prb_quota_from_bandwidth(9.0) == 45);
    CHECK(prb_quota_from_bandwidth(1.0) == 5);
    CHECK(prb_quota_from_bandwidth(5.0) == 25);
    CHECK(prb_quota_from_bandwidth(0.0) == 0);
    CHECK_THROWS_AS(prb_quota_from_bandwidth(-1.0), std::invalid_argument);
}

TEST_CASE("fixed geometry")
{
    CHECK(FixedGeometryCatalog::ue_ris_distance(1) == 20.0);
    CHECK(FixedGeometryCatalog::ue_ris_distance(5) == 66.0);
    CHECK_THROWS_AS(FixedGeometryCatalog::ue_ris_distance(0), std::out_of_range);
    CHECK_THROWS_AS(FixedGeometryCatalog::ue_ris_distance(6), std::out_of_range);

    const auto cfg = load_scenario("VIII");
    const auto g = scenario_geometry(cfg);
    CHECK(g.bs_position == FixedGeometryCatalog::kBsPosition);
    CHECK(g.ris_reference_position == FixedGeometryCatalog::kRisPosition);
    CHECK(g.ris_element_count == 100);
    CHECK(g.carrier_frequency == 5.9e9);
    REQUIRE(g.ue_positions.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
    {
        CHECK(distance(g.ue_positions[i], g.ris_reference_position) ==
              Approx(FixedGeometryCatalog::kUeRisDistances[i]).epsilon(1e-12));
        CHECK(g.ue_positions[i].z == FixedGeometryCatalog::kRisPosition.z);
    }

    // bearing depends on (seed, ue_id) only
    const auto solo = scenario_geometry(load_scenario("II"));
    REQUIRE(solo.ue_positions.size() == 1);
    CHECK(solo.ue_positions[0] == g.ue_positions[4]);
    auto other = cfg;
    other.seed = 2;
    CHECK_FALSE(scenario_geometry(other).ue_positions[4] == g.ue_positions[4]);
}

TEST_CASE("catalog rows")
{
    const auto &cat = scenario_catalog();
    REQUIRE(cat.size() == 8);

    const auto two = load_scenario("II");
    CHECK(two.config_id == "II");
    REQUIRE(two.ues.size() == 1);
    CHECK(two.ues[0] == ScenarioUe{5, Slice::Embb});
    CHECK(two.bandwidth_mhz[0] == 3.6);
    CHECK(two.prb_quotas() == std::array<std::uint32_t, 2>{18, 0});
    CHECK(two.ris_elements == 100);
    CHECK_FALSE(two.xapp_enabled);

    const auto eight = load_scenario("VIII");
    const std::vector<ScenarioUe> mixed{{1, Slice::Embb}, {2, Slice::Embb}, {3, Slice::Urllc}, {4, Slice::Urllc},
                                        {5, Slice::Urllc}};
    CHECK(eight.ues == mixed);
    CHECK(eight.prb_quotas() == std::array<std::uint32_t, 2>{45, 5});
    CHECK(eight.ris_elements == 100);
    CHECK(eight.xapp_enabled);

    CHECK(load_scenario("III").ues == std::vector<ScenarioUe>{{1, Slice::Embb}});
    CHECK(load_scenario("IV").ris_elements == 1000);
    CHECK(load_scenario("V").prb_quotas() == std::array<std::uint32_t, 2>{25, 25});
    CHECK(load_scenario("V").default_policy == PolicyPair{SchedulingPolicy::WF, SchedulingPolicy::RR});
    CHECK(load_scenario("VII").ris_elements == 0);

    for (const auto &c : cat)
    {
        CHECK(is_catalog_id(c.config_id));
        CHECK_NOTHROW(c.validate());
        CHECK(c.duration_ttis() == 60000);
    }
    CHECK_FALSE(is_catalog_id("IX"));
}

TEST_CASE("catalog round trip through text")
{
    for (const auto &c : scenario_catalog())
    {
        const auto text = serialize_scenario(c);
        CHECK(parse_scenario(text) == c);
    }
    auto odd = load_scenario("VI");
    odd.tx_power_dbm = 0.1 + 0.2;
    odd.traffic_rate_bps = {1.0 / 3.0, 12345.678};
    odd.duration_s = 0.0;
    CHECK(parse_scenario(serialize_scenario(odd)) == odd);
}

TEST_CASE("scenario files")
{
    const auto cfg = parse_scenario("base: VII\nris_elements: 100\nseed: 9\nconfig_id: mine\n");
    CHECK(cfg.config_id == "mine");
    CHECK(cfg.ris_elements == 100);
    CHECK(cfg.seed == 9);
    CHECK(cfg.xapp_enabled);

    const auto custom = parse_scenario("ues: \"1:eMBB, 4:URLLC\"\nembb_bandwidth_mhz: 2\nurllc_bandwidth_mhz: 2\n"
                                       "embb_policy: PF\nurllc_policy: WF\nkpm_period_ms: 50\n");
    CHECK(custom.ues == std::vector<ScenarioUe>{{1, Slice::Embb}, {4, Slice::Urllc}});
    CHECK(custom.prb_quotas() == std::array<std::uint32_t, 2>{10, 10});
    CHECK(custom.default_policy == PolicyPair{SchedulingPolicy::PF, SchedulingPolicy::WF});
    CHECK(custom.kpm_period_ms == 50);

    const auto path = std::filesystem::temp_directory_path() / "risran_scenario_test.yaml";
    {
        std::ofstream f(path);
        f << "base: III\nduration_s: 2.5\n";
    }
    const auto loaded = load_scenario(path.string());
    CHECK(loaded.duration_ttis() == 2500);
    CHECK(loaded.ues == load_scenario("III").ues);
    std::filesystem::remove(path);
    CHECK_THROWS(load_scenario("/nonexistent/scenario.yaml"));
}

TEST_CASE("validation names the field")
{
    CHECK_THAT(error_of("base: VIII\nembb_bandwidth_mhz: 10\n"), Catch::Matchers::ContainsSubstring("bandwidth"));
    CHECK_THAT(error_of("base: I\nris_elements: 50\n"), Catch::Matchers::ContainsSubstring("ris_elements"));
    CHECK_THAT(error_of("base: I\nduration_s: -1\n"), Catch::Matchers::ContainsSubstring("duration_s"));
    CHECK_THAT(error_of("base: I\nkpm_period_ms: 0\n"), Catch::Matchers::ContainsSubstring("kpm_period_ms"));
    CHECK_THAT(error_of("base: I\nues: \"9:eMBB\"\n"), Catch::Matchers::ContainsSubstring("ues"));
    CHECK_THAT(error_of("base: I\nues: \"1:eMBB, 1:URLLC\"\n"), Catch::Matchers::ContainsSubstring("ues"));
    CHECK_THAT(error_of("base: I\nembb_policy: FIFO\n"), Catch::Matchers::ContainsSubstring("embb_policy"));
    CHECK_THAT(error_of("base: I\ncolour: red\n"), Catch::Matchers::ContainsSubstring("colour"));
    CHECK_THAT(error_of("base: XX\n"), Catch::Matchers::ContainsSubstring("base"));
    CHECK_THAT(error_of("base: I\nseed: many\n"), Catch::Matchers::ContainsSubstring("seed"));
    CHECK_FALSE(error_of("- a\n- b\n").empty());

    ScenarioConfig c = load_scenario("VIII");
    c.bandwidth_mhz = {9.0, 1.2};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
