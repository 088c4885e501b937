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

#pragma once

#include "risran/geometry_channel.hpp"
#include "risran/traffic.hpp"
#include "risran/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace risran
{

// Fixed deployment shared by every catalog configuration.
struct FixedGeometryCatalog
{
    static constexpr Point3 kBsPosition{25.0, 50.0, 25.0};
    static constexpr Point3 kRisPosition{30.0, 40.0, 20.0};
    static constexpr std::array<double, 5> kUeRisDistances{20.0, 27.0, 37.0, 58.0, 66.0}; // UE ids 1..5
    static constexpr double kCarrierFrequency = 5.9e9;

    // Throws std::out_of_range for ids outside 1..5.
    static double ue_ris_distance(std::uint32_t ue_id);
};

struct ScenarioUe
{
    std::uint32_t ue_id = 0;
    Slice slice = Slice::Embb;

    bool operator==(const ScenarioUe &) const = default;
};

inline constexpr double kDefaultTxPowerDbm = 16.0;

struct ScenarioConfig
{
    std::string config_id = "custom";
    std::vector<ScenarioUe> ues;               // ascending ue_id
    std::array<double, 2> bandwidth_mhz{};     // per slice, indexed by slice_index()
    std::uint32_t ris_elements = 0;            // 0, 10, 100 or 1000
    bool xapp_enabled = false;
    double duration_s = 60.0;
    std::uint64_t seed = 1;
    PolicyPair default_policy{SchedulingPolicy::RR, SchedulingPolicy::RR};
    double tx_power_dbm = kDefaultTxPowerDbm;
    std::array<double, 2> traffic_rate_bps{4.0e6, 89.3e3}; // eMBB CBR, URLLC Poisson
    std::uint32_t kpm_period_ms = 100;

    std::array<std::uint32_t, 2> prb_quotas() const;
    std::uint64_t duration_ttis() const;
    TrafficProfile traffic(Slice s) const;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const ScenarioConfig &) const = default;
};

// round(bandwidth / 10 MHz * 50)
std::uint32_t prb_quota_from_bandwidth(double bandwidth_mhz);

// Configurations I..VIII.
const std::vector<ScenarioConfig> &scenario_catalog();
bool is_catalog_id(std::string_view id);

// A catalog id (I..VIII) or the path of a scenario file.
ScenarioConfig load_scenario(const std::string &id_or_path);

// Flat YAML mapping, e.g. `ris_elements: 100`. An optional `base: <id>` key
// starts from a catalog entry; every other key overrides one field.
ScenarioConfig parse_scenario(std::string_view text);
std::string serialize_scenario(const ScenarioConfig &config);

// UEs sit at RIS height, at their catalog distance from the RIS and a seeded
// uniform azimuth. A UE's bearing depends only on (seed, ue_id).
NodeGeometry scenario_geometry(const ScenarioConfig &config);

} // namespace risran
