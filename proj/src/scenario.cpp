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

#include "risran/link_adaptation.hpp"
#include "risran/rng.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace risran
{

namespace
{

constexpr std::uint64_t kAzimuthTag = 0xA217;

[[noreturn]] void field_error(std::string_view field, const std::string &msg)
{
    throw std::invalid_argument("scenario field '" + std::string(field) + "': " + msg);
}

ScenarioConfig make(std::string id, std::vector<ScenarioUe> ues, double embb_mhz, double urllc_mhz,
                    std::uint32_t ris, bool xapp, PolicyPair policy)
{
    ScenarioConfig c;
    c.config_id = std::move(id);
    c.ues = std::move(ues);
    c.bandwidth_mhz = {embb_mhz, urllc_mhz};
    c.ris_elements = ris;
    c.xapp_enabled = xapp;
    c.default_policy = policy;
    return c;
}

std::string shortest(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string ue_list(const std::vector<ScenarioUe> &ues)
{
    std::string out;
    for (const auto &u : ues)
    {
        if (!out.empty())
            out += ", ";
        out += std::to_string(u.ue_id) + ":" + std::string(to_string(u.slice));
    }
    return out;
}

std::vector<ScenarioUe> parse_ue_list(const std::string &text)
{
    std::vector<ScenarioUe> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty())
            continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            field_error("ues", "expected <id>:<slice>, got '" + item + "'");
        ScenarioUe u;
        const std::string id = item.substr(0, colon);
        const auto r = std::from_chars(id.data(), id.data() + id.size(), u.ue_id);
        if (r.ec != std::errc() || r.ptr != id.data() + id.size())
            field_error("ues", "bad UE id '" + id + "'");
        const auto slice = parse_slice(item.substr(colon + 1));
        if (!slice)
            field_error("ues", "bad slice '" + item.substr(colon + 1) + "'");
        u.slice = *slice;
        out.push_back(u);
    }
    return out;
}

template <typename T> T scalar(const YAML::Node &node, std::string_view key)
{
    try
    {
        return node.as<T>();
    }
    catch (const YAML::Exception &)
    {
        field_error(key, "cannot read value '" + node.as<std::string>("") + "'");
    }
}

SchedulingPolicy policy_value(const YAML::Node &node, std::string_view key)
{
    const auto p = parse_policy(scalar<std::string>(node, key));
    if (!p)
        field_error(key, "expected RR, WF or PF");
    return *p;
}

} // namespace

double FixedGeometryCatalog::ue_ris_distance(std::uint32_t ue_id)
{
    if (ue_id < 1 || ue_id > kUeRisDistances.size())
        throw std::out_of_range("no catalog distance for UE " + std::to_string(ue_id));
    return kUeRisDistances[ue_id - 1];
}

std::uint32_t prb_quota_from_bandwidth(double bandwidth_mhz)
{
    if (!(bandwidth_mhz >= 0.0) || !std::isfinite(bandwidth_mhz))
        throw std::invalid_argument("bandwidth must be a finite non-negative number of MHz");
    return static_cast<std::uint32_t>(std::lround(bandwidth_mhz / 10.0 * 50.0));
}

std::array<std::uint32_t, 2> ScenarioConfig::prb_quotas() const
{
    return {prb_quota_from_bandwidth(bandwidth_mhz[0]), prb_quota_from_bandwidth(bandwidth_mhz[1])};
}

std::uint64_t ScenarioConfig::duration_ttis() const
{
    return static_cast<std::uint64_t>(std::llround(duration_s * 1000.0));
}

TrafficProfile ScenarioConfig::traffic(Slice s) const
{
    return {s == Slice::Embb ? TrafficKind::ConstantBitrate : TrafficKind::Poisson,
            traffic_rate_bps[slice_index(s)]};
}

void ScenarioConfig::validate() const
{
    if (config_id.empty())
        field_error("config_id", "must not be empty");
    if (ues.empty())
        field_error("ues", "at least one UE is required");
    std::set<std::uint32_t> seen;
    for (const auto &u : ues)
    {
        if (u.ue_id < 1 || u.ue_id > FixedGeometryCatalog::kUeRisDistances.size())
            field_error("ues", "UE id " + std::to_string(u.ue_id) + " is outside the catalog (1..5)");
        if (!seen.insert(u.ue_id).second)
            field_error("ues", "duplicate UE id " + std::to_string(u.ue_id));
    }
    if (!std::is_sorted(ues.begin(), ues.end(), [](const auto &a, const auto &b) { return a.ue_id < b.ue_id; }))
        field_error("ues", "UE ids must be ascending");
    const char *bw_field[] = {"embb_bandwidth_mhz", "urllc_bandwidth_mhz"};
    for (Slice s : kAllSlices)
    {
        const double bw = bandwidth_mhz[slice_index(s)];
        if (!std::isfinite(bw) || bw < 0.0)
            field_error(bw_field[slice_index(s)], "must be a non-negative number");
        const bool used = std::any_of(ues.begin(), ues.end(), [&](const auto &u) { return u.slice == s; });
        if (used && prb_quota_from_bandwidth(bw) == 0)
            field_error(bw_field[slice_index(s)], "slice has UEs but no PRBs");
    }
    const auto q = prb_quotas();
    if (q[0] + q[1] > kCarrierPrbs)
        field_error("embb_bandwidth_mhz", "slice quotas " + std::to_string(q[0]) + " + " + std::to_string(q[1]) +
                                              " PRBs exceed the " + std::to_string(kCarrierPrbs) + "-PRB carrier");
    if (ris_elements != 0 && ris_elements != 10 && ris_elements != 100 && ris_elements != 1000)
        field_error("ris_elements", "must be 0, 10, 100 or 1000, got " + std::to_string(ris_elements));
    if (!std::isfinite(duration_s) || duration_s < 0.0)
        field_error("duration_s", "must be a non-negative number of seconds");
    if (std::abs(duration_s * 1000.0 - std::round(duration_s * 1000.0)) > 1e-6)
        field_error("duration_s", "must be a whole number of milliseconds");
    if (!std::isfinite(tx_power_dbm))
        field_error("tx_power_dbm", "must be finite");
    const char *rate_field[] = {"embb_rate_bps", "urllc_rate_bps"};
    for (Slice s : kAllSlices)
    {
        const double r = traffic_rate_bps[slice_index(s)];
        if (!std::isfinite(r) || r < 0.0)
            field_error(rate_field[slice_index(s)], "must be a non-negative rate");
    }
    if (kpm_period_ms == 0)
        field_error("kpm_period_ms", "must be at least 1");
}

const std::vector<ScenarioConfig> &scenario_catalog()
{
    using enum SchedulingPolicy;
    static const std::vector<ScenarioConfig> catalog = [] {
        const std::vector<ScenarioUe> worst{{5, Slice::Embb}};
        const std::vector<ScenarioUe> best{{1, Slice::Embb}};
        const std::vector<ScenarioUe> mixed{
            {1, Slice::Embb}, {2, Slice::Embb}, {3, Slice::Urllc}, {4, Slice::Urllc}, {5, Slice::Urllc}};
        std::vector<ScenarioConfig> c;
        c.push_back(make("I", worst, 3.6, 0.0, 0, false, {RR, RR}));
        c.push_back(make("II", worst, 3.6, 0.0, 100, false, {RR, RR}));
        c.push_back(make("III", best, 3.6, 0.0, 10, false, {RR, RR}));
        c.push_back(make("IV", best, 3.6, 0.0, 1000, false, {RR, RR}));
        c.push_back(make("V", mixed, 5.0, 5.0, 0, false, {WF, RR}));
        c.push_back(make("VI", mixed, 5.0, 5.0, 100, false, {WF, RR}));
        c.push_back(make("VII", mixed, 9.0, 1.0, 0, true, {RR, RR}));
        c.push_back(make("VIII", mixed, 9.0, 1.0, 100, true, {RR, RR}));
        return c;
    }();
    return catalog;
}

bool is_catalog_id(std::string_view id)
{
    const auto &cat = scenario_catalog();
    return std::any_of(cat.begin(), cat.end(), [&](const auto &c) { return c.config_id == id; });
}

ScenarioConfig load_scenario(const std::string &id_or_path)
{
    for (const auto &c : scenario_catalog())
        if (c.config_id == id_or_path)
            return c;
    std::ifstream in(id_or_path);
    if (!in)
        throw std::runtime_error("'" + id_or_path + "' is neither a catalog id (I..VIII) nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    try
    {
        return parse_scenario(ss.str());
    }
    catch (const std::invalid_argument &e)
    {
        throw std::invalid_argument(id_or_path + ": " + e.what());
    }
}

ScenarioConfig parse_scenario(std::string_view text)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(std::string(text));
    }
    catch (const YAML::Exception &e)
    {
        throw std::invalid_argument(std::string("scenario is not valid YAML: ") + e.what());
    }
    if (!root.IsMap())
        throw std::invalid_argument("scenario must be a key: value mapping");

    ScenarioConfig c;
    if (const auto base = root["base"])
    {
        const auto id = scalar<std::string>(base, "base");
        if (!is_catalog_id(id))
            field_error("base", "unknown catalog id '" + id + "'");
        c = load_scenario(id);
        c.config_id = "custom";
    }
    for (const auto &kv : root)
    {
        const auto key = kv.first.as<std::string>();
        const YAML::Node &v = kv.second;
        if (!v.IsScalar())
            field_error(key, "must be a scalar");
        if (key == "base")
            continue;
        else if (key == "config_id")
            c.config_id = scalar<std::string>(v, key);
        else if (key == "ues")
            c.ues = parse_ue_list(scalar<std::string>(v, key));
        else if (key == "embb_bandwidth_mhz")
            c.bandwidth_mhz[0] = scalar<double>(v, key);
        else if (key == "urllc_bandwidth_mhz")
            c.bandwidth_mhz[1] = scalar<double>(v, key);
        else if (key == "ris_elements")
            c.ris_elements = scalar<std::uint32_t>(v, key);
        else if (key == "xapp_enabled")
            c.xapp_enabled = scalar<bool>(v, key);
        else if (key == "duration_s")
            c.duration_s = scalar<double>(v, key);
        else if (key == "seed")
            c.seed = scalar<std::uint64_t>(v, key);
        else if (key == "embb_policy")
            c.default_policy[0] = policy_value(v, key);
        else if (key == "urllc_policy")
            c.default_policy[1] = policy_value(v, key);
        else if (key == "tx_power_dbm")
            c.tx_power_dbm = scalar<double>(v, key);
        else if (key == "embb_rate_bps")
            c.traffic_rate_bps[0] = scalar<double>(v, key);
        else if (key == "urllc_rate_bps")
            c.traffic_rate_bps[1] = scalar<double>(v, key);
        else if (key == "kpm_period_ms")
            c.kpm_period_ms = scalar<std::uint32_t>(v, key);
        else
            field_error(key, "unknown key");
    }
    c.validate();
    return c;
}

std::string serialize_scenario(const ScenarioConfig &c)
{
    std::ostringstream out;
    out << "config_id: \"" << c.config_id << "\"\n"
        << "ues: \"" << ue_list(c.ues) << "\"\n"
        << "embb_bandwidth_mhz: " << shortest(c.bandwidth_mhz[0]) << "\n"
        << "urllc_bandwidth_mhz: " << shortest(c.bandwidth_mhz[1]) << "\n"
        << "ris_elements: " << c.ris_elements << "\n"
        << "xapp_enabled: " << (c.xapp_enabled ? "true" : "false") << "\n"
        << "duration_s: " << shortest(c.duration_s) << "\n"
        << "seed: " << c.seed << "\n"
        << "embb_policy: " << to_string(c.default_policy[0]) << "\n"
        << "urllc_policy: " << to_string(c.default_policy[1]) << "\n"
        << "tx_power_dbm: " << shortest(c.tx_power_dbm) << "\n"
        << "embb_rate_bps: " << shortest(c.traffic_rate_bps[0]) << "\n"
        << "urllc_rate_bps: " << shortest(c.traffic_rate_bps[1]) << "\n"
        << "kpm_period_ms: " << c.kpm_period_ms << "\n";
    return out.str();
}

NodeGeometry scenario_geometry(const ScenarioConfig &config)
{
    NodeGeometry g;
    g.bs_position = FixedGeometryCatalog::kBsPosition;
    g.ris_reference_position = FixedGeometryCatalog::kRisPosition;
    g.carrier_frequency = FixedGeometryCatalog::kCarrierFrequency;
    g.ris_element_count = config.ris_elements;
    for (const auto &u : config.ues)
    {
        Rng rng(derive_seed(config.seed, {kAzimuthTag, u.ue_id}));
        const double azimuth = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double d = FixedGeometryCatalog::ue_ris_distance(u.ue_id);
        const auto &r = g.ris_reference_position;
        g.ue_positions.push_back({r.x + d * std::cos(azimuth), r.y + d * std::sin(azimuth), r.z});
    }
    return g;
}

} // namespace risran
