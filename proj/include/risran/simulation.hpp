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
#include "risran/metrics.hpp"
#include "risran/ric.hpp"
#include "risran/ris_control.hpp"
#include "risran/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace risran
{

enum class E2TransportKind : std::uint8_t
{
    InProcess,
    TcpLoopback,
};

struct RunOptions
{
    E2TransportKind transport = E2TransportKind::InProcess;
    std::optional<std::filesystem::path> allocation_trace; // per-TTI grants, written while running
    MultipathSettings multipath{};
    WeightSearch weight_search{};
};

struct UeLinkReport
{
    std::uint32_t ue_id = 0;
    Slice slice = Slice::Embb;
    double direct_gain = 0.0; // |h_iA|^2
    double gain = 0.0;        // G_i under the applied RIS configuration
    double snr_db = 0.0;
    int cqi = 0;
    int mcs = 0;
};

struct RunResult
{
    ScenarioConfig config;
    ChannelSet channels;
    std::optional<WeightOptimum> optimum; // empty without a RIS
    std::vector<UeLinkReport> links;
    std::vector<KpmRecord> kpm;           // one record per UE per KPM period
    std::vector<SliceSample> slice_samples;
    std::vector<SummaryRow> summary;
    std::vector<ControlLogEntry> controls;
    std::uint64_t indications = 0;
};

// channels -> RIS optimization (when the config has a RIS) -> TTI loop with
// traffic, scheduling and the E2 control loop (when the xApp is enabled) -> summary.
RunResult simulate(const ScenarioConfig &config, const RunOptions &options = {});

// kpm.csv, summary.csv, ris_gains.csv, channels.csv and, with a RIS, optimizer.csv.
void write_outputs(const RunResult &result, const std::filesystem::path &dir);

struct ComparisonCell
{
    std::string config_id;
    std::string group;  // slice name
    std::string metric;
    double median = 0.0; // median over seeds of the per-run medians
    std::vector<double> per_seed;
};

struct ComparisonDelta
{
    std::string from;
    std::string to;
    std::string group;
    std::string metric;
    double delta_pct = 0.0;        // (to - from) / |from| * 100 on the across-seed medians
    double paired_delta_pct = 0.0; // median over seeds of the per-seed deltas
};

struct Comparison
{
    std::vector<std::string> config_ids;
    std::vector<std::uint64_t> seeds;
    std::vector<ComparisonCell> cells;
    std::vector<ComparisonDelta> deltas; // every ordered pair (earlier, later) in config_ids order

    const ComparisonCell &cell(const std::string &config_id, const std::string &group,
                               const std::string &metric) const;
    const ComparisonDelta &delta(const std::string &from, const std::string &to, const std::string &group,
                                 const std::string &metric) const;
};

// Runs every (config, seed) pair on up to `workers` threads (0 = hardware
// concurrency). Results do not depend on the worker count.
Comparison compare(const std::vector<ScenarioConfig> &configs, const std::vector<std::uint64_t> &seeds,
                   unsigned workers = 0);

// Columns: kind,from,to,slice,metric,value_from,value_to,delta_pct,paired_delta_pct
void write_comparison_csv(const std::filesystem::path &path, const Comparison &comparison);

} // namespace risran
