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

#include "risran/types.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace risran
{

// One telemetry sample for one UE. `timestamp_ms` is the end of the sample window.
struct KpmRecord
{
    std::uint64_t timestamp_ms = 0;
    std::uint32_t ue_id = 0;
    Slice slice = Slice::Embb;
    double throughput_bps = 0.0;
    std::uint64_t buffer_bytes = 0;
    std::uint8_t cqi = 0;
    std::uint8_t mcs = 0;
    std::uint32_t granted_prbs = 0;
    std::uint32_t requested_prbs = 0;

    bool operator==(const KpmRecord &) const = default;
};

// Slice-level PRB accounting over a sample window.
// requested_prbs is capped at the slice quota; demanded_prbs is the raw backlog demand.
struct SliceSample
{
    std::uint64_t timestamp_ms = 0;
    Slice slice = Slice::Embb;
    std::uint64_t granted_prbs = 0;
    std::uint64_t requested_prbs = 0;
    std::uint64_t demanded_prbs = 0;

    bool operator==(const SliceSample &) const = default;
};

// granted / requested, with 0 / 0 = 1 (an idle slice is fully satisfied).
// Throws std::logic_error if granted > requested.
double prb_ratio(std::uint64_t granted_sum, std::uint64_t requested_sum);

struct SummaryStats
{
    double median = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
};

// Order statistics use the lower value: index floor((n - 1) q) of the sorted sample.
// Throws std::invalid_argument on an empty sample.
SummaryStats summarize(std::span<const double> values);

enum class GroupBy : std::uint8_t
{
    Config,
    Slice,
    Ue,
};

struct SummaryRow
{
    std::string config_id;
    std::string group; // "all", slice name, or "ue<N>"
    std::string metric;
    double median = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
    double mean = 0.0;

    bool operator==(const SummaryRow &) const = default;
};

// Summary of throughput_bps, buffer_bytes, cqi and mcs per group. Groups are
// emitted in key order; empty groups are omitted.
std::vector<SummaryRow> aggregate(std::span<const KpmRecord> records, GroupBy group_by, std::string_view config_id);

// prb_ratio and demand_prb_ratio per slice, one sample per window.
std::vector<SummaryRow> aggregate_prb_ratio(std::span<const SliceSample> samples, std::string_view config_id);

// Folds per-TTI records of each UE into one record per window.
class KpmWindow
{
  public:
    void add(const KpmRecord &tti_record);
    bool empty() const { return acc_.empty(); }

    // One record per UE seen since the last flush, ordered by UE id;
    // throughput is the mean over `window_ttis` TTIs.
    std::vector<KpmRecord> flush(std::uint64_t window_end_ms, std::uint64_t window_ttis);

  private:
    struct Acc
    {
        KpmRecord last;
        double throughput_sum = 0.0;
        std::uint64_t granted = 0;
        std::uint64_t requested = 0;
    };
    std::map<std::uint32_t, Acc> acc_;
};

// Column orders are fixed:
//   kpm:     timestamp_ms,ue_id,slice,throughput_bps,buffer_bytes,cqi,mcs,granted_prbs,requested_prbs
//   summary: config_id,slice,metric,median,p25,p75,mean
void write_kpm_csv(const std::filesystem::path &path, std::span<const KpmRecord> records);
std::vector<KpmRecord> read_kpm_csv(const std::filesystem::path &path);
void write_summary_csv(const std::filesystem::path &path, std::span<const SummaryRow> rows);

} // namespace risran
