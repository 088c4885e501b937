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

#include "risran/link_adaptation.hpp"
#include "risran/metrics.hpp"
#include "risran/traffic.hpp"
#include "risran/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <vector>

namespace risran
{

struct SlicingConfig
{
    std::array<std::uint32_t, 2> quotas{}; // PRBs, indexed by slice_index()

    std::uint32_t quota(Slice s) const { return quotas[slice_index(s)]; }

    // Sum of quotas must not exceed the 50-PRB carrier.
    void validate() const;
};

struct LinkBudget
{
    double tx_power_dbm = 0.0;
    double bandwidth_hz = kCarrierBandwidthHz;
    double noise_figure_db = kNoiseFigureDb;
};

struct UeSetup
{
    std::uint32_t ue_id = 0;
    Slice slice = Slice::Embb;
    double channel_power_gain = 0.0; // linear G_i
};

struct UeContext
{
    std::uint32_t ue_id = 0;
    Slice slice = Slice::Embb;
    double channel_power_gain = 0.0;
    double snr_db = 0.0;
    int cqi = 0;
    int mcs = 0;
    double ewma_throughput = 1.0; // bit/s, PF floor
    RlcBuffer buffer;
};

struct UeGrant
{
    std::uint32_t ue_id = 0;
    Slice slice = Slice::Embb;
    std::uint32_t granted_prbs = 0;
    std::uint32_t requested_prbs = 0; // backlog need, capped at the slice quota
    int mcs = 0;
    std::uint64_t served_bytes = 0;
};

struct SliceTotals
{
    std::uint32_t quota = 0;
    std::uint32_t requested_prbs = 0; // min(sum of needs, quota)
    std::uint32_t demanded_prbs = 0;  // sum of needs, uncapped
    std::uint32_t granted_prbs = 0;
};

struct TtiAllocation
{
    std::int64_t tti_index = 0;
    std::vector<UeGrant> grants;
    std::array<SliceTotals, 2> slices{};
};

struct TtiOutcome
{
    TtiAllocation allocation;
    std::vector<KpmRecord> records; // one per UE, window = this TTI
};

// TTI-stepped MAC for one cell: link adaptation from the static channel gain,
// slice partitioning, and intra-slice scheduling under RR, WF or PF.
class RanMac
{
  public:
    RanMac(SlicingConfig slicing, PolicyPair policies, std::vector<UeSetup> ues, LinkBudget budget);

    std::span<const UeContext> ues() const { return ues_; }
    const UeContext &ue(std::uint32_t ue_id) const;

    const SlicingConfig &slicing() const { return slicing_; }
    PolicyPair active_policies() const { return policies_; }
    std::optional<PolicyPair> staged_policies() const { return staged_; }
    std::int64_t next_tti() const { return next_tti_; }

    void enqueue(std::uint32_t ue_id, std::uint64_t bytes);

    // Updates G_i and the derived SNR, CQI and MCS.
    void set_channel_gain(std::uint32_t ue_id, double gain);

    // Takes effect at the start of the next run_tti(); the TTI in progress keeps its policy.
    void stage_policies(PolicyPair policies);

    TtiOutcome run_tti();

  private:
    UeContext &find(std::uint32_t ue_id);
    void refresh_link(UeContext &ue) const;

    SlicingConfig slicing_;
    PolicyPair policies_;
    std::optional<PolicyPair> staged_;
    LinkBudget budget_;
    std::vector<UeContext> ues_; // ascending UE id
    std::array<std::size_t, 2> rr_cursor_{};
    std::int64_t next_tti_ = 0;
};

// Per-TTI allocation trace: tti,slice,ue_id,granted_prbs,requested_prbs,mcs,served_bytes
class AllocationTraceWriter
{
  public:
    explicit AllocationTraceWriter(const std::filesystem::path &path);
    void write(const TtiAllocation &allocation);
    void close();

  private:
    std::filesystem::path path_;
    std::ofstream out_;
};

} // namespace risran
