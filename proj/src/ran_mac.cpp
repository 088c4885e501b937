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

#include "risran/ran_mac.hpp"
#include "risran/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace risran
{

void SlicingConfig::validate() const
{
    std::uint64_t total = 0;
    for (auto q : quotas)
        total += q;
    if (total > kCarrierPrbs)
        throw std::invalid_argument("SlicingConfig: slice quotas sum to " + std::to_string(total) +
                                    " PRBs, carrier has " + std::to_string(kCarrierPrbs));
}

RanMac::RanMac(SlicingConfig slicing, PolicyPair policies, std::vector<UeSetup> ues, LinkBudget budget)
    : slicing_(slicing), policies_(policies), budget_(budget)
{
    slicing_.validate();
    std::sort(ues.begin(), ues.end(), [](const UeSetup &a, const UeSetup &b) { return a.ue_id < b.ue_id; });
    for (std::size_t i = 0; i < ues.size(); ++i)
    {
        if (i > 0 && ues[i].ue_id == ues[i - 1].ue_id)
            throw std::invalid_argument("RanMac: duplicate UE id " + std::to_string(ues[i].ue_id));
        UeContext ctx;
        ctx.ue_id = ues[i].ue_id;
        ctx.slice = ues[i].slice;
        ctx.channel_power_gain = ues[i].channel_power_gain;
        refresh_link(ctx);
        ues_.push_back(std::move(ctx));
    }
}

const UeContext &RanMac::ue(std::uint32_t ue_id) const
{
    return const_cast<RanMac *>(this)->find(ue_id);
}

UeContext &RanMac::find(std::uint32_t ue_id)
{
    auto it = std::lower_bound(ues_.begin(), ues_.end(), ue_id,
                               [](const UeContext &u, std::uint32_t id) { return u.ue_id < id; });
    if (it == ues_.end() || it->ue_id != ue_id)
        throw std::out_of_range("RanMac: unknown UE id " + std::to_string(ue_id));
    return *it;
}

void RanMac::refresh_link(UeContext &ue) const
{
    ue.snr_db = snr_from_gain(ue.channel_power_gain, budget_.tx_power_dbm, budget_.bandwidth_hz,
                              budget_.noise_figure_db);
    ue.cqi = cqi_from_snr(ue.snr_db);
    ue.mcs = mcs_from_cqi(ue.cqi);
}

void RanMac::enqueue(std::uint32_t ue_id, std::uint64_t bytes)
{
    find(ue_id).buffer.enqueue(bytes);
}

void RanMac::set_channel_gain(std::uint32_t ue_id, double gain)
{
    auto &u = find(ue_id);
    u.channel_power_gain = gain;
    refresh_link(u);
}

void RanMac::stage_policies(PolicyPair policies)
{
    staged_ = policies;
}

TtiOutcome RanMac::run_tti()
{
    if (staged_)
    {
        policies_ = *staged_;
        staged_.reset();
    }

    TtiOutcome out;
    auto &alloc = out.allocation;
    alloc.tti_index = next_tti_;

    for (Slice slice : kAllSlices)
    {
        const std::uint32_t quota = slicing_.quota(slice);
        auto &totals = alloc.slices[slice_index(slice)];
        totals.quota = quota;

        std::vector<UeContext *> members;
        std::vector<SchedUe> view;
        for (auto &u : ues_)
        {
            if (u.slice != slice)
                continue;
            const std::uint64_t per_prb = tbs_bytes(u.mcs, 1);
            const std::uint64_t backlog = u.buffer.queued_bytes();
            const std::uint64_t need = per_prb ? (backlog + per_prb - 1) / per_prb : 0;
            SchedUe s;
            s.ue_id = u.ue_id;
            s.needed_prbs = static_cast<std::uint32_t>(std::min<std::uint64_t>(need, quota));
            s.rate_per_prb_bps = static_cast<double>(per_prb) * 8.0 / kTtiSeconds;
            s.snr_linear = std::isfinite(u.snr_db) ? std::pow(10.0, u.snr_db / 10.0) : 0.0;
            s.ewma_bps = u.ewma_throughput;
            totals.demanded_prbs += static_cast<std::uint32_t>(std::min<std::uint64_t>(need, 0xFFFFFFFFu));
            members.push_back(&u);
            view.push_back(s);
        }
        totals.requested_prbs = std::min(totals.demanded_prbs, quota);

        std::vector<std::uint32_t> grants;
        switch (policies_[slice_index(slice)])
        {
        case SchedulingPolicy::RR: {
            auto rr = schedule_rr(view, quota, rr_cursor_[slice_index(slice)]);
            rr_cursor_[slice_index(slice)] = rr.cursor;
            grants = std::move(rr.grants);
            break;
        }
        case SchedulingPolicy::WF:
            grants = schedule_wf(view, quota);
            break;
        case SchedulingPolicy::PF:
            grants = schedule_pf(view, quota);
            break;
        }

        for (std::size_t i = 0; i < members.size(); ++i)
        {
            UeContext &u = *members[i];
            const std::uint64_t capacity = tbs_bytes(u.mcs, grants[i]);
            const std::uint64_t served = std::min(capacity, u.buffer.queued_bytes());
            u.buffer.drain(served);
            const double served_rate = static_cast<double>(served) * 8.0 / kTtiSeconds;
            u.ewma_throughput = pf_ewma_update(u.ewma_throughput, served_rate);
            totals.granted_prbs += grants[i];

            alloc.grants.push_back({u.ue_id, slice, grants[i], view[i].needed_prbs, u.mcs, served});

            KpmRecord r;
            r.timestamp_ms = static_cast<std::uint64_t>(next_tti_ + 1);
            r.ue_id = u.ue_id;
            r.slice = slice;
            r.throughput_bps = served_rate;
            r.buffer_bytes = u.buffer.queued_bytes();
            r.cqi = static_cast<std::uint8_t>(u.cqi);
            r.mcs = static_cast<std::uint8_t>(u.mcs);
            r.granted_prbs = grants[i];
            r.requested_prbs = view[i].needed_prbs;
            out.records.push_back(r);
        }
    }

    ++next_tti_;
    return out;
}

AllocationTraceWriter::AllocationTraceWriter(const std::filesystem::path &path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc)
{
    if (!out_)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out_ << "tti,slice,ue_id,granted_prbs,requested_prbs,mcs,served_bytes\n";
}

void AllocationTraceWriter::write(const TtiAllocation &a)
{
    for (const auto &g : a.grants)
        out_ << a.tti_index << ',' << to_string(g.slice) << ',' << g.ue_id << ',' << g.granted_prbs << ','
             << g.requested_prbs << ',' << g.mcs << ',' << g.served_bytes << '\n';
    if (!out_)
        throw std::runtime_error("write failed on '" + path_.string() + "'");
}

void AllocationTraceWriter::close()
{
    out_.close();
    if (out_.fail())
        throw std::runtime_error("close failed on '" + path_.string() + "'");
}

} // namespace risran
