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

#include "risran/scheduler.hpp"

#include <algorithm>
#include <cmath>

namespace risran
{

RrResult schedule_rr(std::span<const SchedUe> ues, std::uint32_t quota, std::size_t cursor)
{
    RrResult out;
    out.grants.assign(ues.size(), 0);
    const std::size_t n = ues.size();
    out.cursor = n ? cursor % n : 0;
    if (n == 0)
        return out;

    std::size_t pos = out.cursor;
    std::size_t idle = 0; // consecutive UEs skipped
    std::uint32_t remaining = quota;
    while (remaining > 0 && idle < n)
    {
        if (out.grants[pos] < ues[pos].needed_prbs)
        {
            ++out.grants[pos];
            --remaining;
            idle = 0;
            out.cursor = (pos + 1) % n;
        }
        else
        {
            ++idle;
        }
        pos = (pos + 1) % n;
    }
    return out;
}

double wf_utility(double snr_linear, std::uint32_t prbs)
{
    if (prbs == 0 || !(snr_linear > 0.0))
        return 0.0;
    const double n = static_cast<double>(prbs);
    return n * std::log2(1.0 + snr_linear / n);
}

namespace
{

// Indices of `ues` ordered by ascending UE id.
std::vector<std::size_t> id_order(std::span<const SchedUe> ues)
{
    std::vector<std::size_t> order(ues.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ues[a].ue_id < ues[b].ue_id; });
    return order;
}

} // namespace

std::vector<std::uint32_t> schedule_wf(std::span<const SchedUe> ues, std::uint32_t quota)
{
    std::vector<std::uint32_t> grants(ues.size(), 0);
    const auto order = id_order(ues);
    for (std::uint32_t prb = 0; prb < quota; ++prb)
    {
        bool found = false;
        std::size_t pick = 0;
        double best = 0.0;
        for (std::size_t i : order)
        {
            if (grants[i] >= ues[i].needed_prbs)
                continue;
            const double marginal =
                wf_utility(ues[i].snr_linear, grants[i] + 1) - wf_utility(ues[i].snr_linear, grants[i]);
            if (!found || marginal > best)
            {
                found = true;
                best = marginal;
                pick = i;
            }
        }
        if (!found)
            break;
        ++grants[pick];
    }
    return grants;
}

std::vector<std::uint32_t> schedule_pf(std::span<const SchedUe> ues, std::uint32_t quota)
{
    std::vector<std::uint32_t> grants(ues.size(), 0);
    const auto order = id_order(ues);
    for (std::uint32_t prb = 0; prb < quota; ++prb)
    {
        bool found = false;
        std::size_t pick = 0;
        double best = 0.0;
        for (std::size_t i : order)
        {
            if (grants[i] >= ues[i].needed_prbs)
                continue;
            const double metric = ues[i].rate_per_prb_bps / std::max(ues[i].ewma_bps, kPfEwmaFloor);
            // Metrics within kPfTieTolerance count as ties so that rounding in the
            // division cannot override the lowest-id rule.
            if (!found || metric > best * (1.0 + kPfTieTolerance))
            {
                found = true;
                best = metric;
                pick = i;
            }
        }
        if (!found)
            break;
        ++grants[pick];
    }
    return grants;
}

double pf_ewma_update(double ewma_bps, double served_rate_bps, double alpha)
{
    return std::max((1.0 - alpha) * ewma_bps + alpha * served_rate_bps, kPfEwmaFloor);
}

} // namespace risran
