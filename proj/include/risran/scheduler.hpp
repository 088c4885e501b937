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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace risran
{

// Scheduler view of one UE in a slice. `needed_prbs` is the backlog expressed
// in PRBs at the UE's current MCS; zero means an empty buffer.
struct SchedUe
{
    std::uint32_t ue_id = 0;
    std::uint32_t needed_prbs = 0;
    double rate_per_prb_bps = 0.0;
    double snr_linear = 0.0;
    double ewma_bps = 1.0;
};

struct RrResult
{
    std::vector<std::uint32_t> grants; // parallel to the input list
    std::size_t cursor = 0;
};

// Deals PRBs one at a time in the list's cyclic order starting at `cursor`,
// skipping UEs whose need is met. The returned cursor points past the last UE served.
RrResult schedule_rr(std::span<const SchedUe> ues, std::uint32_t quota, std::size_t cursor);

// n log2(1 + snr / n): rate of a UE whose power is spread over n PRBs.
double wf_utility(double snr_linear, std::uint32_t prbs);

// Greedy water-filling: each PRB goes to the UE with the largest marginal
// wf_utility gain; ties go to the lowest UE id.
std::vector<std::uint32_t> schedule_wf(std::span<const SchedUe> ues, std::uint32_t quota);

inline constexpr double kPfTieTolerance = 1e-12; // relative

// Proportional fair: each PRB goes to the UE maximising rate / max(ewma, 1);
// ties (within kPfTieTolerance) go to the lowest UE id.
std::vector<std::uint32_t> schedule_pf(std::span<const SchedUe> ues, std::uint32_t quota);

inline constexpr double kPfAlpha = 0.01;
inline constexpr double kPfEwmaFloor = 1.0;

double pf_ewma_update(double ewma_bps, double served_rate_bps, double alpha = kPfAlpha);

} // namespace risran
