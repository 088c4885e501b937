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

#include "risran/link_adaptation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace risran
{

namespace
{

// CQI 0..15 -> MCS; entry c is the largest m with SE(m) <= eff(c), where eff is
// the 4-bit CQI efficiency table of TS 36.213 (Table 7.2.3-1), capped at 28.
constexpr std::array<int, 16> kMcsForCqi{0, 0, 0, 1, 2, 3, 5, 7, 9, 12, 13, 16, 20, 23, 26, 28};

} // namespace

double snr_from_gain(double gain, double tx_power_dbm, double bandwidth_hz, double noise_figure_db)
{
    if (gain < 0.0 || std::isnan(gain))
        throw std::invalid_argument("snr_from_gain: gain must be non-negative");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("snr_from_gain: bandwidth must be positive");
    if (gain == 0.0)
        return -std::numeric_limits<double>::infinity();
    const double noise_dbm = kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
    return tx_power_dbm + 10.0 * std::log10(gain) - noise_dbm;
}

double cqi_threshold_db(int cqi)
{
    if (cqi < 1 || cqi > kMaxCqi)
        throw std::invalid_argument("cqi_threshold_db: CQI must be in [1, 15]");
    return -6.0 + 2.0 * static_cast<double>(cqi - 1);
}

int cqi_from_snr(double snr_db)
{
    if (std::isnan(snr_db))
        return 0;
    int cqi = 0;
    for (int c = 1; c <= kMaxCqi; ++c)
        if (snr_db >= cqi_threshold_db(c))
            cqi = c;
    return cqi;
}

int mcs_from_cqi(int cqi)
{
    if (cqi < 0 || cqi > kMaxCqi)
        throw std::invalid_argument("mcs_from_cqi: CQI " + std::to_string(cqi) + " outside [0, 15]");
    return kMcsForCqi[static_cast<std::size_t>(cqi)];
}

double spectral_efficiency(int mcs)
{
    if (mcs < 0 || mcs > kMaxMcs)
        throw std::invalid_argument("spectral_efficiency: MCS " + std::to_string(mcs) + " outside [0, 28]");
    return 0.15 + static_cast<double>(mcs) / 28.0 * (5.4 - 0.15);
}

std::uint64_t tbs_bytes(int mcs, std::uint32_t prb_count)
{
    const double per_prb = std::floor(spectral_efficiency(mcs) * kPrbBandwidthHz * 1e-3 * 0.9 / 8.0);
    return static_cast<std::uint64_t>(per_prb) * prb_count;
}

} // namespace risran
