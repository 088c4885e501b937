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

#include <cstdint>

namespace risran
{

inline constexpr int kMaxCqi = 15;
inline constexpr int kMaxMcs = 28;
inline constexpr std::uint32_t kCarrierPrbs = 50;
inline constexpr double kPrbBandwidthHz = 180e3;
inline constexpr double kCarrierBandwidthHz = 10e6;
inline constexpr double kThermalNoiseDbmPerHz = -174.0;
inline constexpr double kNoiseFigureDb = 7.0;

// SNR = tx + 10 log10(gain) - (-174 + 10 log10(bandwidth) + NF). A zero gain
// yields -infinity.
double snr_from_gain(double gain, double tx_power_dbm, double bandwidth_hz, double noise_figure_db = kNoiseFigureDb);

// Lower edge of CQI `cqi` (1..15): 15 uniform 2 dB steps from -6 dB to +22 dB.
double cqi_threshold_db(int cqi);

// Largest CQI whose threshold does not exceed the SNR; 0 below -6 dB.
int cqi_from_snr(double snr_db);

// Highest MCS whose spectral efficiency does not exceed the nominal efficiency of the CQI.
int mcs_from_cqi(int cqi);

// SE(mcs) = 0.15 + mcs / 28 * (5.4 - 0.15) bit/s/Hz
double spectral_efficiency(int mcs);

// floor(SE * 180 kHz * 1 ms * 0.9 / 8) bytes per PRB, times the PRB count.
std::uint64_t tbs_bytes(int mcs, std::uint32_t prb_count);

} // namespace risran
