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

#include "risran/rng.hpp"

#include <cstdint>

namespace risran
{

enum class TrafficKind : std::uint8_t
{
    ConstantBitrate,
    Poisson,
};

struct TrafficProfile
{
    TrafficKind kind = TrafficKind::ConstantBitrate;
    double rate_bps = 0.0;

    void validate() const;
};

inline constexpr std::uint64_t kPoissonPacketBytes = 125;
inline constexpr double kTtiSeconds = 1e-3;

// Stateful per-UE arrival process. Must be driven with consecutive TTI indices.
class TrafficSource
{
  public:
    TrafficSource(TrafficProfile profile, std::uint64_t seed);

    // Bytes arriving during TTI `tti_index`, i.e. in [tti, tti + 1) ms.
    std::uint64_t generate_arrivals(std::int64_t tti_index);

    const TrafficProfile &profile() const { return profile_; }

  private:
    TrafficProfile profile_;
    Rng rng_;
    double carry_bytes_ = 0.0;     // CBR fractional remainder
    double next_arrival_s_ = 0.0;  // Poisson
    std::int64_t expected_tti_ = 0;
};

// Unbounded RLC queue; occupancy is also the latency proxy.
class RlcBuffer
{
  public:
    RlcBuffer() = default;
    explicit RlcBuffer(std::uint64_t initial) : queued_(initial), high_water_(initial) {}

    std::uint64_t queued_bytes() const { return queued_; }
    std::uint64_t high_water_mark() const { return high_water_; }
    bool empty() const { return queued_ == 0; }

    void enqueue(std::uint64_t bytes);

    // Throws std::logic_error when asked for more than is queued.
    void drain(std::uint64_t bytes);

    // queued' = queued + arrived - served; served may not exceed queued + arrived.
    void apply(std::uint64_t arrived, std::uint64_t served);

  private:
    std::uint64_t queued_ = 0;
    std::uint64_t high_water_ = 0;
};

} // namespace risran
