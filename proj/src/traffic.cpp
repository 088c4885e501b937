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

#include "risran/traffic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace risran
{

void TrafficProfile::validate() const
{
    if (!(rate_bps >= 0.0) || !std::isfinite(rate_bps))
        throw std::invalid_argument("TrafficProfile: rate must be a finite non-negative number");
}

TrafficSource::TrafficSource(TrafficProfile profile, std::uint64_t seed) : profile_(profile), rng_(seed)
{
    profile_.validate();
    if (profile_.kind == TrafficKind::Poisson)
    {
        if (profile_.rate_bps == 0.0)
        {
            next_arrival_s_ = std::numeric_limits<double>::infinity();
            return;
        }
        const double packets_per_s = profile_.rate_bps / (8.0 * static_cast<double>(kPoissonPacketBytes));
        next_arrival_s_ = rng_.exponential(packets_per_s);
    }
}

std::uint64_t TrafficSource::generate_arrivals(std::int64_t tti_index)
{
    if (tti_index != expected_tti_)
        throw std::logic_error("TrafficSource: expected TTI " + std::to_string(expected_tti_) + ", got " +
                               std::to_string(tti_index));
    ++expected_tti_;

    if (profile_.kind == TrafficKind::ConstantBitrate)
    {
        carry_bytes_ += profile_.rate_bps * kTtiSeconds / 8.0;
        const double whole = std::floor(carry_bytes_ + 1e-9);
        carry_bytes_ -= whole;
        if (carry_bytes_ < 0.0)
            carry_bytes_ = 0.0;
        return static_cast<std::uint64_t>(whole);
    }

    const double packets_per_s = profile_.rate_bps / (8.0 * static_cast<double>(kPoissonPacketBytes));
    const double end_s = static_cast<double>(tti_index + 1) * kTtiSeconds;
    std::uint64_t packets = 0;
    while (next_arrival_s_ < end_s)
    {
        ++packets;
        next_arrival_s_ += rng_.exponential(packets_per_s);
    }
    return packets * kPoissonPacketBytes;
}

void RlcBuffer::enqueue(std::uint64_t bytes)
{
    queued_ += bytes;
    if (queued_ > high_water_)
        high_water_ = queued_;
}

void RlcBuffer::drain(std::uint64_t bytes)
{
    if (bytes > queued_)
        throw std::logic_error("RlcBuffer: draining " + std::to_string(bytes) + " bytes from a queue of " +
                               std::to_string(queued_));
    queued_ -= bytes;
}

void RlcBuffer::apply(std::uint64_t arrived, std::uint64_t served)
{
    if (served > queued_ + arrived)
        throw std::logic_error("RlcBuffer: serving " + std::to_string(served) + " bytes exceeds backlog " +
                               std::to_string(queued_ + arrived));
    enqueue(arrived);
    drain(served);
}

} // namespace risran
