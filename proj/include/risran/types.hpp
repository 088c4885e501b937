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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace risran
{

enum class Slice : std::uint8_t
{
    Embb = 0,
    Urllc = 1,
};

inline constexpr std::array<Slice, 2> kAllSlices{Slice::Embb, Slice::Urllc};

enum class SchedulingPolicy : std::uint8_t
{
    RR = 0,
    WF = 1,
    PF = 2,
};

inline constexpr std::array<SchedulingPolicy, 3> kAllPolicies{SchedulingPolicy::RR, SchedulingPolicy::WF,
                                                              SchedulingPolicy::PF};

// Per-slice policy pair, indexed by slice_index().
using PolicyPair = std::array<SchedulingPolicy, 2>;

constexpr std::size_t slice_index(Slice s) { return static_cast<std::size_t>(s); }

std::string_view to_string(Slice s);
std::string_view to_string(SchedulingPolicy p);

// Case-insensitive; accepts "eMBB"/"URLLC" and "RR"/"WF"/"PF".
std::optional<Slice> parse_slice(std::string_view text);
std::optional<SchedulingPolicy> parse_policy(std::string_view text);

} // namespace risran
