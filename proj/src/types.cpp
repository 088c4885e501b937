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

#include "risran/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace risran
{

std::string_view to_string(Slice s)
{
    switch (s)
    {
    case Slice::Embb:
        return "eMBB";
    case Slice::Urllc:
        return "URLLC";
    }
    return "?";
}

std::string_view to_string(SchedulingPolicy p)
{
    switch (p)
    {
    case SchedulingPolicy::RR:
        return "RR";
    case SchedulingPolicy::WF:
        return "WF";
    case SchedulingPolicy::PF:
        return "PF";
    }
    return "?";
}

static std::string upper(std::string_view text)
{
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

std::optional<Slice> parse_slice(std::string_view text)
{
    const auto u = upper(text);
    if (u == "EMBB")
        return Slice::Embb;
    if (u == "URLLC")
        return Slice::Urllc;
    return std::nullopt;
}

std::optional<SchedulingPolicy> parse_policy(std::string_view text)
{
    const auto u = upper(text);
    if (u == "RR")
        return SchedulingPolicy::RR;
    if (u == "WF")
        return SchedulingPolicy::WF;
    if (u == "PF")
        return SchedulingPolicy::PF;
    return std::nullopt;
}

} // namespace risran
