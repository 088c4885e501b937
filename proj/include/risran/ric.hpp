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

#include "risran/e2.hpp"
#include "risran/e2_transport.hpp"
#include "risran/metrics.hpp"
#include "risran/ran_mac.hpp"
#include "risran/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace risran
{

inline constexpr int kE2ReceiveTimeoutMs = 5000;

// Every complete message available now, plus blocking reads until at least
// `expected` have arrived. Throws std::runtime_error on timeout.
std::vector<e2::Message> receive_at_least(e2::Endpoint &endpoint, std::size_t expected);

// The nine (eMBB, URLLC) pairs in lexicographic order, RR < WF < PF.
PolicyPair sched_cycle_entry(std::size_t index);

// "Sched" xApp: one control per whole second of simulated time, cycling the nine pairs.
class SchedXapp
{
  public:
    // Emits at the first call at or after each whole second. Time must not go backwards.
    std::optional<e2::ControlRequest> step(double elapsed_s);

  private:
    std::int64_t next_second_ = 0;
    double last_elapsed_ = 0.0;
};

// Applies a control to the MAC. Policies are staged and take effect at the next TTI boundary.
// Unknown or missing slices leave the MAC untouched and yield a failure status.
e2::ControlAck apply_control(RanMac &mac, const e2::ControlRequest &ctrl);

// Windows per-TTI KPM records into one INDICATION per subscription period.
class KpmIndicationStream
{
  public:
    // Periods stay aligned to multiples of kpm_period in simulated time, so the
    // first window is short when first_tti is not on a period boundary.
    KpmIndicationStream(e2::SubscriptionRequest subscription, std::uint32_t subscription_id,
                        std::int64_t first_tti = 0);

    // Call once per TTI, in order. Returns an indication when tti_index closes a period.
    std::optional<e2::Indication> on_tti(std::int64_t tti_index, std::span<const KpmRecord> tti_records);

  private:
    e2::SubscriptionRequest sub_;
    std::uint32_t id_;
    std::uint32_t sequence_ = 0;
    std::int64_t expected_tti_ = 0;
    std::int64_t window_start_ = 0;
    KpmWindow window_;
};

// RAN-side E2 actor. Lives on the simulation thread and touches the MAC only
// from poll() and after_tti().
class RanAgent
{
  public:
    RanAgent(e2::Endpoint endpoint, RanMac &mac);

    // Handles inbound subscriptions and controls; call at each TTI boundary
    // before run_tti(). Waits for at least `expected` messages when the peer
    // is known to have sent them. Returns the number of replies sent.
    std::size_t poll(std::size_t expected = 0);

    // Feeds the TTI's records to the active subscription. Returns true if an indication was sent.
    bool after_tti(std::int64_t tti_index, std::span<const KpmRecord> tti_records);

    std::uint64_t indications_sent() const { return indications_sent_; }
    std::uint64_t controls_applied() const { return controls_applied_; }

  private:
    e2::Endpoint endpoint_;
    RanMac &mac_;
    std::optional<KpmIndicationStream> stream_;
    std::uint32_t next_subscription_id_ = 1;
    std::uint64_t indications_sent_ = 0;
    std::uint64_t controls_applied_ = 0;
};

struct ControlLogEntry
{
    std::int64_t issued_ms = 0;
    std::uint32_t correlation_id = 0;
    PolicyPair policies{};
    std::optional<bool> acked_ok;
};

// RIC-side E2 actor hosting the optional Sched xApp.
class RicEndpoint
{
  public:
    RicEndpoint(e2::Endpoint endpoint, e2::SubscriptionRequest subscription, bool xapp_enabled);

    // Processes inbound messages (waiting for at least `expected`), subscribes
    // on the first tick, and runs the xApp. Returns the number of messages sent.
    std::size_t tick(std::int64_t now_ms, std::size_t expected = 0);

    // Processes inbound messages only.
    void drain(std::size_t expected = 0);

    std::optional<std::uint32_t> subscription_id() const { return subscription_id_; }
    const std::vector<KpmRecord> &received_records() const { return records_; }
    std::uint64_t indications_received() const { return indications_; }
    const std::vector<ControlLogEntry> &control_log() const { return controls_; }

  private:
    void handle(const e2::Message &msg);

    e2::Endpoint endpoint_;
    e2::SubscriptionRequest subscription_;
    std::optional<SchedXapp> xapp_;
    bool subscribed_ = false;
    std::uint32_t next_correlation_ = 1;
    std::optional<std::uint32_t> subscription_id_;
    std::uint32_t last_sequence_ = 0;
    std::uint64_t indications_ = 0;
    std::vector<KpmRecord> records_;
    std::vector<ControlLogEntry> controls_;
};

} // namespace risran
