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

#include "risran/ric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risran
{

std::vector<e2::Message> receive_at_least(e2::Endpoint &endpoint, std::size_t expected)
{
    auto msgs = endpoint.receive();
    while (msgs.size() < expected)
    {
        auto m = endpoint.receive_one(kE2ReceiveTimeoutMs);
        if (!m)
            throw std::runtime_error("E2 peer silent: expected " + std::to_string(expected) + " messages, got " +
                                     std::to_string(msgs.size()));
        msgs.push_back(std::move(*m));
    }
    return msgs;
}

PolicyPair sched_cycle_entry(std::size_t index)
{
    const std::size_t k = index % 9;
    return {kAllPolicies[k / 3], kAllPolicies[k % 3]};
}

std::optional<e2::ControlRequest> SchedXapp::step(double elapsed_s)
{
    if (!(elapsed_s >= 0.0))
        throw std::invalid_argument("SchedXapp: elapsed time must be >= 0");
    if (elapsed_s < last_elapsed_)
        throw std::logic_error("SchedXapp: time went backwards");
    last_elapsed_ = elapsed_s;
    const auto second = static_cast<std::int64_t>(std::floor(elapsed_s));
    if (second < next_second_)
        return std::nullopt;
    // Missed seconds are skipped; the pair follows the current second.
    next_second_ = second + 1;
    return e2::ControlRequest::for_pair(sched_cycle_entry(static_cast<std::size_t>(second)));
}

e2::ControlAck apply_control(RanMac &mac, const e2::ControlRequest &ctrl)
{
    PolicyPair next = mac.staged_policies().value_or(mac.active_policies());
    std::array<bool, 2> seen{};
    for (const auto &e : ctrl.entries)
    {
        if (e.slice_id >= kAllSlices.size())
            return {e2::ControlStatus::UnknownSlice};
        next[e.slice_id] = e.policy;
        seen[e.slice_id] = true;
    }
    if (!seen[0] || !seen[1])
        return {e2::ControlStatus::MissingSlice};
    mac.stage_policies(next);
    return {e2::ControlStatus::Ok};
}

KpmIndicationStream::KpmIndicationStream(e2::SubscriptionRequest subscription, std::uint32_t subscription_id,
                                         std::int64_t first_tti)
    : sub_(subscription), id_(subscription_id), expected_tti_(first_tti), window_start_(first_tti)
{
    if (sub_.kpm_period_ms == 0)
        throw std::invalid_argument("subscription kpm_period_ms must be at least 1");
}

std::optional<e2::Indication> KpmIndicationStream::on_tti(std::int64_t tti_index,
                                                          std::span<const KpmRecord> tti_records)
{
    if (tti_index != expected_tti_)
        throw std::logic_error("KpmIndicationStream: expected TTI " + std::to_string(expected_tti_) + ", got " +
                               std::to_string(tti_index));
    ++expected_tti_;
    for (const auto &r : tti_records)
        if (!sub_.slice_filter || r.slice == *sub_.slice_filter)
            window_.add(r);

    const auto end_ms = static_cast<std::uint64_t>(tti_index + 1);
    if (end_ms % sub_.kpm_period_ms != 0)
        return std::nullopt;
    e2::Indication ind;
    ind.subscription_id = id_;
    ind.sequence = ++sequence_;
    ind.window_end_ms = end_ms;
    ind.records = window_.flush(end_ms, static_cast<std::uint64_t>(tti_index + 1 - window_start_));
    window_start_ = tti_index + 1;
    return ind;
}

RanAgent::RanAgent(e2::Endpoint endpoint, RanMac &mac) : endpoint_(std::move(endpoint)), mac_(mac) {}

std::size_t RanAgent::poll(std::size_t expected)
{
    std::size_t sent = 0;
    for (auto &msg : receive_at_least(endpoint_, expected))
    {
        if (const auto *sub = std::get_if<e2::SubscriptionRequest>(&msg.payload))
        {
            // One subscription at a time; a new request replaces the old one.
            const std::uint32_t id = next_subscription_id_++;
            stream_.emplace(*sub, id, mac_.next_tti());
            endpoint_.send({msg.correlation_id, e2::SubscriptionResponse{id, true}});
            ++sent;
        }
        else if (const auto *ctrl = std::get_if<e2::ControlRequest>(&msg.payload))
        {
            const auto ack = apply_control(mac_, *ctrl);
            if (ack.success())
                ++controls_applied_;
            endpoint_.send({msg.correlation_id, ack});
            ++sent;
        }
        else
        {
            throw e2::ProtocolError(e2::ProtocolError::Kind::Malformed,
                                    "RAN agent received an unexpected message type");
        }
    }
    return sent;
}

bool RanAgent::after_tti(std::int64_t tti_index, std::span<const KpmRecord> tti_records)
{
    if (!stream_)
        return false;
    auto ind = stream_->on_tti(tti_index, tti_records);
    if (!ind)
        return false;
    endpoint_.send({0, std::move(*ind)});
    ++indications_sent_;
    return true;
}

RicEndpoint::RicEndpoint(e2::Endpoint endpoint, e2::SubscriptionRequest subscription, bool xapp_enabled)
    : endpoint_(std::move(endpoint)), subscription_(subscription)
{
    if (xapp_enabled)
        xapp_.emplace();
}

void RicEndpoint::drain(std::size_t expected)
{
    for (const auto &msg : receive_at_least(endpoint_, expected))
        handle(msg);
}

std::size_t RicEndpoint::tick(std::int64_t now_ms, std::size_t expected)
{
    drain(expected);
    std::size_t sent = 0;
    if (!subscribed_)
    {
        endpoint_.send({next_correlation_++, subscription_});
        subscribed_ = true;
        ++sent;
    }
    if (xapp_)
    {
        if (auto ctrl = xapp_->step(static_cast<double>(now_ms) / 1000.0))
        {
            ControlLogEntry entry;
            entry.issued_ms = now_ms;
            entry.correlation_id = next_correlation_++;
            entry.policies = {ctrl->entries[0].policy, ctrl->entries[1].policy};
            endpoint_.send({entry.correlation_id, std::move(*ctrl)});
            controls_.push_back(entry);
            ++sent;
        }
    }
    return sent;
}

void RicEndpoint::handle(const e2::Message &msg)
{
    if (const auto *resp = std::get_if<e2::SubscriptionResponse>(&msg.payload))
    {
        if (!resp->accepted)
            throw std::runtime_error("RAN agent rejected the KPM subscription");
        subscription_id_ = resp->subscription_id;
    }
    else if (const auto *ind = std::get_if<e2::Indication>(&msg.payload))
    {
        if (!subscription_id_ || ind->subscription_id != *subscription_id_)
            throw std::runtime_error("indication for unknown subscription " + std::to_string(ind->subscription_id));
        if (ind->sequence != last_sequence_ + 1)
            throw std::runtime_error("indication sequence gap: expected " + std::to_string(last_sequence_ + 1) +
                                     ", got " + std::to_string(ind->sequence));
        last_sequence_ = ind->sequence;
        ++indications_;
        records_.insert(records_.end(), ind->records.begin(), ind->records.end());
    }
    else if (const auto *ack = std::get_if<e2::ControlAck>(&msg.payload))
    {
        for (auto &c : controls_)
            if (c.correlation_id == msg.correlation_id)
            {
                c.acked_ok = ack->success();
                return;
            }
        throw std::runtime_error("CONTROL_ACK for unknown correlation id " + std::to_string(msg.correlation_id));
    }
    else
    {
        throw e2::ProtocolError(e2::ProtocolError::Kind::Malformed, "RIC received an unexpected message type");
    }
}

} // namespace risran
