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

#include "risran/metrics.hpp"
#include "risran/types.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace risran::e2
{

// Frame: u32 payload length | u8 msg_type | u32 correlation id | payload, all big-endian.
// Payload layouts are documented in docs/e2-protocol.md.
inline constexpr std::size_t kHeaderBytes = 9;
inline constexpr std::size_t kMaxPayloadBytes = 16u << 20;
inline constexpr std::size_t kKpmRecordBytes = 39;
inline constexpr std::uint8_t kNoSliceFilter = 0xFF;

enum class MessageType : std::uint8_t
{
    SubscriptionRequest = 0x01,
    SubscriptionResponse = 0x02,
    Indication = 0x03,
    ControlRequest = 0x04,
    ControlAck = 0x05,
};

struct SubscriptionRequest
{
    std::uint32_t kpm_period_ms = 100; // >= 1
    std::optional<Slice> slice_filter;

    bool operator==(const SubscriptionRequest &) const = default;
};

struct SubscriptionResponse
{
    std::uint32_t subscription_id = 0;
    bool accepted = false;

    bool operator==(const SubscriptionResponse &) const = default;
};

struct Indication
{
    std::uint32_t subscription_id = 0;
    std::uint32_t sequence = 0; // 1-based
    std::uint64_t window_end_ms = 0;
    std::vector<KpmRecord> records;

    bool operator==(const Indication &) const = default;
};

// Slice ids stay raw so that a RAN agent can reject ids it does not know.
struct SlicePolicyEntry
{
    std::uint8_t slice_id = 0;
    SchedulingPolicy policy = SchedulingPolicy::RR;

    bool operator==(const SlicePolicyEntry &) const = default;
};

struct ControlRequest
{
    std::vector<SlicePolicyEntry> entries;

    static ControlRequest for_pair(PolicyPair policies);
    bool operator==(const ControlRequest &) const = default;
};

enum class ControlStatus : std::uint8_t
{
    Ok = 0,
    UnknownSlice = 1,
    MissingSlice = 2,
};

struct ControlAck
{
    ControlStatus status = ControlStatus::Ok;

    bool success() const { return status == ControlStatus::Ok; }
    bool operator==(const ControlAck &) const = default;
};

using Payload = std::variant<SubscriptionRequest, SubscriptionResponse, Indication, ControlRequest, ControlAck>;

struct Message
{
    std::uint32_t correlation_id = 0;
    Payload payload;

    MessageType type() const;
    bool operator==(const Message &) const = default;
};

class ProtocolError : public std::runtime_error
{
  public:
    enum class Kind
    {
        Truncated,   // fewer bytes than the header or the length field announces
        BadLength,   // length field over the limit, or trailing bytes after the frame
        UnknownType, // msg_type outside 0x01..0x05
        Malformed,   // payload does not match its type's layout
    };

    ProtocolError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

std::vector<std::uint8_t> encode(const Message &msg);

// Decodes exactly one frame.
Message decode(std::span<const std::uint8_t> frame);

// Reassembles frames from a byte stream.
class FrameReader
{
  public:
    void feed(std::span<const std::uint8_t> bytes);

    // Next complete message, or nullopt if more bytes are needed. Throws
    // ProtocolError on a bad header or payload.
    std::optional<Message> next();

    std::size_t buffered() const { return buf_.size(); }

  private:
    std::deque<std::uint8_t> buf_;
};

} // namespace risran::e2
