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

#include "risran/e2.hpp"

#include <bit>
#include <cstring>
#include <string>

namespace risran::e2
{

namespace
{

class Writer
{
  public:
    void u8(std::uint8_t v) { out.push_back(v); }
    void u32(std::uint32_t v)
    {
        for (int s = 24; s >= 0; s -= 8)
            out.push_back(static_cast<std::uint8_t>(v >> s));
    }
    void u64(std::uint64_t v)
    {
        for (int s = 56; s >= 0; s -= 8)
            out.push_back(static_cast<std::uint8_t>(v >> s));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    std::vector<std::uint8_t> out;
};

class Reader
{
  public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8()
    {
        need(1);
        return in_[pos_++];
    }
    std::uint32_t u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v = (v << 8) | in_[pos_++];
        return v;
    }
    std::uint64_t u64()
    {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v = (v << 8) | in_[pos_++];
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }

    std::size_t remaining() const { return in_.size() - pos_; }

  private:
    void need(std::size_t n) const
    {
        if (in_.size() - pos_ < n)
            throw ProtocolError(ProtocolError::Kind::Malformed, "E2 payload ends early");
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

Slice slice_from_wire(std::uint8_t v)
{
    if (v > 1)
        throw ProtocolError(ProtocolError::Kind::Malformed, "E2 payload: bad slice id " + std::to_string(v));
    return static_cast<Slice>(v);
}

SchedulingPolicy policy_from_wire(std::uint8_t v)
{
    if (v > 2)
        throw ProtocolError(ProtocolError::Kind::Malformed, "E2 payload: bad policy " + std::to_string(v));
    return static_cast<SchedulingPolicy>(v);
}

void write_payload(Writer &w, const SubscriptionRequest &p)
{
    if (p.kpm_period_ms == 0)
        throw std::invalid_argument("SubscriptionRequest: kpm_period_ms must be at least 1");
    w.u32(p.kpm_period_ms);
    w.u8(p.slice_filter ? static_cast<std::uint8_t>(*p.slice_filter) : kNoSliceFilter);
}

void write_payload(Writer &w, const SubscriptionResponse &p)
{
    w.u32(p.subscription_id);
    w.u8(p.accepted ? 1 : 0);
}

void write_payload(Writer &w, const Indication &p)
{
    w.u32(p.subscription_id);
    w.u32(p.sequence);
    w.u64(p.window_end_ms);
    w.u32(static_cast<std::uint32_t>(p.records.size()));
    for (const auto &r : p.records)
    {
        w.u64(r.timestamp_ms);
        w.u32(r.ue_id);
        w.u8(static_cast<std::uint8_t>(r.slice));
        w.f64(r.throughput_bps);
        w.u64(r.buffer_bytes);
        w.u8(r.cqi);
        w.u8(r.mcs);
        w.u32(r.granted_prbs);
        w.u32(r.requested_prbs);
    }
}

void write_payload(Writer &w, const ControlRequest &p)
{
    if (p.entries.size() > 0xFF)
        throw std::invalid_argument("ControlRequest: at most 255 entries");
    w.u8(static_cast<std::uint8_t>(p.entries.size()));
    for (const auto &e : p.entries)
    {
        w.u8(e.slice_id);
        w.u8(static_cast<std::uint8_t>(e.policy));
    }
}

void write_payload(Writer &w, const ControlAck &p)
{
    w.u8(static_cast<std::uint8_t>(p.status));
}

Payload read_payload(MessageType type, Reader &r)
{
    switch (type)
    {
    case MessageType::SubscriptionRequest: {
        SubscriptionRequest p;
        p.kpm_period_ms = r.u32();
        if (p.kpm_period_ms == 0)
            throw ProtocolError(ProtocolError::Kind::Malformed, "SUB_REQ: kpm period of 0 ms");
        const auto f = r.u8();
        if (f != kNoSliceFilter)
            p.slice_filter = slice_from_wire(f);
        return p;
    }
    case MessageType::SubscriptionResponse: {
        SubscriptionResponse p;
        p.subscription_id = r.u32();
        const auto a = r.u8();
        if (a > 1)
            throw ProtocolError(ProtocolError::Kind::Malformed, "SUB_RESP: bad accepted flag");
        p.accepted = a == 1;
        return p;
    }
    case MessageType::Indication: {
        Indication p;
        p.subscription_id = r.u32();
        p.sequence = r.u32();
        p.window_end_ms = r.u64();
        const auto count = r.u32();
        if (static_cast<std::uint64_t>(count) * kKpmRecordBytes != r.remaining())
            throw ProtocolError(ProtocolError::Kind::Malformed,
                                "INDICATION: record count " + std::to_string(count) + " disagrees with payload size");
        p.records.resize(count);
        for (auto &rec : p.records)
        {
            rec.timestamp_ms = r.u64();
            rec.ue_id = r.u32();
            rec.slice = slice_from_wire(r.u8());
            rec.throughput_bps = r.f64();
            rec.buffer_bytes = r.u64();
            rec.cqi = r.u8();
            rec.mcs = r.u8();
            rec.granted_prbs = r.u32();
            rec.requested_prbs = r.u32();
        }
        return p;
    }
    case MessageType::ControlRequest: {
        ControlRequest p;
        const auto count = r.u8();
        p.entries.resize(count);
        for (auto &e : p.entries)
        {
            e.slice_id = r.u8();
            e.policy = policy_from_wire(r.u8());
        }
        return p;
    }
    case MessageType::ControlAck: {
        ControlAck p;
        const auto s = r.u8();
        if (s > 2)
            throw ProtocolError(ProtocolError::Kind::Malformed, "CONTROL_ACK: bad status " + std::to_string(s));
        p.status = static_cast<ControlStatus>(s);
        return p;
    }
    }
    throw ProtocolError(ProtocolError::Kind::UnknownType, "unknown E2 message type");
}

MessageType checked_type(std::uint8_t raw)
{
    if (raw < 0x01 || raw > 0x05)
        throw ProtocolError(ProtocolError::Kind::UnknownType, "unknown E2 message type " + std::to_string(raw));
    return static_cast<MessageType>(raw);
}

std::uint32_t read_be32(const std::uint8_t *p)
{
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

} // namespace

ControlRequest ControlRequest::for_pair(PolicyPair policies)
{
    ControlRequest c;
    for (Slice s : kAllSlices)
        c.entries.push_back({static_cast<std::uint8_t>(s), policies[slice_index(s)]});
    return c;
}

MessageType Message::type() const
{
    return static_cast<MessageType>(payload.index() + 1);
}

std::vector<std::uint8_t> encode(const Message &msg)
{
    Writer body;
    std::visit([&](const auto &p) { write_payload(body, p); }, msg.payload);
    if (body.out.size() > kMaxPayloadBytes)
        throw std::invalid_argument("E2 payload exceeds " + std::to_string(kMaxPayloadBytes) + " bytes");

    Writer frame;
    frame.out.reserve(kHeaderBytes + body.out.size());
    frame.u32(static_cast<std::uint32_t>(body.out.size()));
    frame.u8(static_cast<std::uint8_t>(msg.type()));
    frame.u32(msg.correlation_id);
    frame.out.insert(frame.out.end(), body.out.begin(), body.out.end());
    return std::move(frame.out);
}

Message decode(std::span<const std::uint8_t> frame)
{
    if (frame.size() < kHeaderBytes)
        throw ProtocolError(ProtocolError::Kind::Truncated,
                            "E2 frame of " + std::to_string(frame.size()) + " bytes is shorter than the header");
    const std::uint32_t length = read_be32(frame.data());
    if (length > kMaxPayloadBytes)
        throw ProtocolError(ProtocolError::Kind::BadLength, "E2 payload length " + std::to_string(length) +
                                                                " exceeds the limit");
    if (frame.size() < kHeaderBytes + length)
        throw ProtocolError(ProtocolError::Kind::Truncated, "E2 frame announces " + std::to_string(length) +
                                                                " payload bytes, has " +
                                                                std::to_string(frame.size() - kHeaderBytes));
    if (frame.size() > kHeaderBytes + length)
        throw ProtocolError(ProtocolError::Kind::BadLength, "E2 frame has trailing bytes");

    const MessageType type = checked_type(frame[4]);
    Message msg;
    msg.correlation_id = read_be32(frame.data() + 5);
    Reader r(frame.subspan(kHeaderBytes));
    msg.payload = read_payload(type, r);
    if (r.remaining() != 0)
        throw ProtocolError(ProtocolError::Kind::Malformed, "E2 payload has unparsed bytes");
    return msg;
}

void FrameReader::feed(std::span<const std::uint8_t> bytes)
{
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
}

std::optional<Message> FrameReader::next()
{
    if (buf_.size() < kHeaderBytes)
        return std::nullopt;
    std::uint8_t head[kHeaderBytes];
    std::copy_n(buf_.begin(), kHeaderBytes, head);
    const std::uint32_t length = read_be32(head);
    if (length > kMaxPayloadBytes)
        throw ProtocolError(ProtocolError::Kind::BadLength, "E2 payload length " + std::to_string(length) +
                                                                " exceeds the limit");
    checked_type(head[4]);
    if (buf_.size() < kHeaderBytes + length)
        return std::nullopt;
    std::vector<std::uint8_t> frame(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(kHeaderBytes + length));
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(kHeaderBytes + length));
    return decode(frame);
}

} // namespace risran::e2
