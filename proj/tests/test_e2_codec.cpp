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

#include "e2_random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace risran;
using namespace risran::e2;

namespace
{

using Bytes = std::vector<std::uint8_t>;

ProtocolError::Kind decode_error(const Bytes &frame)
{
    try
    {
        decode(frame);
    }
    catch (const ProtocolError &e)
    {
        return e.kind();
    }
    FAIL("decode accepted a bad frame");
    return ProtocolError::Kind::Malformed;
}

Bytes frame_of(std::uint8_t type, std::uint32_t corr, const Bytes &payload)
{
    const auto n = static_cast<std::uint32_t>(payload.size());
    Bytes out{static_cast<std::uint8_t>(n >> 24), static_cast<std::uint8_t>(n >> 16), static_cast<std::uint8_t>(n >> 8),
              static_cast<std::uint8_t>(n),       type,
              static_cast<std::uint8_t>(corr >> 24), static_cast<std::uint8_t>(corr >> 16),
              static_cast<std::uint8_t>(corr >> 8), static_cast<std::uint8_t>(corr)};
    for (auto b : payload)
        out.push_back(b);
    return out;
}

} // namespace

TEST_CASE("control request wire bytes")
{
    Message msg{7, ControlRequest::for_pair({SchedulingPolicy::WF, SchedulingPolicy::RR})};
    CHECK(msg.type() == MessageType::ControlRequest);
    const Bytes expected{0x00, 0x00, 0x00, 0x05, 0x04, 0x00, 0x00, 0x00, 0x07, 0x02, 0x00, 0x01, 0x01, 0x00};
    CHECK(encode(msg) == expected);
    CHECK(decode(expected) == msg);
}

TEST_CASE("fixed layouts")
{
    CHECK(encode({1, SubscriptionRequest{100, std::nullopt}}) ==
          frame_of(0x01, 1, {0x00, 0x00, 0x00, 0x64, kNoSliceFilter}));
    CHECK(encode({2, SubscriptionRequest{1000, Slice::Urllc}}) == frame_of(0x01, 2, {0x00, 0x00, 0x03, 0xE8, 0x01}));
    CHECK(encode({3, SubscriptionResponse{9, true}}) == frame_of(0x02, 3, {0, 0, 0, 9, 1}));
    CHECK(encode({4, ControlAck{ControlStatus::UnknownSlice}}) == frame_of(0x05, 4, {0x01}));

    Indication ind;
    ind.subscription_id = 1;
    ind.sequence = 2;
    ind.window_end_ms = 100;
    ind.records.push_back({100, 5, Slice::Urllc, 1.0, 3, 7, 9, 12, 15});
    const auto bytes = encode({0, ind});
    REQUIRE(bytes.size() == kHeaderBytes + 20 + kKpmRecordBytes);
    // throughput 1.0 as IEEE-754 big-endian: 3F F0 00 ...
    const std::size_t thr = kHeaderBytes + 20 + 8 + 4 + 1;
    CHECK(bytes[thr] == 0x3F);
    CHECK(bytes[thr + 1] == 0xF0);
    CHECK(decode(bytes).payload == Payload{ind});
}

TEST_CASE("randomized round trip")
{
    Rng rng(0xE2);
    for (int k = 0; k < 10000; ++k)
    {
        const auto type = static_cast<MessageType>(1 + k % 5);
        const auto msg = testing::random_message(rng, type);
        REQUIRE(msg.type() == type);
        const auto bytes = encode(msg);
        REQUIRE(decode(bytes) == msg);
    }
}

TEST_CASE("decode errors")
{
    const Bytes good = encode({7, ControlAck{}});

    CHECK(decode_error({0x00, 0x00, 0x00}) == ProtocolError::Kind::Truncated);
    CHECK(decode_error(Bytes(good.begin(), good.end() - 1)) == ProtocolError::Kind::Truncated);

    Bytes trailing = good;
    trailing.push_back(0);
    CHECK(decode_error(trailing) == ProtocolError::Kind::BadLength);
    CHECK(decode_error({0x7F, 0xFF, 0xFF, 0xFF, 0x05, 0, 0, 0, 0}) == ProtocolError::Kind::BadLength);

    CHECK(decode_error(frame_of(0x00, 0, {})) == ProtocolError::Kind::UnknownType);
    CHECK(decode_error(frame_of(0x06, 0, {0})) == ProtocolError::Kind::UnknownType);

    CHECK(decode_error(frame_of(0x05, 0, {})) == ProtocolError::Kind::Malformed);
    CHECK(decode_error(frame_of(0x05, 0, {0x09})) == ProtocolError::Kind::Malformed);
    CHECK(decode_error(frame_of(0x05, 0, {0x00, 0x00})) == ProtocolError::Kind::Malformed);
    CHECK(decode_error(frame_of(0x01, 0, {0, 0, 0, 0, 0xFF})) == ProtocolError::Kind::Malformed);
    CHECK(decode_error(frame_of(0x01, 0, {0, 0, 0, 1, 0x07})) == ProtocolError::Kind::Malformed);
    CHECK(decode_error(frame_of(0x02, 0, {0, 0, 0, 1, 2})) == ProtocolError::Kind::Malformed);
    CHECK(decode_error(frame_of(0x04, 0, {0x02, 0x00, 0x01})) == ProtocolError::Kind::Malformed);
    CHECK(decode_error(frame_of(0x04, 0, {0x01, 0x00, 0x03})) == ProtocolError::Kind::Malformed);
    // indication announcing one record but carrying none
    CHECK(decode_error(frame_of(0x03, 0, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1})) ==
          ProtocolError::Kind::Malformed);
}

TEST_CASE("encode rejects unrepresentable messages")
{
    CHECK_THROWS_AS(encode({0, SubscriptionRequest{0, std::nullopt}}), std::invalid_argument);
    ControlRequest big;
    big.entries.resize(256);
    CHECK_THROWS_AS(encode({0, big}), std::invalid_argument);
}

TEST_CASE("frame reader reassembles chunked input")
{
    Rng rng(77);
    std::vector<Message> sent;
    Bytes stream;
    for (int k = 0; k < 200; ++k)
    {
        sent.push_back(testing::random_message(rng, static_cast<MessageType>(1 + k % 5)));
        const auto b = encode(sent.back());
        stream.insert(stream.end(), b.begin(), b.end());
    }

    FrameReader reader;
    std::vector<Message> got;
    std::size_t pos = 0;
    while (pos < stream.size())
    {
        const std::size_t n = std::min<std::size_t>(1 + rng.next() % 23, stream.size() - pos);
        reader.feed(std::span(stream).subspan(pos, n));
        pos += n;
        while (auto m = reader.next())
            got.push_back(std::move(*m));
    }
    CHECK(got == sent);
    CHECK(reader.buffered() == 0);

    FrameReader bad;
    const Bytes unknown = frame_of(0x09, 0, {});
    bad.feed(unknown);
    CHECK_THROWS_AS(bad.next(), ProtocolError);
}
