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

#include "risran/e2_transport.hpp"

#include "e2_random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <thread>

using namespace risran;
using namespace risran::e2;

namespace
{

void exchange(Endpoint &a, Endpoint &b)
{
    Rng rng(9);
    std::vector<Message> sent;
    for (int k = 0; k < 50; ++k)
    {
        sent.push_back(testing::random_message(rng, static_cast<MessageType>(1 + k % 5)));
        a.send(sent.back());
    }
    std::vector<Message> got;
    while (got.size() < sent.size())
    {
        auto m = b.receive_one(2000);
        REQUIRE(m.has_value());
        got.push_back(std::move(*m));
    }
    CHECK(got == sent);
    CHECK(b.receive().empty());

    b.send({99, ControlAck{}});
    const auto reply = a.receive_one(2000);
    REQUIRE(reply);
    CHECK(reply->correlation_id == 99);
    CHECK(a.bytes_sent() > 0);
}

} // namespace

TEST_CASE("in-process pair")
{
    auto [x, y] = make_in_process_pair();
    Endpoint a(std::move(x)), b(std::move(y));
    CHECK(b.receive().empty());
    CHECK_FALSE(b.receive_one(10).has_value());
    exchange(a, b);
}

TEST_CASE("in-process pair across threads")
{
    auto [x, y] = make_in_process_pair();
    Endpoint a(std::move(x)), b(std::move(y));
    std::thread sender([&] {
        for (std::uint32_t k = 0; k < 1000; ++k)
            a.send({k, ControlAck{}});
    });
    std::uint32_t next = 0;
    while (next < 1000)
    {
        auto m = b.receive_one(2000);
        REQUIRE(m);
        CHECK(m->correlation_id == next);
        ++next;
    }
    sender.join();
}

TEST_CASE("tcp loopback")
{
    TcpListener listener;
    REQUIRE(listener.port() != 0);
    std::unique_ptr<ByteStream> server;
    std::thread acceptor([&] { server = listener.accept(); });
    auto client = tcp_connect("127.0.0.1", listener.port());
    acceptor.join();
    REQUIRE(server);
    Endpoint a(std::move(client)), b(std::move(server));
    exchange(a, b);
}

TEST_CASE("tcp connect failure")
{
    std::uint16_t port = 0;
    {
        TcpListener probe;
        port = probe.port();
    }
    CHECK_THROWS_AS(tcp_connect("127.0.0.1", port), std::runtime_error);
}
