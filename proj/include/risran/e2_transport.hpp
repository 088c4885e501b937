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

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace risran::e2
{

// Reliable, ordered byte transport between two E2 actors.
class ByteStream
{
  public:
    virtual ~ByteStream() = default;

    virtual void write(std::span<const std::uint8_t> bytes) = 0;

    // Whatever has arrived so far; never blocks.
    virtual std::vector<std::uint8_t> read_available() = 0;

    // Waits up to timeout_ms for at least one byte. Empty result on timeout.
    virtual std::vector<std::uint8_t> read_wait(int timeout_ms) = 0;
};

// Two connected in-process endpoints. Safe to use from two threads.
std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> make_in_process_pair();

// Loopback TCP transport. Blocking connect/accept, non-blocking reads.
class TcpListener
{
  public:
    // Port 0 picks an ephemeral port.
    explicit TcpListener(std::uint16_t port = 0);
    ~TcpListener();
    TcpListener(const TcpListener &) = delete;
    TcpListener &operator=(const TcpListener &) = delete;

    std::uint16_t port() const { return port_; }
    std::unique_ptr<ByteStream> accept();

  private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

std::unique_ptr<ByteStream> tcp_connect(const std::string &host, std::uint16_t port);

// Message-level wrapper: frames outgoing messages, reassembles incoming ones.
class Endpoint
{
  public:
    explicit Endpoint(std::unique_ptr<ByteStream> stream);

    void send(const Message &msg);

    // All complete messages received so far.
    std::vector<Message> receive();

    // Blocks until one message arrives or timeout_ms expires.
    std::optional<Message> receive_one(int timeout_ms);

    std::uint64_t bytes_sent() const { return bytes_sent_; }

  private:
    std::unique_ptr<ByteStream> stream_;
    FrameReader reader_;
    std::uint64_t bytes_sent_ = 0;
};

} // namespace risran::e2
