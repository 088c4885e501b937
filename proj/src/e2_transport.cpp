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

#include <arpa/inet.h>
#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <stdexcept>
#include <sys/socket.h>
#include <system_error>
#include <unistd.h>

namespace risran::e2
{

namespace
{

struct Pipe
{
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::uint8_t> data;
};

class InProcessStream final : public ByteStream
{
  public:
    InProcessStream(std::shared_ptr<Pipe> in, std::shared_ptr<Pipe> out) : in_(std::move(in)), out_(std::move(out)) {}

    void write(std::span<const std::uint8_t> bytes) override
    {
        {
            std::lock_guard lock(out_->mu);
            out_->data.insert(out_->data.end(), bytes.begin(), bytes.end());
        }
        out_->cv.notify_all();
    }

    std::vector<std::uint8_t> read_available() override
    {
        std::lock_guard lock(in_->mu);
        return drain();
    }

    std::vector<std::uint8_t> read_wait(int timeout_ms) override
    {
        std::unique_lock lock(in_->mu);
        in_->cv.wait_for(lock, std::chrono::milliseconds(timeout_ms), [&] { return !in_->data.empty(); });
        return drain();
    }

  private:
    std::vector<std::uint8_t> drain()
    {
        std::vector<std::uint8_t> out(in_->data.begin(), in_->data.end());
        in_->data.clear();
        return out;
    }

    std::shared_ptr<Pipe> in_;
    std::shared_ptr<Pipe> out_;
};

[[noreturn]] void throw_errno(const char *what)
{
    throw std::system_error(errno, std::generic_category(), what);
}

class TcpStream final : public ByteStream
{
  public:
    explicit TcpStream(int fd) : fd_(fd)
    {
        int one = 1;
        ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    }
    ~TcpStream() override { ::close(fd_); }

    void write(std::span<const std::uint8_t> bytes) override
    {
        std::size_t off = 0;
        while (off < bytes.size())
        {
            const ssize_t n = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
            if (n < 0)
            {
                if (errno == EINTR)
                    continue;
                throw_errno("E2 tcp send");
            }
            off += static_cast<std::size_t>(n);
        }
    }

    std::vector<std::uint8_t> read_available() override { return read_wait(0); }

    std::vector<std::uint8_t> read_wait(int timeout_ms) override
    {
        std::vector<std::uint8_t> out;
        int wait = timeout_ms;
        for (;;)
        {
            pollfd p{fd_, POLLIN, 0};
            const int rc = ::poll(&p, 1, wait);
            if (rc < 0)
            {
                if (errno == EINTR)
                    continue;
                throw_errno("E2 tcp poll");
            }
            if (rc == 0)
                return out;
            std::uint8_t buf[4096];
            const ssize_t n = ::recv(fd_, buf, sizeof buf, 0);
            if (n < 0)
            {
                if (errno == EINTR)
                    continue;
                throw_errno("E2 tcp recv");
            }
            if (n == 0)
            {
                if (out.empty() && !closed_)
                {
                    closed_ = true;
                    throw std::runtime_error("E2 tcp peer closed the connection");
                }
                return out;
            }
            out.insert(out.end(), buf, buf + n);
            wait = 0;
        }
    }

  private:
    int fd_;
    bool closed_ = false;
};

} // namespace

std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>> make_in_process_pair()
{
    auto a_to_b = std::make_shared<Pipe>();
    auto b_to_a = std::make_shared<Pipe>();
    return {std::make_unique<InProcessStream>(b_to_a, a_to_b), std::make_unique<InProcessStream>(a_to_b, b_to_a)};
}

TcpListener::TcpListener(std::uint16_t port)
{
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0)
        throw_errno("E2 tcp socket");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(fd_, reinterpret_cast<sockaddr *>(&addr), sizeof addr) < 0 || ::listen(fd_, 4) < 0)
    {
        const int err = errno;
        ::close(fd_);
        throw std::system_error(err, std::generic_category(), "E2 tcp bind/listen");
    }
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr *>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener()
{
    if (fd_ >= 0)
        ::close(fd_);
}

std::unique_ptr<ByteStream> TcpListener::accept()
{
    for (;;)
    {
        const int fd = ::accept(fd_, nullptr, nullptr);
        if (fd >= 0)
            return std::make_unique<TcpStream>(fd);
        if (errno != EINTR)
            throw_errno("E2 tcp accept");
    }
}

std::unique_ptr<ByteStream> tcp_connect(const std::string &host, std::uint16_t port)
{
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo *res = nullptr;
    const std::string service = std::to_string(port);
    if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0)
        throw std::runtime_error("E2 tcp resolve " + host + ": " + ::gai_strerror(rc));
    const int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (fd < 0)
    {
        ::freeaddrinfo(res);
        throw_errno("E2 tcp socket");
    }
    const int rc = ::connect(fd, res->ai_addr, res->ai_addrlen);
    const int err = errno;
    ::freeaddrinfo(res);
    if (rc < 0)
    {
        ::close(fd);
        throw std::system_error(err, std::generic_category(), "E2 tcp connect " + host + ":" + service);
    }
    return std::make_unique<TcpStream>(fd);
}

Endpoint::Endpoint(std::unique_ptr<ByteStream> stream) : stream_(std::move(stream))
{
    if (!stream_)
        throw std::invalid_argument("E2 endpoint needs a stream");
}

void Endpoint::send(const Message &msg)
{
    const auto frame = encode(msg);
    stream_->write(frame);
    bytes_sent_ += frame.size();
}

std::vector<Message> Endpoint::receive()
{
    reader_.feed(stream_->read_available());
    std::vector<Message> out;
    while (auto m = reader_.next())
        out.push_back(std::move(*m));
    return out;
}

std::optional<Message> Endpoint::receive_one(int timeout_ms)
{
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    for (;;)
    {
        if (auto m = reader_.next())
            return m;
        const auto left =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0)
            return std::nullopt;
        reader_.feed(stream_->read_wait(static_cast<int>(left.count())));
    }
}

} // namespace risran::e2
