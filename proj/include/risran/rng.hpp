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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace risran
{

std::uint64_t splitmix64(std::uint64_t x);

// Mixes a base seed with a list of tags (link kind, UE id, realization index, ...)
// into an independent stream seed. Stable across platforms.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

// Seeded random source. Only the raw 64-bit engine output is taken from the
// standard library; all distributions are computed here so that streams are
// bit-identical across standard library implementations.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform();

    // Uniform on (0, 1].
    double uniform_open_low();

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal();

    double exponential(double rate);

  private:
    std::mt19937_64 engine_;
};

} // namespace risran
