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

#include "risran/simulation.hpp"
#include "risran/csv.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace risran;
namespace fs = std::filesystem;

namespace
{

ScenarioConfig short_run(const std::string &id, double seconds, std::uint64_t seed = 3)
{
    auto c = load_scenario(id);
    c.duration_s = seconds;
    c.seed = seed;
    return c;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir(const std::string &name)
{
    const auto dir = fs::temp_directory_path() / ("risran_sim_" + name);
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("zero duration gives empty outputs")
{
    const auto r = simulate(short_run("VIII", 0.0));
    CHECK(r.kpm.empty());
    CHECK(r.controls.empty());
    CHECK(r.indications == 0);
    const auto dir = scratch_dir("empty");
    write_outputs(r, dir);
    for (const char *name : {"kpm.csv", "summary.csv", "ris_gains.csv", "channels.csv", "optimizer.csv"})
        REQUIRE(fs::exists(dir / name));
    CHECK(read_csv(dir / "kpm.csv").size() == 1);
    CHECK(read_csv(dir / "ris_gains.csv").size() == 6);
    fs::remove_all(dir);
}

TEST_CASE("run pipeline")
{
    const auto r = simulate(short_run("VIII", 3.0));
    REQUIRE(r.optimum);
    CHECK(r.optimum->aggregate_gain >= direct_only_gain(r.channels));
    REQUIRE(r.links.size() == 5);
    for (const auto &l : r.links)
        CHECK(l.gain > 0.0);

    // one record per UE per 100 ms window
    CHECK(r.kpm.size() == 30 * 5);
    CHECK(r.indications == 30);
    REQUIRE(r.controls.size() == 3);
    for (const auto &c : r.controls)
        CHECK(c.acked_ok == true);

    for (const auto &rec : r.kpm)
    {
        CHECK(rec.granted_prbs <= rec.requested_prbs);
        CHECK(rec.timestamp_ms % 100 == 0);
    }

    const auto baseline = simulate(short_run("I", 1.0));
    CHECK_FALSE(baseline.optimum);
    CHECK(baseline.controls.empty());
    CHECK(baseline.kpm.size() == 10);
}

TEST_CASE("runs are deterministic")
{
    const auto cfg = short_run("VIII", 2.0, 42);
    const auto a = simulate(cfg);
    const auto b = simulate(cfg);
    CHECK(a.kpm == b.kpm);

    const auto da = scratch_dir("det_a"), db = scratch_dir("det_b");
    write_outputs(a, da);
    write_outputs(b, db);
    for (const auto &entry : fs::directory_iterator(da))
        CHECK(slurp(entry.path()) == slurp(db / entry.path().filename()));
    fs::remove_all(da);
    fs::remove_all(db);

    const auto other = simulate(short_run("VIII", 2.0, 43));
    CHECK_FALSE(other.kpm == a.kpm);
}

TEST_CASE("tcp transport matches in-process")
{
    const auto cfg = short_run("VII", 2.0);
    RunOptions tcp;
    tcp.transport = E2TransportKind::TcpLoopback;
    const auto a = simulate(cfg);
    const auto b = simulate(cfg, tcp);
    CHECK(a.kpm == b.kpm);
    CHECK(a.indications == b.indications);
    CHECK(a.controls.size() == b.controls.size());
}

TEST_CASE("allocation trace")
{
    const auto dir = scratch_dir("trace");
    fs::create_directories(dir);
    RunOptions opts;
    opts.allocation_trace = dir / "alloc.csv";
    simulate(short_run("V", 0.05), opts);
    const auto rows = read_csv(dir / "alloc.csv");
    REQUIRE(rows.size() == 1 + 50 * 5);
    CHECK(rows[0][0] == "tti");
    fs::remove_all(dir);
}

TEST_CASE("compare")
{
    auto a = short_run("I", 1.0);
    auto b = a;
    a.config_id = "A";
    b.config_id = "B";
    const auto cmp = compare({a, b}, {1, 2, 3}, 2);
    const auto &d = cmp.delta("A", "B", "eMBB", "throughput_bps");
    CHECK(d.delta_pct == 0.0);
    CHECK(d.paired_delta_pct == 0.0);
    CHECK(cmp.cell("A", "eMBB", "throughput_bps").per_seed.size() == 3);
    CHECK_THROWS(cmp.cell("C", "eMBB", "throughput_bps"));

    const auto serial = compare({a, b}, {1, 2, 3}, 1);
    CHECK(serial.cell("B", "eMBB", "throughput_bps").per_seed == cmp.cell("B", "eMBB", "throughput_bps").per_seed);

    const auto path = fs::temp_directory_path() / "risran_compare_test.csv";
    write_comparison_csv(path, cmp);
    const auto rows = read_csv(path);
    REQUIRE(rows.size() > 1);
    CHECK(rows[0] == std::vector<std::string>{"kind", "from", "to", "slice", "metric", "value_from", "value_to",
                                              "delta_pct", "paired_delta_pct"});
    fs::remove(path);

    CHECK_THROWS_AS(compare({a}, {}), std::invalid_argument);
}
