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

#include "risran/csv.hpp"
#include "risran/scenario.hpp"
#include "risran/simulation.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace risran;

namespace
{

fs::path output_root()
{
    if (const char *env = std::getenv("RIS_SIM_OUT"); env && *env)
        return env;
    return "results";
}

// "1,2,5-8" -> {1,2,5,6,7,8}
std::vector<std::uint64_t> parse_seed_list(const std::string &text)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty())
            continue;
        const auto dash = item.find('-');
        if (dash == std::string::npos)
        {
            out.push_back(std::stoull(item));
            continue;
        }
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        if (hi < lo)
            throw std::invalid_argument("seed range '" + item + "' is reversed");
        for (auto s = lo; s <= hi; ++s)
            out.push_back(s);
    }
    if (out.empty())
        throw std::invalid_argument("no seeds given");
    return out;
}

std::vector<std::string> split(const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

void print_catalog()
{
    std::cout << std::left << std::setw(6) << "id" << std::setw(22) << "UEs (slice)" << std::setw(14)
              << "eMBB/URLLC" << std::setw(10) << "PRBs" << std::setw(8) << "RIS" << std::setw(6) << "xApp"
              << "policy\n";
    for (const auto &c : scenario_catalog())
    {
        std::string ues;
        for (const auto &u : c.ues)
            ues += (ues.empty() ? "" : " ") + std::to_string(u.ue_id) + (u.slice == Slice::Embb ? "e" : "u");
        const auto q = c.prb_quotas();
        std::ostringstream bw;
        bw << c.bandwidth_mhz[0] << "/" << c.bandwidth_mhz[1] << " MHz";
        std::cout << std::left << std::setw(6) << c.config_id << std::setw(22) << ues << std::setw(14) << bw.str()
                  << std::setw(10) << (std::to_string(q[0]) + "/" + std::to_string(q[1])) << std::setw(8)
                  << c.ris_elements << std::setw(6) << (c.xapp_enabled ? "yes" : "no")
                  << to_string(c.default_policy[0]) << "/" << to_string(c.default_policy[1]) << "\n";
    }
    std::cout << "UE ids: e = eMBB, u = URLLC. UE-RIS distances 20, 27, 37, 58, 66 m for UEs 1-5.\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ris_sim: RIS-assisted Open RAN slicing simulator"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run one configuration and write CSV outputs");
    std::string config_arg;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;
    std::optional<double> tx_power;
    std::string out_dir;
    bool trace = false;
    std::string transport = "inproc";
    run->add_option("--config", config_arg, "Catalog id (I..VIII) or scenario file")->required();
    run->add_option("--seed", seed, "Random seed");
    run->add_option("--duration", duration, "Simulated seconds");
    run->add_option("--tx-power", tx_power, "Transmit power in dBm");
    run->add_option("--out", out_dir, "Output directory (default $RIS_SIM_OUT/<config>_seed<n>)");
    run->add_flag("--trace", trace, "Also write the per-TTI allocation trace");
    run->add_option("--e2-transport", transport, "E2 transport for xApp runs")
        ->check(CLI::IsMember({"inproc", "tcp"}));

    auto *cmp = app.add_subcommand("compare", "Compare configurations across seeds");
    std::string configs_arg;
    std::string seeds_arg = "1-20";
    std::optional<double> cmp_duration;
    unsigned workers = 0;
    std::string cmp_out;
    cmp->add_option("--configs", configs_arg, "Comma-separated ids or files")->required();
    cmp->add_option("--seeds", seeds_arg, "Seeds, e.g. 1,2,3 or 1-20");
    cmp->add_option("--duration", cmp_duration, "Simulated seconds per run");
    cmp->add_option("--workers", workers, "Worker threads (0 = all cores)");
    cmp->add_option("--out", cmp_out, "Also write the table as CSV");

    auto *cat = app.add_subcommand("catalog", "Print the configuration catalog");

    auto *show = app.add_subcommand("show", "Print a configuration in scenario-file form");
    std::string show_arg;
    show->add_option("config", show_arg, "Catalog id or scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            ScenarioConfig cfg = load_scenario(config_arg);
            if (seed)
                cfg.seed = *seed;
            if (duration)
                cfg.duration_s = *duration;
            if (tx_power)
                cfg.tx_power_dbm = *tx_power;
            cfg.validate();
            const fs::path dir = out_dir.empty()
                                     ? output_root() / (cfg.config_id + "_seed" + std::to_string(cfg.seed))
                                     : fs::path(out_dir);
            fs::create_directories(dir);
            RunOptions opts;
            opts.transport = transport == "tcp" ? E2TransportKind::TcpLoopback : E2TransportKind::InProcess;
            if (trace)
                opts.allocation_trace = dir / "allocations.csv";
            const RunResult result = simulate(cfg, opts);
            write_outputs(result, dir);
            std::cout << "config " << cfg.config_id << " seed " << cfg.seed << ": " << result.kpm.size()
                      << " KPM records, " << result.controls.size() << " controls, " << result.indications
                      << " indications -> " << dir.string() << "\n";
            for (const auto &row : result.summary)
                if (row.metric == "throughput_bps" || row.metric == "buffer_bytes" || row.metric == "prb_ratio")
                    std::cout << "  " << std::left << std::setw(6) << row.group << std::setw(18) << row.metric
                              << "median " << format_number(row.median) << "\n";
        }
        else if (*cmp)
        {
            std::vector<ScenarioConfig> configs;
            for (const auto &id : split(configs_arg))
            {
                configs.push_back(load_scenario(id));
                if (cmp_duration)
                    configs.back().duration_s = *cmp_duration;
            }
            const auto seeds = parse_seed_list(seeds_arg);
            const Comparison result = compare(configs, seeds, workers);
            std::cout << std::left << std::setw(8) << "config" << std::setw(7) << "slice" << std::setw(18)
                      << "metric"
                      << "median over " << seeds.size() << " seeds\n";
            for (const auto &c : result.cells)
                std::cout << std::left << std::setw(8) << c.config_id << std::setw(7) << c.group << std::setw(18)
                          << c.metric << format_number(c.median) << "\n";
            std::cout << "\n"
                      << std::left << std::setw(14) << "pair" << std::setw(7) << "slice" << std::setw(18)
                      << "metric" << std::setw(14) << "delta %"
                      << "paired delta %\n";
            for (const auto &d : result.deltas)
                std::cout << std::left << std::setw(14) << (d.from + "->" + d.to) << std::setw(7) << d.group
                          << std::setw(18) << d.metric << std::setw(14) << format_number(d.delta_pct)
                          << format_number(d.paired_delta_pct) << "\n";
            if (!cmp_out.empty())
                write_comparison_csv(cmp_out, result);
        }
        else if (*cat)
        {
            print_catalog();
        }
        else if (*show)
        {
            std::cout << serialize_scenario(load_scenario(show_arg));
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "ris_sim: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
