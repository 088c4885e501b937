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
#include "risran/e2_transport.hpp"
#include "risran/link_adaptation.hpp"
#include "risran/ran_mac.hpp"
#include "risran/rng.hpp"
#include "risran/traffic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace risran
{

namespace
{

constexpr std::uint64_t kChannelTag = 0xC4A7;
constexpr std::uint64_t kTrafficTag = 0x7AF1;

double to_db(double linear)
{
    return linear > 0.0 ? 10.0 * std::log10(linear) : -std::numeric_limits<double>::infinity();
}

// The E2 pair lives only for xApp-enabled runs.
struct E2Loop
{
    std::unique_ptr<RanAgent> agent;
    std::unique_ptr<RicEndpoint> ric;
    std::size_t pending_to_ric = 0;
};

E2Loop make_e2_loop(const ScenarioConfig &config, const RunOptions &options, RanMac &mac)
{
    std::unique_ptr<e2::ByteStream> ric_side;
    std::unique_ptr<e2::ByteStream> ran_side;
    if (options.transport == E2TransportKind::TcpLoopback)
    {
        e2::TcpListener listener;
        std::unique_ptr<e2::ByteStream> client;
        std::exception_ptr err;
        std::thread connector([&] {
            try
            {
                client = e2::tcp_connect("127.0.0.1", listener.port());
            }
            catch (...)
            {
                err = std::current_exception();
            }
        });
        ran_side = listener.accept();
        connector.join();
        if (err)
            std::rethrow_exception(err);
        ric_side = std::move(client);
    }
    else
    {
        std::tie(ric_side, ran_side) = e2::make_in_process_pair();
    }
    E2Loop loop;
    loop.agent = std::make_unique<RanAgent>(e2::Endpoint(std::move(ran_side)), mac);
    loop.ric = std::make_unique<RicEndpoint>(e2::Endpoint(std::move(ric_side)),
                                             e2::SubscriptionRequest{config.kpm_period_ms, std::nullopt}, true);
    return loop;
}

std::vector<double> gains_for(const ChannelSet &channels, const RisConfiguration &config)
{
    std::vector<double> out;
    for (const auto &ue : channels.ues)
    {
        if (config.size() == 0)
            out.push_back(std::norm(ue.direct.scalar_gain));
        else
            out.push_back(overall_gain(ue.direct.scalar_gain, channels.ris_to_bs.element_gains, config.phases,
                                       ue.ue_to_ris.element_gains));
    }
    return out;
}

std::string pct_text(double v)
{
    return format_number(v);
}

double percent_delta(double from, double to)
{
    if (from == to)
        return 0.0;
    if (from == 0.0)
        return to > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    return (to - from) / std::abs(from) * 100.0;
}

double median_of(std::vector<double> v)
{
    return summarize(v).median;
}

} // namespace

RunResult simulate(const ScenarioConfig &config, const RunOptions &options)
{
    config.validate();
    RunResult result;
    result.config = config;

    // Channels and RIS configuration.
    std::vector<std::uint32_t> ids;
    for (const auto &u : config.ues)
        ids.push_back(u.ue_id);
    const NodeGeometry geometry = scenario_geometry(config);
    result.channels =
        build_channels(geometry, ids, derive_seed(config.seed, {kChannelTag}), options.multipath);

    RisConfiguration ris;
    if (config.ris_elements > 0)
    {
        result.optimum = optimize_weights(result.channels, options.weight_search);
        ris = result.optimum->configuration;
    }
    const auto gains = gains_for(result.channels, ris);

    // MAC and traffic.
    std::vector<UeSetup> setups;
    std::vector<TrafficSource> sources;
    for (std::size_t i = 0; i < config.ues.size(); ++i)
    {
        const auto &u = config.ues[i];
        setups.push_back({u.ue_id, u.slice, gains[i]});
        sources.emplace_back(config.traffic(u.slice), derive_seed(config.seed, {kTrafficTag, u.ue_id}));
    }
    LinkBudget budget;
    budget.tx_power_dbm = config.tx_power_dbm;
    RanMac mac(SlicingConfig{config.prb_quotas()}, config.default_policy, setups, budget);

    for (std::size_t i = 0; i < config.ues.size(); ++i)
    {
        const auto &ctx = mac.ue(config.ues[i].ue_id);
        result.links.push_back({ctx.ue_id, ctx.slice, std::norm(result.channels.ues[i].direct.scalar_gain),
                                ctx.channel_power_gain, ctx.snr_db, ctx.cqi, ctx.mcs});
    }

    std::optional<AllocationTraceWriter> trace;
    if (options.allocation_trace)
        trace.emplace(*options.allocation_trace);

    E2Loop e2loop;
    if (config.xapp_enabled)
        e2loop = make_e2_loop(config, options, mac);

    // TTI loop.
    const std::uint64_t ttis = config.duration_ttis();
    const std::uint64_t period = config.kpm_period_ms;
    KpmWindow window;
    std::array<SliceSample, 2> slice_acc{};
    std::array<bool, 2> slice_used{};
    for (const auto &u : config.ues)
        slice_used[slice_index(u.slice)] = true;

    for (std::uint64_t t = 0; t < ttis; ++t)
    {
        const auto tti = static_cast<std::int64_t>(t);
        if (e2loop.ric)
        {
            const std::size_t to_agent = e2loop.ric->tick(tti, e2loop.pending_to_ric);
            e2loop.pending_to_ric = e2loop.agent->poll(to_agent);
        }

        for (std::size_t i = 0; i < config.ues.size(); ++i)
            if (const auto bytes = sources[i].generate_arrivals(tti))
                mac.enqueue(config.ues[i].ue_id, bytes);

        const TtiOutcome outcome = mac.run_tti();
        if (trace)
            trace->write(outcome.allocation);
        for (const auto &r : outcome.records)
            window.add(r);
        for (Slice s : kAllSlices)
        {
            const auto &tot = outcome.allocation.slices[slice_index(s)];
            auto &acc = slice_acc[slice_index(s)];
            acc.granted_prbs += tot.granted_prbs;
            acc.requested_prbs += tot.requested_prbs;
            acc.demanded_prbs += tot.demanded_prbs;
        }
        if (e2loop.agent && e2loop.agent->after_tti(tti, outcome.records))
            ++e2loop.pending_to_ric;

        if ((t + 1) % period == 0)
        {
            auto recs = window.flush(t + 1, period);
            result.kpm.insert(result.kpm.end(), recs.begin(), recs.end());
            for (Slice s : kAllSlices)
            {
                auto &acc = slice_acc[slice_index(s)];
                if (slice_used[slice_index(s)])
                {
                    acc.timestamp_ms = t + 1;
                    acc.slice = s;
                    result.slice_samples.push_back(acc);
                }
                acc = SliceSample{};
            }
        }
    }
    if (!window.empty())
    {
        const std::uint64_t partial = ttis % period;
        auto recs = window.flush(ttis, partial);
        result.kpm.insert(result.kpm.end(), recs.begin(), recs.end());
        for (Slice s : kAllSlices)
            if (slice_used[slice_index(s)])
            {
                auto acc = slice_acc[slice_index(s)];
                acc.timestamp_ms = ttis;
                acc.slice = s;
                result.slice_samples.push_back(acc);
            }
    }
    if (trace)
        trace->close();

    if (e2loop.ric)
    {
        e2loop.ric->drain(e2loop.pending_to_ric);
        result.controls = e2loop.ric->control_log();
        result.indications = e2loop.ric->indications_received();
        // Full periods seen by the RIC must match the RAN-side log exactly.
        const auto &seen = e2loop.ric->received_records();
        const std::size_t full = std::min(seen.size(), result.kpm.size());
        if (!std::equal(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(full), result.kpm.begin()))
            throw std::logic_error("KPM indications disagree with the RAN-side KPM log");
        for (const auto &c : result.controls)
            if (c.acked_ok.has_value() && !*c.acked_ok)
                throw std::logic_error("RAN agent rejected control " + std::to_string(c.correlation_id));
    }

    result.summary = aggregate(result.kpm, GroupBy::Slice, config.config_id);
    const auto ratios = aggregate_prb_ratio(result.slice_samples, config.config_id);
    result.summary.insert(result.summary.end(), ratios.begin(), ratios.end());
    return result;
}

void write_outputs(const RunResult &result, const std::filesystem::path &dir)
{
    std::filesystem::create_directories(dir);
    write_kpm_csv(dir / "kpm.csv", result.kpm);
    write_summary_csv(dir / "summary.csv", result.summary);

    CsvWriter gains(dir / "ris_gains.csv",
                    {"config_id", "ue_id", "slice", "ris_elements", "direct_gain_db", "gain_db", "ris_gain_delta_db",
                     "snr_db", "cqi", "mcs"});
    for (const auto &l : result.links)
        gains.row({result.config.config_id, std::to_string(l.ue_id), std::string(to_string(l.slice)),
                   std::to_string(result.config.ris_elements), format_number(to_db(l.direct_gain)),
                   format_number(to_db(l.gain)), format_number(to_db(l.gain) - to_db(l.direct_gain)),
                   format_number(l.snr_db), std::to_string(l.cqi), std::to_string(l.mcs)});
    gains.close();

    write_channel_csv(dir / "channels.csv", result.channels);
    if (result.optimum)
    {
        const OptimizerReport report{result.channels.ues.size(), result.channels.ris_element_count,
                                     result.optimum->weights, result.optimum->aggregate_gain};
        write_optimizer_csv(dir / "optimizer.csv", std::span(&report, 1));
    }
}

const ComparisonCell &Comparison::cell(const std::string &config_id, const std::string &group,
                                       const std::string &metric) const
{
    for (const auto &c : cells)
        if (c.config_id == config_id && c.group == group && c.metric == metric)
            return c;
    throw std::out_of_range("no comparison cell for " + config_id + "/" + group + "/" + metric);
}

const ComparisonDelta &Comparison::delta(const std::string &from, const std::string &to, const std::string &group,
                                         const std::string &metric) const
{
    for (const auto &d : deltas)
        if (d.from == from && d.to == to && d.group == group && d.metric == metric)
            return d;
    throw std::out_of_range("no comparison delta for " + from + "->" + to + " " + group + "/" + metric);
}

Comparison compare(const std::vector<ScenarioConfig> &configs, const std::vector<std::uint64_t> &seeds,
                   unsigned workers)
{
    if (seeds.empty())
        throw std::invalid_argument("compare needs at least one seed");
    if (configs.empty())
        throw std::invalid_argument("compare needs at least one configuration");

    struct Job
    {
        std::size_t config;
        std::size_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < configs.size(); ++c)
        for (std::size_t s = 0; s < seeds.size(); ++s)
            jobs.push_back({c, s});

    // Per-job summary rows; each slot is written by exactly one worker.
    std::vector<std::vector<SummaryRow>> summaries(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
        for (;;)
        {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size())
                return;
            try
            {
                ScenarioConfig cfg = configs[jobs[j].config];
                cfg.seed = seeds[jobs[j].seed];
                summaries[j] = simulate(cfg).summary;
            }
            catch (...)
            {
                std::lock_guard lock(failure_mu);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);

    Comparison out;
    for (const auto &c : configs)
        out.config_ids.push_back(c.config_id);
    out.seeds = seeds;

    // (config, group, metric) -> per-seed medians. Keys keep first-seen order.
    using Key = std::tuple<std::string, std::string>;
    std::vector<std::map<Key, std::vector<double>>> per_config(configs.size());
    std::vector<Key> key_order;
    for (std::size_t j = 0; j < jobs.size(); ++j)
        for (const auto &row : summaries[j])
        {
            const Key k{row.group, row.metric};
            if (std::find(key_order.begin(), key_order.end(), k) == key_order.end())
                key_order.push_back(k);
            auto &v = per_config[jobs[j].config][k];
            v.resize(seeds.size(), std::numeric_limits<double>::quiet_NaN());
            v[jobs[j].seed] = row.median;
        }

    for (std::size_t c = 0; c < configs.size(); ++c)
        for (const auto &k : key_order)
        {
            const auto it = per_config[c].find(k);
            if (it == per_config[c].end())
                continue;
            ComparisonCell cell{configs[c].config_id, std::get<0>(k), std::get<1>(k), 0.0, it->second};
            cell.median = median_of(cell.per_seed);
            out.cells.push_back(std::move(cell));
        }

    for (std::size_t a = 0; a < configs.size(); ++a)
        for (std::size_t b = a + 1; b < configs.size(); ++b)
            for (const auto &k : key_order)
            {
                const auto ia = per_config[a].find(k);
                const auto ib = per_config[b].find(k);
                if (ia == per_config[a].end() || ib == per_config[b].end())
                    continue;
                ComparisonDelta d{configs[a].config_id, configs[b].config_id, std::get<0>(k), std::get<1>(k),
                                  0.0, 0.0};
                d.delta_pct = percent_delta(median_of(ia->second), median_of(ib->second));
                std::vector<double> paired;
                for (std::size_t s = 0; s < seeds.size(); ++s)
                    paired.push_back(percent_delta(ia->second[s], ib->second[s]));
                d.paired_delta_pct = median_of(paired);
                out.deltas.push_back(std::move(d));
            }
    return out;
}

void write_comparison_csv(const std::filesystem::path &path, const Comparison &cmp)
{
    CsvWriter csv(path, {"kind", "from", "to", "slice", "metric", "value_from", "value_to", "delta_pct",
                         "paired_delta_pct"});
    for (const auto &c : cmp.cells)
        csv.row({"median", c.config_id, c.config_id, c.group, c.metric, format_number(c.median),
                 format_number(c.median), "", ""});
    for (const auto &d : cmp.deltas)
        csv.row({"delta", d.from, d.to, d.group, d.metric, format_number(cmp.cell(d.from, d.group, d.metric).median),
                 format_number(cmp.cell(d.to, d.group, d.metric).median), pct_text(d.delta_pct),
                 pct_text(d.paired_delta_pct)});
    csv.close();
}

} // namespace risran
