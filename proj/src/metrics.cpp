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

#include "risran/metrics.hpp"
#include "risran/csv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace risran
{

double prb_ratio(std::uint64_t granted_sum, std::uint64_t requested_sum)
{
    if (granted_sum > requested_sum)
        throw std::logic_error("prb_ratio: granted " + std::to_string(granted_sum) + " exceeds requested " +
                               std::to_string(requested_sum));
    if (requested_sum == 0)
        return 1.0;
    return static_cast<double>(granted_sum) / static_cast<double>(requested_sum);
}

SummaryStats summarize(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("summarize: empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const auto at = [&](double q) {
        return v[static_cast<std::size_t>(std::floor(static_cast<double>(v.size() - 1) * q))];
    };
    SummaryStats s;
    s.count = v.size();
    s.median = v[(v.size() - 1) / 2];
    s.p25 = at(0.25);
    s.p75 = at(0.75);
    // sorted summation keeps the mean independent of input order
    double sum = 0.0;
    for (double x : v)
        sum += x;
    s.mean = sum / static_cast<double>(v.size());
    return s;
}

namespace
{

SummaryRow make_row(std::string_view config_id, std::string group, std::string metric, std::span<const double> v)
{
    const auto s = summarize(v);
    return {std::string(config_id), std::move(group), std::move(metric), s.median, s.p25, s.p75, s.mean};
}

} // namespace

std::vector<SummaryRow> aggregate(std::span<const KpmRecord> records, GroupBy group_by, std::string_view config_id)
{
    // key -> (label, records)
    std::map<std::uint64_t, std::pair<std::string, std::vector<const KpmRecord *>>> groups;
    for (const auto &r : records)
    {
        std::uint64_t key = 0;
        std::string label = "all";
        if (group_by == GroupBy::Slice)
        {
            key = static_cast<std::uint64_t>(r.slice);
            label = std::string(to_string(r.slice));
        }
        else if (group_by == GroupBy::Ue)
        {
            key = r.ue_id;
            label = "ue" + std::to_string(r.ue_id);
        }
        auto &g = groups[key];
        g.first = label;
        g.second.push_back(&r);
    }

    std::vector<SummaryRow> rows;
    std::vector<double> v;
    for (const auto &[key, group] : groups)
    {
        const auto &[label, recs] = group;
        const auto collect = [&](auto field) {
            v.clear();
            for (const auto *r : recs)
                v.push_back(static_cast<double>(field(*r)));
            return std::span<const double>(v);
        };
        rows.push_back(make_row(config_id, label, "throughput_bps", collect([](const KpmRecord &r) {
                                    return r.throughput_bps;
                                })));
        rows.push_back(make_row(config_id, label, "buffer_bytes", collect([](const KpmRecord &r) {
                                    return r.buffer_bytes;
                                })));
        rows.push_back(make_row(config_id, label, "cqi", collect([](const KpmRecord &r) { return r.cqi; })));
        rows.push_back(make_row(config_id, label, "mcs", collect([](const KpmRecord &r) { return r.mcs; })));
    }
    return rows;
}

std::vector<SummaryRow> aggregate_prb_ratio(std::span<const SliceSample> samples, std::string_view config_id)
{
    std::vector<SummaryRow> rows;
    for (Slice s : kAllSlices)
    {
        std::vector<double> ratio, demand_ratio;
        for (const auto &x : samples)
        {
            if (x.slice != s)
                continue;
            ratio.push_back(prb_ratio(x.granted_prbs, x.requested_prbs));
            demand_ratio.push_back(prb_ratio(x.granted_prbs, std::max(x.granted_prbs, x.demanded_prbs)));
        }
        if (ratio.empty())
            continue;
        rows.push_back(make_row(config_id, std::string(to_string(s)), "prb_ratio", ratio));
        rows.push_back(make_row(config_id, std::string(to_string(s)), "demand_prb_ratio", demand_ratio));
    }
    return rows;
}

void KpmWindow::add(const KpmRecord &r)
{
    auto &a = acc_[r.ue_id];
    a.last = r;
    a.throughput_sum += r.throughput_bps;
    a.granted += r.granted_prbs;
    a.requested += r.requested_prbs;
}

std::vector<KpmRecord> KpmWindow::flush(std::uint64_t window_end_ms, std::uint64_t window_ttis)
{
    std::vector<KpmRecord> out;
    out.reserve(acc_.size());
    const double n = static_cast<double>(std::max<std::uint64_t>(window_ttis, 1));
    for (const auto &[id, a] : acc_)
    {
        KpmRecord r = a.last;
        r.timestamp_ms = window_end_ms;
        r.throughput_bps = a.throughput_sum / n;
        r.granted_prbs = static_cast<std::uint32_t>(a.granted);
        r.requested_prbs = static_cast<std::uint32_t>(a.requested);
        out.push_back(r);
    }
    acc_.clear();
    return out;
}

void write_kpm_csv(const std::filesystem::path &path, std::span<const KpmRecord> records)
{
    CsvWriter csv(path, {"timestamp_ms", "ue_id", "slice", "throughput_bps", "buffer_bytes", "cqi", "mcs",
                         "granted_prbs", "requested_prbs"});
    for (const auto &r : records)
        csv.row({std::to_string(r.timestamp_ms), std::to_string(r.ue_id), std::string(to_string(r.slice)),
                 format_number(r.throughput_bps), std::to_string(r.buffer_bytes), std::to_string(r.cqi),
                 std::to_string(r.mcs), std::to_string(r.granted_prbs), std::to_string(r.requested_prbs)});
    csv.close();
}

std::vector<KpmRecord> read_kpm_csv(const std::filesystem::path &path)
{
    const auto rows = read_csv(path);
    if (rows.empty())
        throw std::runtime_error("'" + path.string() + "': missing header");
    std::vector<KpmRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const auto &f = rows[i];
        if (f.size() != 9)
            throw std::runtime_error("'" + path.string() + "': line " + std::to_string(i + 1) + " has " +
                                     std::to_string(f.size()) + " fields");
        const auto slice = parse_slice(f[2]);
        if (!slice)
            throw std::runtime_error("'" + path.string() + "': unknown slice '" + f[2] + "'");
        KpmRecord r;
        r.timestamp_ms = std::stoull(f[0]);
        r.ue_id = static_cast<std::uint32_t>(std::stoul(f[1]));
        r.slice = *slice;
        r.throughput_bps = std::stod(f[3]);
        r.buffer_bytes = std::stoull(f[4]);
        r.cqi = static_cast<std::uint8_t>(std::stoul(f[5]));
        r.mcs = static_cast<std::uint8_t>(std::stoul(f[6]));
        r.granted_prbs = static_cast<std::uint32_t>(std::stoul(f[7]));
        r.requested_prbs = static_cast<std::uint32_t>(std::stoul(f[8]));
        out.push_back(r);
    }
    return out;
}

void write_summary_csv(const std::filesystem::path &path, std::span<const SummaryRow> rows)
{
    CsvWriter csv(path, {"config_id", "slice", "metric", "median", "p25", "p75", "mean"});
    for (const auto &r : rows)
        csv.row({r.config_id, r.group, r.metric, format_number(r.median), format_number(r.p25),
                 format_number(r.p75), format_number(r.mean)});
    csv.close();
}

} // namespace risran
