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

#include "risran/ris_control.hpp"
#include "risran/csv.hpp"
#include "risran/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace risran
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Combined reflection entries below this magnitude (relative to the weight sum)
// are treated as cancelled.
constexpr double kCancelledTolerance = 1e-12;

// Cascaded coefficients b_im = conj(h_RA[m]) h_iR[m], so that
// G_i = |a_i + sum_m b_im e^{j theta_m}|^2.
struct Objective
{
    std::size_t ue_count = 0;
    std::size_t element_count = 0;
    std::vector<cplx> direct;   // a_i
    std::vector<cplx> cascaded; // b_im, row-major by UE
    std::vector<std::vector<cplx>> reflections; // v_i

    explicit Objective(const ChannelSet &channels)
        : ue_count(channels.ues.size()), element_count(channels.ris_element_count)
    {
        channels.validate();
        direct.reserve(ue_count);
        cascaded.reserve(ue_count * element_count);
        for (const auto &ue : channels.ues)
        {
            direct.push_back(ue.direct.scalar_gain);
            for (std::size_t m = 0; m < element_count; ++m)
                cascaded.push_back(std::conj(channels.ris_to_bs.element_gains[m]) * ue.ue_to_ris.element_gains[m]);
            reflections.push_back(
                per_ue_reflection(ue.direct.scalar_gain, ue.ue_to_ris.element_gains, channels.ris_to_bs.element_gains)
                    .vector.entries);
        }
    }

    double gain_for_phasors(std::span<const cplx> unit) const
    {
        double total = 0.0;
        for (std::size_t i = 0; i < ue_count; ++i)
        {
            cplx s = direct[i];
            const cplx *b = cascaded.data() + i * element_count;
            for (std::size_t m = 0; m < element_count; ++m)
                s += b[m] * unit[m];
            total += std::norm(s);
        }
        return total;
    }

    void phasors_for_weights(std::span<const double> w, std::vector<cplx> &unit) const
    {
        unit.assign(element_count, cplx{});
        double wsum = 0.0;
        for (std::size_t i = 0; i < ue_count; ++i)
        {
            wsum += w[i];
            if (w[i] == 0.0)
                continue;
            for (std::size_t m = 0; m < element_count; ++m)
                unit[m] += w[i] * reflections[i][m];
        }
        const double tol = kCancelledTolerance * std::max(wsum, 1.0);
        for (auto &u : unit)
        {
            const double mag = std::abs(u);
            u = mag > tol ? u / mag : cplx(1.0, 0.0);
        }
    }

    // Sets each u_m in turn to argmax_theta sum_i |c_i + b_im e^{j theta}|^2,
    // where c_i excludes element m: e^{j theta} = conj(z) / |z|, z = sum_i b_im conj(c_i).
    double coordinate_ascent(std::vector<cplx> &unit, std::size_t max_sweeps) const
    {
        std::vector<cplx> sums(ue_count);
        for (std::size_t i = 0; i < ue_count; ++i)
        {
            sums[i] = direct[i];
            for (std::size_t m = 0; m < element_count; ++m)
                sums[i] += cascaded[i * element_count + m] * unit[m];
        }
        double gain = gain_for_phasors(unit);
        for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep)
        {
            for (std::size_t m = 0; m < element_count; ++m)
            {
                cplx z{};
                for (std::size_t i = 0; i < ue_count; ++i)
                {
                    const cplx b = cascaded[i * element_count + m];
                    z += b * std::conj(sums[i] - b * unit[m]);
                }
                const double mag = std::abs(z);
                if (!(mag > 0.0))
                    continue;
                const cplx next = std::conj(z) / mag;
                for (std::size_t i = 0; i < ue_count; ++i)
                    sums[i] += cascaded[i * element_count + m] * (next - unit[m]);
                unit[m] = next;
            }
            const double g = gain_for_phasors(unit);
            const bool converged = g - gain <= 1e-13 * std::max(g, 1e-300);
            gain = std::max(g, gain);
            if (converged)
                break;
        }
        return gain_for_phasors(unit);
    }

    double gain_for_weights(std::span<const double> w) const
    {
        std::vector<cplx> unit;
        phasors_for_weights(w, unit);
        return gain_for_phasors(unit);
    }
};

struct Candidate
{
    std::vector<double> weights;
    double gain = -1.0;
};

// Higher gain wins; exact ties go to the lexicographically smaller weight vector.
bool better(double gain, const std::vector<double> &w, const Candidate &best)
{
    if (gain != best.gain)
        return gain > best.gain;
    return std::lexicographical_compare(w.begin(), w.end(), best.weights.begin(), best.weights.end());
}

void offer(Candidate &best, const std::vector<double> &w, double gain)
{
    if (best.weights.empty() || better(gain, w, best))
    {
        best.weights = w;
        best.gain = gain;
    }
}

void enumerate_compositions(std::size_t parts, std::size_t total,
                            const std::function<void(const std::vector<std::size_t> &)> &visit)
{
    std::vector<std::size_t> k(parts, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t remaining) {
        if (idx + 1 == parts)
        {
            k[idx] = remaining;
            visit(k);
            return;
        }
        for (std::size_t v = 0; v <= remaining; ++v)
        {
            k[idx] = v;
            rec(idx + 1, remaining - v);
        }
    };
    rec(0, total);
}

std::vector<double> project_to_simplex(std::vector<double> u)
{
    std::vector<double> s = u;
    std::sort(s.begin(), s.end(), std::greater<>());
    double cumulative = 0.0, tau = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j)
    {
        cumulative += s[j];
        const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (s[j] - t > 0.0)
            tau = t;
    }
    for (auto &x : u)
        x = std::max(x - tau, 0.0);
    const double sum = std::accumulate(u.begin(), u.end(), 0.0);
    for (auto &x : u)
        x /= sum;
    return u;
}

// Pairwise mass transfers with a shrinking step; only strict improvements are kept.
void pattern_search(const Objective &obj, Candidate &best, double initial_step)
{
    const std::size_t n = best.weights.size();
    if (n < 2)
        return;
    std::vector<double> trial;
    for (double delta = initial_step; delta > 1e-7; delta *= 0.5)
    {
        bool improved = true;
        for (int guard = 0; improved && guard < 1000; ++guard)
        {
            improved = false;
            for (std::size_t to = 0; to < n; ++to)
                for (std::size_t from = 0; from < n; ++from)
                {
                    if (to == from || best.weights[from] <= 0.0)
                        continue;
                    trial = best.weights;
                    const double moved = std::min(delta, trial[from]);
                    trial[from] -= moved;
                    trial[to] += moved;
                    const double g = obj.gain_for_weights(trial);
                    if (g > best.gain)
                    {
                        best.weights = trial;
                        best.gain = g;
                        improved = true;
                    }
                }
        }
    }
}

Candidate projected_gradient(const Objective &obj, std::vector<double> w, std::size_t iterations)
{
    const std::size_t n = w.size();
    double f = obj.gain_for_weights(w);
    double eta = 0.1;
    std::vector<double> grad(n), probe;
    for (std::size_t it = 0; it < iterations && eta > 1e-7; ++it)
    {
        constexpr double h = 1e-6;
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            probe = w;
            probe[i] += h;
            const double up = obj.gain_for_weights(probe);
            probe[i] = std::max(w[i] - h, 0.0);
            const double down = obj.gain_for_weights(probe);
            grad[i] = (up - down) / (w[i] + h - probe[i]);
            norm += grad[i] * grad[i];
        }
        norm = std::sqrt(norm);
        if (!(norm > 0.0))
            break;
        std::vector<double> next(n);
        for (std::size_t i = 0; i < n; ++i)
            next[i] = w[i] + eta * grad[i] / norm;
        next = project_to_simplex(std::move(next));
        const double fn = obj.gain_for_weights(next);
        if (fn > f)
        {
            w = std::move(next);
            f = fn;
            eta = std::min(eta * 1.5, 1.0);
        }
        else
        {
            eta *= 0.5;
        }
    }
    return {w, f};
}

RisConfiguration configuration_for(const Objective &obj, const std::vector<double> &w)
{
    std::vector<ReflectionCoefficientVector> per_ue;
    for (const auto &v : obj.reflections)
        per_ue.push_back({v});
    return phases_of(combine_reflections(per_ue, WeightVector{w}));
}

std::vector<cplx> phasors_of(const RisConfiguration &cfg)
{
    std::vector<cplx> unit(cfg.size());
    for (std::size_t m = 0; m < unit.size(); ++m)
        unit[m] = std::polar(1.0, cfg.phases[m]);
    return unit;
}

RisConfiguration configuration_of(const std::vector<cplx> &unit)
{
    RisConfiguration cfg;
    cfg.phases.resize(unit.size());
    for (std::size_t m = 0; m < unit.size(); ++m)
        cfg.phases[m] = wrap_phase(std::arg(unit[m]));
    return cfg;
}

WeightOptimum finish(const ChannelSet &channels, const Objective &obj, const Candidate &best,
                     bool refine_phases = false)
{
    WeightOptimum out;
    out.weights.weights = best.weights;
    out.configuration = configuration_for(obj, best.weights);
    out.aggregate_gain = aggregate_gain(channels, out.configuration);
    out.weight_stage_gain = out.aggregate_gain;
    if (!refine_phases || obj.element_count == 0)
        return out;

    // Starts: the best combination, then every vertex in UE order.
    std::vector<RisConfiguration> starts{out.configuration};
    for (std::size_t i = 0; i < obj.ue_count; ++i)
    {
        std::vector<double> vertex(obj.ue_count, 0.0);
        vertex[i] = 1.0;
        starts.push_back(configuration_for(obj, vertex));
    }
    for (const auto &start : starts)
    {
        auto unit = phasors_of(start);
        obj.coordinate_ascent(unit, 200);
        const auto cfg = configuration_of(unit);
        const double g = aggregate_gain(channels, cfg);
        if (g > out.aggregate_gain)
        {
            out.aggregate_gain = g;
            out.configuration = cfg;
        }
    }
    return out;
}

} // namespace

bool WeightVector::is_valid() const
{
    if (weights.empty())
        return false;
    double sum = 0.0;
    for (double w : weights)
    {
        if (!(w >= 0.0 && w <= 1.0))
            return false;
        sum += w;
    }
    return std::abs(sum - 1.0) <= 1e-9;
}

double wrap_phase(double angle)
{
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    return r >= kTwoPi ? 0.0 : r;
}

RisConfiguration single_ue_phases(double direct_phase, std::span<const double> element_phases, double wavelength,
                                  double separation, double ris_to_bs_cosine, double ris_to_bs_phase)
{
    if (!(wavelength > 0.0))
        throw std::invalid_argument("single_ue_phases: wavelength must be positive");
    RisConfiguration cfg;
    cfg.phases.resize(element_phases.size());
    const double k = kTwoPi / wavelength;
    for (std::size_t m = 0; m < element_phases.size(); ++m)
        cfg.phases[m] = wrap_phase(direct_phase - element_phases[m] -
                                   k * separation * static_cast<double>(m) * ris_to_bs_cosine + ris_to_bs_phase);
    return cfg;
}

PerUeReflection per_ue_reflection(cplx direct, std::span<const cplx> ue_to_ris, std::span<const cplx> ris_to_bs)
{
    if (ue_to_ris.size() != ris_to_bs.size())
        throw std::invalid_argument("per_ue_reflection: h_iR and h_RA must have equal length");
    PerUeReflection out;
    out.vector.entries.resize(ue_to_ris.size());
    const double direct_phase = direct == cplx{} ? 0.0 : std::arg(direct);
    std::size_t zero = 0;
    for (std::size_t m = 0; m < ue_to_ris.size(); ++m)
    {
        const cplx b = std::conj(ris_to_bs[m]) * ue_to_ris[m];
        if (b == cplx{})
        {
            out.vector.entries[m] = cplx(1.0, 0.0);
            ++zero;
            continue;
        }
        out.vector.entries[m] = std::polar(1.0, direct_phase - std::arg(b));
    }
    out.degenerate = zero == ue_to_ris.size();
    return out;
}

ReflectionCoefficientVector combine_reflections(std::span<const ReflectionCoefficientVector> per_ue,
                                                const WeightVector &weights)
{
    if (per_ue.size() != weights.weights.size())
        throw std::invalid_argument("combine_reflections: one weight per UE required");
    if (per_ue.empty())
        throw std::invalid_argument("combine_reflections: no UEs");
    const std::size_t m_count = per_ue.front().entries.size();
    ReflectionCoefficientVector v;
    v.entries.assign(m_count, cplx{});
    for (std::size_t i = 0; i < per_ue.size(); ++i)
    {
        if (per_ue[i].entries.size() != m_count)
            throw std::invalid_argument("combine_reflections: reflection vectors differ in length");
        for (std::size_t m = 0; m < m_count; ++m)
            v.entries[m] += weights.weights[i] * per_ue[i].entries[m];
    }
    return v;
}

RisConfiguration phases_of(const ReflectionCoefficientVector &v)
{
    RisConfiguration cfg;
    cfg.phases.resize(v.entries.size());
    for (std::size_t m = 0; m < v.entries.size(); ++m)
    {
        const cplx e = v.entries[m];
        cfg.phases[m] = std::abs(e) > kCancelledTolerance ? wrap_phase(std::arg(e)) : 0.0;
    }
    return cfg;
}

double aggregate_gain(const ChannelSet &channels, const RisConfiguration &config)
{
    double total = 0.0;
    if (config.phases.empty() || channels.ris_element_count == 0)
    {
        return direct_only_gain(channels);
    }
    for (const auto &ue : channels.ues)
        total += overall_gain(ue.direct.scalar_gain, channels.ris_to_bs.element_gains, config.phases,
                              ue.ue_to_ris.element_gains);
    return total;
}

double direct_only_gain(const ChannelSet &channels)
{
    double total = 0.0;
    for (const auto &ue : channels.ues)
        total += std::norm(ue.direct.scalar_gain);
    return total;
}

double weighted_objective(const ChannelSet &channels, const WeightVector &weights)
{
    const Objective obj(channels);
    if (weights.weights.size() != obj.ue_count)
        throw std::invalid_argument("weighted_objective: one weight per UE required");
    return obj.gain_for_weights(weights.weights);
}

WeightOptimum exhaustive_weight_grid(const ChannelSet &channels, std::size_t divisions)
{
    if (channels.ues.empty())
        throw std::invalid_argument("exhaustive_weight_grid: empty UE set");
    if (divisions == 0)
        throw std::invalid_argument("exhaustive_weight_grid: divisions must be positive");
    const Objective obj(channels);
    Candidate best;
    std::vector<double> w(obj.ue_count);
    enumerate_compositions(obj.ue_count, divisions, [&](const std::vector<std::size_t> &k) {
        for (std::size_t i = 0; i < k.size(); ++i)
            w[i] = static_cast<double>(k[i]) / static_cast<double>(divisions);
        offer(best, w, obj.gain_for_weights(w));
    });
    return finish(channels, obj, best);
}

WeightOptimum optimize_weights(const ChannelSet &channels, const WeightSearch &search)
{
    if (channels.ues.empty())
        throw std::invalid_argument("optimize_weights: empty UE set");
    const Objective obj(channels);
    const std::size_t n = obj.ue_count;

    Candidate best;
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        std::fill(w.begin(), w.end(), 0.0);
        w[i] = 1.0;
        offer(best, w, obj.gain_for_weights(w));
    }
    if (n == 1 || obj.element_count == 0)
        return finish(channels, obj, best, search.refine_phases);

    if (!(search.grid_step > 0.0 && search.grid_step <= 1.0))
        throw std::invalid_argument("optimize_weights: grid_step must lie in (0, 1]");
    const auto divisions = static_cast<std::size_t>(std::llround(1.0 / search.grid_step));

    if (n <= search.exhaustive_max_ues)
    {
        enumerate_compositions(n, divisions, [&](const std::vector<std::size_t> &k) {
            for (std::size_t i = 0; i < n; ++i)
                w[i] = static_cast<double>(k[i]) / static_cast<double>(divisions);
            offer(best, w, obj.gain_for_weights(w));
        });
    }
    else
    {
        Rng rng(search.seed);
        for (std::size_t r = 0; r < search.restarts; ++r)
        {
            std::vector<double> start(n, 1.0 / static_cast<double>(n));
            if (r > 0)
            {
                double sum = 0.0;
                for (auto &x : start)
                    sum += (x = rng.exponential(1.0));
                for (auto &x : start)
                    x /= sum;
            }
            const auto local = projected_gradient(obj, std::move(start), search.iterations);
            offer(best, local.weights, local.gain);
        }
    }

    if (search.refine)
        pattern_search(obj, best, 1.0 / static_cast<double>(divisions));
    return finish(channels, obj, best, search.refine_phases);
}

RisConfiguration refine_phases(const ChannelSet &channels, const RisConfiguration &start, std::size_t max_sweeps)
{
    const Objective obj(channels);
    if (start.size() != obj.element_count)
        throw std::invalid_argument("refine_phases: configuration has " + std::to_string(start.size()) +
                                    " phases, RIS has " + std::to_string(obj.element_count) + " elements");
    auto unit = phasors_of(start);
    obj.coordinate_ascent(unit, max_sweeps);
    return configuration_of(unit);
}

PhaseSearchResult brute_force_phase_search(const ChannelSet &channels, double quantization_step)
{
    if (!(quantization_step > 0.0))
        throw std::invalid_argument("brute_force_phase_search: step must be positive");
    const Objective obj(channels);
    const std::size_t m_count = obj.element_count;
    const auto levels = static_cast<std::size_t>(std::floor(kTwoPi / quantization_step + 1e-9));
    const double space = std::pow(static_cast<double>(levels), static_cast<double>(m_count));
    if (space > 1e7)
        throw std::length_error("brute_force_phase_search: " + std::to_string(levels) + "^" +
                                std::to_string(m_count) + " phase vectors exceeds the 1e7 limit");

    std::vector<cplx> table(levels);
    for (std::size_t l = 0; l < levels; ++l)
        table[l] = std::polar(1.0, static_cast<double>(l) * quantization_step);

    std::vector<std::size_t> idx(m_count, 0);
    std::vector<cplx> unit(m_count, table[0]);
    PhaseSearchResult best;
    best.aggregate_gain = -1.0;
    std::vector<std::size_t> best_idx(m_count, 0);
    while (true)
    {
        const double g = obj.gain_for_phasors(unit);
        if (g > best.aggregate_gain)
        {
            best.aggregate_gain = g;
            best_idx = idx;
        }
        std::size_t pos = 0;
        while (pos < m_count && ++idx[pos] == levels)
        {
            idx[pos] = 0;
            unit[pos] = table[0];
            ++pos;
        }
        if (pos == m_count)
            break;
        unit[pos] = table[idx[pos]];
    }
    best.configuration.phases.resize(m_count);
    for (std::size_t m = 0; m < m_count; ++m)
        best.configuration.phases[m] = static_cast<double>(best_idx[m]) * quantization_step;
    return best;
}

void write_optimizer_csv(const std::filesystem::path &path, std::span<const OptimizerReport> reports)
{
    CsvWriter csv(path, {"ue_count", "ris_elements", "weights", "aggregate_gain_db"});
    for (const auto &r : reports)
    {
        std::string w;
        for (std::size_t i = 0; i < r.weights.weights.size(); ++i)
        {
            if (i)
                w += ';';
            w += format_number(r.weights.weights[i]);
        }
        csv.row({std::to_string(r.ue_count), std::to_string(r.ris_elements), w,
                 format_number(10.0 * std::log10(r.aggregate_gain))});
    }
    csv.close();
}

} // namespace risran
