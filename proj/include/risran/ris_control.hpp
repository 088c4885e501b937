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

#include "risran/geometry_channel.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace risran
{

// Per-element phase shifts theta_m in [0, 2pi). Theta = diag(e^{j theta_m}) is
// applied element-wise and never stored as a matrix.
struct RisConfiguration
{
    std::vector<double> phases;

    std::size_t size() const { return phases.size(); }
    static RisConfiguration zeros(std::size_t element_count) { return {std::vector<double>(element_count, 0.0)}; }

    bool operator==(const RisConfiguration &) const = default;
};

struct ReflectionCoefficientVector
{
    std::vector<cplx> entries;
};

struct WeightVector
{
    std::vector<double> weights;

    // Each weight in [0, 1] and the sum equal to 1 within 1e-9.
    bool is_valid() const;
};

// Maps an angle into [0, 2pi).
double wrap_phase(double angle);

// Closed-form single-UE alignment for a steered RIS-to-BS link
// h_RA[m] = |a| e^{j ris_to_bs_phase} e^{-j 2pi/lambda d m cos_RA}:
//   theta_m = angle(h_iA) - omega_m - 2pi/lambda d m cos_RA + ris_to_bs_phase
// where omega_m = angle(h_iR[m]). Every cascaded term then arrives with the
// phase of the direct path.
RisConfiguration single_ue_phases(double direct_phase, std::span<const double> element_phases, double wavelength,
                                  double separation, double ris_to_bs_cosine, double ris_to_bs_phase = 0.0);

struct PerUeReflection
{
    ReflectionCoefficientVector vector;
    bool degenerate = false; // every cascaded element was zero; vector is all ones
};

// Unit-modulus v_i aligning each cascaded term conj(h_RA[m]) v_m h_iR[m] with h_iA.
// Elements with a zero cascaded channel get v_m = 1.
PerUeReflection per_ue_reflection(cplx direct, std::span<const cplx> ue_to_ris, std::span<const cplx> ris_to_bs);

// v = sum_i w_i v_i
ReflectionCoefficientVector combine_reflections(std::span<const ReflectionCoefficientVector> per_ue,
                                                const WeightVector &weights);

// theta_m = angle(v_m), with angle(0) taken as 0.
RisConfiguration phases_of(const ReflectionCoefficientVector &v);

// sum_i G_i under the given configuration. An empty configuration means no RIS.
double aggregate_gain(const ChannelSet &channels, const RisConfiguration &config);

// sum_i |h_iA|^2
double direct_only_gain(const ChannelSet &channels);

struct WeightSearch
{
    double grid_step = 0.01;            // simplex grid resolution for small UE sets
    std::size_t exhaustive_max_ues = 3; // above this, projected gradient ascent
    bool refine = true;                 // pattern search around the best point
    bool refine_phases = true;          // element-wise coordinate ascent after the weight search
    std::size_t restarts = 16;
    std::size_t iterations = 200;
    std::uint64_t seed = 0x0A11CE;
};

struct WeightOptimum
{
    WeightVector weights;
    RisConfiguration configuration; // final phases
    double aggregate_gain = 0.0;     // under `configuration`
    double weight_stage_gain = 0.0;  // under angle(sum w_i v_i), before phase refinement
};

// Searches the weight simplex for the combination v = sum w_i v_i whose
// phases maximize the aggregate channel power gain. Simplex vertices are
// always evaluated, so the result is never worse than aligning any single UE.
// With refine_phases, the best combination and every vertex are then
// polished by element-wise coordinate ascent on the true objective; each
// update sets one phase to its exact optimum given the others, so the gain
// never decreases.
WeightOptimum optimize_weights(const ChannelSet &channels, const WeightSearch &search = {});

// Coordinate ascent over element phases from `start` until a sweep improves
// the aggregate gain by less than a relative 1e-13.
RisConfiguration refine_phases(const ChannelSet &channels, const RisConfiguration &start,
                               std::size_t max_sweeps = 200);

// Aggregate gain for a given weight vector (the objective optimize_weights maximizes).
double weighted_objective(const ChannelSet &channels, const WeightVector &weights);

// Exhaustive grid over every weight vector with entries k / n, k integer.
// Verification helper; cost grows as C(n + |I| - 1, |I| - 1).
WeightOptimum exhaustive_weight_grid(const ChannelSet &channels, std::size_t divisions);

struct PhaseSearchResult
{
    RisConfiguration configuration;
    double aggregate_gain = 0.0;
};

// Enumerates all phase vectors on the grid {0, step, 2 step, ...}^|M|.
// Throws std::length_error if the grid has more than 1e7 points.
PhaseSearchResult brute_force_phase_search(const ChannelSet &channels, double quantization_step);

struct OptimizerReport
{
    std::size_t ue_count = 0;
    std::size_t ris_elements = 0;
    WeightVector weights;
    double aggregate_gain = 0.0;
};

// Columns: ue_count,ris_elements,weights,aggregate_gain_db (weights ';'-separated)
void write_optimizer_csv(const std::filesystem::path &path, std::span<const OptimizerReport> reports);

} // namespace risran
