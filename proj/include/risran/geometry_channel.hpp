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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace risran
{

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Point3 &) const = default;
};

double distance(const Point3 &a, const Point3 &b);

// Cosine of the angle between the array axis (+x) and the unit vector from `from` towards `to`.
double direction_cosine(const Point3 &from, const Point3 &to);

enum class LinkKind : std::uint8_t
{
    UeToBs = 0,
    UeToRis = 1,
    RisToBs = 2,
};

std::string_view to_string(LinkKind kind);

// Positions of the base station, the RIS reference element (m = 1) and the UEs.
// `element_separation` is the inter-element spacing of the RIS, not a link distance.
struct NodeGeometry
{
    Point3 bs_position;
    Point3 ris_reference_position;
    std::vector<Point3> ue_positions;
    double carrier_frequency = 5.9e9; // Hz
    double element_separation = 0.0; // m; 0 selects lambda/2
    std::size_t ris_element_count = 0;

    double wavelength() const { return kSpeedOfLight / carrier_frequency; }
    double separation() const { return element_separation > 0.0 ? element_separation : wavelength() / 2.0; }

    // Throws std::invalid_argument on coincident nodes or non-positive parameters.
    void validate() const;
};

struct MultipathComponent
{
    double magnitude = 0.0; // linear amplitude
    double phase = 0.0;     // rad, [0, 2pi)

    bool operator==(const MultipathComponent &) const = default;
};

// Log-distance path loss, PL(d) = FSPL(d0) + 10 n log10(d / d0).
struct PathLossModel
{
    double carrier_frequency = 5.9e9;
    double reference_distance = 1.0;
    double los_exponent = 2.0;
    double nlos_exponent = 3.2;

    double loss_db(double distance, bool los) const;
    double power_gain(double distance, bool los) const; // linear, 10^(-PL/10)
};

enum class AveragingMode : std::uint8_t
{
    Complex,   // arithmetic mean of the complex per-realization gains
    Magnitude, // mean magnitude, carrying the phase of the complex mean
};

struct MultipathSettings
{
    PathLossModel path_loss{};
    double rician_k_db = 10.0;
    std::size_t los_mpc_count = 8;  // 1 dominant + 7 scattered
    std::size_t nlos_mpc_count = 8;
    std::size_t realization_count = 100;
    AveragingMode averaging = AveragingMode::Complex;

    std::size_t mpc_count(bool los) const { return los ? los_mpc_count : nlos_mpc_count; }
};

// Seeded statistical multipath draw for one link. The expected total power
// sum(|h'|^2) equals the path-loss value. LoS links carry a dominant component
// (geometric phase) holding K/(K+1) of the power; every scattered component is
// complex Gaussian with a uniform phase.
std::vector<MultipathComponent> generate_mpcs(LinkKind kind, double distance, bool los, std::size_t mpc_count,
                                              std::uint64_t seed, const MultipathSettings &settings = {});

// Coherent MPC sum, h'' = sum_j |h'_j| e^{j phi'_j}.
cplx combine_mpcs(std::span<const MultipathComponent> mpcs);

struct LinkSpec
{
    LinkKind kind = LinkKind::UeToBs;
    double distance = 0.0;
    bool los = false;
    std::size_t mpc_count = 8;
};

// Seed of realization `r` inside average_realizations.
std::uint64_t realization_seed(std::uint64_t seed, std::size_t r);

// Mean of `realization_count` independent combine_mpcs draws.
cplx average_realizations(const LinkSpec &link, std::size_t realization_count, std::uint64_t seed,
                          const MultipathSettings &settings = {});

struct SteeringVector
{
    std::vector<cplx> entries;
    double direction_cosine = 0.0;
};

// entries[m] = exp(-j 2pi/lambda * m * separation * cosine), m = 0 .. count-1
SteeringVector steering_vector(std::size_t element_count, double separation, double wavelength,
                               double direction_cosine);

std::vector<cplx> apply_steering(cplx averaged_gain, const SteeringVector &steering);

struct LinkChannel
{
    LinkKind endpoint_kind = LinkKind::UeToBs;
    cplx scalar_gain{};              // UeToBs only
    std::vector<cplx> element_gains; // RIS-touching links, length |M|
    bool los = false;
};

// Direct and UE-to-RIS channels of one UE.
struct UeChannel
{
    std::uint32_t ue_id = 0;
    LinkChannel direct;
    LinkChannel ue_to_ris;
    double ue_to_bs_distance = 0.0;
    double ue_to_ris_distance = 0.0;
};

// Channels of every UE plus the shared RIS-to-BS link.
struct ChannelSet
{
    std::size_t ris_element_count = 0;
    LinkChannel ris_to_bs;
    std::vector<UeChannel> ues;

    // Throws std::invalid_argument when link shapes disagree with ris_element_count.
    void validate() const;
};

// Runs the five-step flow for every UE in the geometry: MPC draw, coherent
// combination, averaging over realizations, and steering of the RIS-touching
// links. `ue_ids` tags each UE's random streams so that one UE sees the same
// channel whatever other UEs are present.
ChannelSet build_channels(const NodeGeometry &geometry, std::span<const std::uint32_t> ue_ids, std::uint64_t seed,
                          const MultipathSettings &settings = {});

// G_i = |h_iA + h_RA^H Theta h_iR|^2 with Theta = diag(e^{j theta_m}).
double overall_gain(cplx direct, std::span<const cplx> ris_to_bs, std::span<const double> phases,
                    std::span<const cplx> ue_to_ris);

// CSV dump: link_kind,element_index,real,imag,ue_id
void write_channel_csv(const std::filesystem::path &path, const ChannelSet &channels);

} // namespace risran
