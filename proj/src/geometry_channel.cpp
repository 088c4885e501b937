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

#include "risran/geometry_channel.hpp"
#include "risran/csv.hpp"
#include "risran/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risran
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a)
{
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    return r >= kTwoPi ? 0.0 : r;
}

} // namespace

std::uint64_t realization_seed(std::uint64_t seed, std::size_t r)
{
    return derive_seed(seed, {0x5245414CULL, static_cast<std::uint64_t>(r)});
}

double distance(const Point3 &a, const Point3 &b)
{
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double direction_cosine(const Point3 &from, const Point3 &to)
{
    const double d = distance(from, to);
    if (!(d > 0.0))
        throw std::invalid_argument("direction_cosine: coincident points");
    return (to.x - from.x) / d;
}

std::string_view to_string(LinkKind kind)
{
    switch (kind)
    {
    case LinkKind::UeToBs:
        return "UE_to_BS";
    case LinkKind::UeToRis:
        return "UE_to_RIS";
    case LinkKind::RisToBs:
        return "RIS_to_BS";
    }
    return "?";
}

void NodeGeometry::validate() const
{
    if (!(carrier_frequency > 0.0))
        throw std::invalid_argument("NodeGeometry: carrier_frequency must be positive");
    if (element_separation < 0.0)
        throw std::invalid_argument("NodeGeometry: element_separation must be positive");
    if (!(distance(bs_position, ris_reference_position) > 0.0))
        throw std::invalid_argument("NodeGeometry: BS and RIS reference coincide");
    for (std::size_t i = 0; i < ue_positions.size(); ++i)
    {
        const auto &ue = ue_positions[i];
        if (!(distance(ue, bs_position) > 0.0) || !(distance(ue, ris_reference_position) > 0.0))
            throw std::invalid_argument("NodeGeometry: UE " + std::to_string(i) + " coincides with BS or RIS");
        for (std::size_t j = i + 1; j < ue_positions.size(); ++j)
            if (!(distance(ue, ue_positions[j]) > 0.0))
                throw std::invalid_argument("NodeGeometry: UEs " + std::to_string(i) + " and " + std::to_string(j) +
                                            " coincide");
    }
}

double PathLossModel::loss_db(double d, bool los) const
{
    if (!(d > 0.0))
        throw std::invalid_argument("PathLossModel: distance must be positive");
    const double lambda = kSpeedOfLight / carrier_frequency;
    const double fspl_ref = 20.0 * std::log10(4.0 * std::numbers::pi * reference_distance / lambda);
    const double n = los ? los_exponent : nlos_exponent;
    return fspl_ref + 10.0 * n * std::log10(d / reference_distance);
}

double PathLossModel::power_gain(double d, bool los) const
{
    return std::pow(10.0, -loss_db(d, los) / 10.0);
}

std::vector<MultipathComponent> generate_mpcs(LinkKind kind, double d, bool los, std::size_t mpc_count,
                                              std::uint64_t seed, const MultipathSettings &settings)
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::invalid_argument("generate_mpcs: distance must be positive");
    if (mpc_count == 0)
        throw std::invalid_argument("generate_mpcs: mpc_count must be at least 1");

    const double power = settings.path_loss.power_gain(d, los);
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(kind)}));

    std::vector<MultipathComponent> out;
    out.reserve(mpc_count);

    std::size_t scattered = mpc_count;
    double scattered_power = power;
    if (los)
    {
        const double lambda = kSpeedOfLight / settings.path_loss.carrier_frequency;
        const double k = std::pow(10.0, settings.rician_k_db / 10.0);
        const double dominant_power = mpc_count == 1 ? power : power * k / (k + 1.0);
        out.push_back({std::sqrt(dominant_power), wrap_angle(-kTwoPi * d / lambda)});
        scattered = mpc_count - 1;
        scattered_power = power - dominant_power;
    }

    if (scattered > 0)
    {
        const double sigma = std::sqrt(scattered_power / static_cast<double>(scattered) / 2.0);
        for (std::size_t j = 0; j < scattered; ++j)
        {
            const cplx z(sigma * rng.normal(), sigma * rng.normal());
            out.push_back({std::abs(z), wrap_angle(std::arg(z))});
        }
    }
    return out;
}

cplx combine_mpcs(std::span<const MultipathComponent> mpcs)
{
    if (mpcs.empty())
        throw std::invalid_argument("combine_mpcs: empty MPC list");
    cplx sum{};
    for (const auto &c : mpcs)
        sum += std::polar(c.magnitude, c.phase);
    return sum;
}

cplx average_realizations(const LinkSpec &link, std::size_t realization_count, std::uint64_t seed,
                          const MultipathSettings &settings)
{
    if (realization_count == 0)
        throw std::invalid_argument("average_realizations: realization_count must be at least 1");
    cplx sum{};
    double magnitude_sum = 0.0;
    for (std::size_t r = 0; r < realization_count; ++r)
    {
        const auto mpcs =
            generate_mpcs(link.kind, link.distance, link.los, link.mpc_count, realization_seed(seed, r), settings);
        const cplx h = combine_mpcs(mpcs);
        sum += h;
        magnitude_sum += std::abs(h);
    }
    const double n = static_cast<double>(realization_count);
    const cplx mean = sum / n;
    if (settings.averaging == AveragingMode::Magnitude)
        return std::polar(magnitude_sum / n, mean == cplx{} ? 0.0 : std::arg(mean));
    return mean;
}

SteeringVector steering_vector(std::size_t element_count, double separation, double wavelength,
                               double cosine)
{
    if (element_count == 0)
        throw std::invalid_argument("steering_vector: element_count must be at least 1");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("steering_vector: wavelength must be positive");
    SteeringVector sv;
    sv.direction_cosine = cosine;
    sv.entries.resize(element_count);
    const double step = kTwoPi / wavelength * separation * cosine;
    sv.entries[0] = cplx(1.0, 0.0);
    for (std::size_t m = 1; m < element_count; ++m)
        sv.entries[m] = std::polar(1.0, -step * static_cast<double>(m));
    return sv;
}

std::vector<cplx> apply_steering(cplx averaged_gain, const SteeringVector &steering)
{
    std::vector<cplx> out(steering.entries.size());
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] = averaged_gain * steering.entries[m];
    return out;
}

void ChannelSet::validate() const
{
    const auto check = [&](const LinkChannel &l, const char *what) {
        if (l.element_gains.size() != ris_element_count)
            throw std::invalid_argument(std::string("ChannelSet: ") + what + " has " +
                                        std::to_string(l.element_gains.size()) + " entries, expected " +
                                        std::to_string(ris_element_count));
    };
    check(ris_to_bs, "RIS_to_BS");
    for (const auto &ue : ues)
        check(ue.ue_to_ris, "UE_to_RIS");
}

ChannelSet build_channels(const NodeGeometry &geometry, std::span<const std::uint32_t> ue_ids, std::uint64_t seed,
                          const MultipathSettings &settings)
{
    geometry.validate();
    if (ue_ids.size() != geometry.ue_positions.size())
        throw std::invalid_argument("build_channels: one id per UE position required");

    const std::size_t m_count = geometry.ris_element_count;
    const double lambda = geometry.wavelength();
    const double sep = geometry.separation();
    const std::size_t realizations = settings.realization_count;

    ChannelSet set;
    set.ris_element_count = m_count;
    set.ris_to_bs.endpoint_kind = LinkKind::RisToBs;
    set.ris_to_bs.los = true;
    if (m_count > 0)
    {
        const LinkSpec spec{LinkKind::RisToBs, distance(geometry.ris_reference_position, geometry.bs_position), true,
                            settings.mpc_count(true)};
        const cplx avg = average_realizations(
            spec, realizations, derive_seed(seed, {static_cast<std::uint64_t>(LinkKind::RisToBs)}), settings);
        const double cos_ra = direction_cosine(geometry.ris_reference_position, geometry.bs_position);
        set.ris_to_bs.element_gains = apply_steering(avg, steering_vector(m_count, sep, lambda, cos_ra));
    }

    for (std::size_t i = 0; i < ue_ids.size(); ++i)
    {
        const Point3 &pos = geometry.ue_positions[i];
        UeChannel ue;
        ue.ue_id = ue_ids[i];
        ue.ue_to_bs_distance = distance(pos, geometry.bs_position);
        ue.ue_to_ris_distance = distance(pos, geometry.ris_reference_position);

        ue.direct.endpoint_kind = LinkKind::UeToBs;
        ue.direct.los = false;
        const LinkSpec direct{LinkKind::UeToBs, ue.ue_to_bs_distance, false, settings.mpc_count(false)};
        ue.direct.scalar_gain = average_realizations(
            direct, realizations, derive_seed(seed, {static_cast<std::uint64_t>(LinkKind::UeToBs), ue.ue_id}),
            settings);

        ue.ue_to_ris.endpoint_kind = LinkKind::UeToRis;
        ue.ue_to_ris.los = true;
        if (m_count > 0)
        {
            const LinkSpec spec{LinkKind::UeToRis, ue.ue_to_ris_distance, true, settings.mpc_count(true)};
            const cplx avg = average_realizations(
                spec, realizations, derive_seed(seed, {static_cast<std::uint64_t>(LinkKind::UeToRis), ue.ue_id}),
                settings);
            const double cos_ir = direction_cosine(geometry.ris_reference_position, pos);
            ue.ue_to_ris.element_gains = apply_steering(avg, steering_vector(m_count, sep, lambda, cos_ir));
        }
        set.ues.push_back(std::move(ue));
    }
    return set;
}

double overall_gain(cplx direct, std::span<const cplx> ris_to_bs, std::span<const double> phases,
                    std::span<const cplx> ue_to_ris)
{
    if (ris_to_bs.size() != phases.size() || ue_to_ris.size() != phases.size())
        throw std::invalid_argument("overall_gain: h_RA, theta and h_iR must have equal length");
    cplx total = direct;
    for (std::size_t m = 0; m < phases.size(); ++m)
        total += std::conj(ris_to_bs[m]) * std::polar(1.0, phases[m]) * ue_to_ris[m];
    return std::norm(total);
}

void write_channel_csv(const std::filesystem::path &path, const ChannelSet &channels)
{
    CsvWriter csv(path, {"link_kind", "element_index", "real", "imag", "ue_id"});
    for (const auto &ue : channels.ues)
    {
        const cplx h = ue.direct.scalar_gain;
        csv.row({std::string(to_string(LinkKind::UeToBs)), "0", format_number(h.real()), format_number(h.imag()),
                 std::to_string(ue.ue_id)});
    }
    for (const auto &ue : channels.ues)
        for (std::size_t m = 0; m < ue.ue_to_ris.element_gains.size(); ++m)
        {
            const cplx h = ue.ue_to_ris.element_gains[m];
            csv.row({std::string(to_string(LinkKind::UeToRis)), std::to_string(m), format_number(h.real()),
                     format_number(h.imag()), std::to_string(ue.ue_id)});
        }
    for (std::size_t m = 0; m < channels.ris_to_bs.element_gains.size(); ++m)
    {
        const cplx h = channels.ris_to_bs.element_gains[m];
        csv.row({std::string(to_string(LinkKind::RisToBs)), std::to_string(m), format_number(h.real()),
                 format_number(h.imag()), "0"});
    }
    csv.close();
}

} // namespace risran
