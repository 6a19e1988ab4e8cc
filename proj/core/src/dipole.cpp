// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/dipole.hpp"

#include "brhbc/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace brhbc {

using std::complex;
namespace k = constants;

double Medium::wave_impedance_ohm() const
{
    return k::eta0_ohm / std::sqrt(eps_r);
}

double Medium::wavelength_m(double frequency_hz) const
{
    return k::speed_of_light_m_per_s / (frequency_hz * std::sqrt(eps_r));
}

double Medium::wavenumber_rad_per_m(double frequency_hz) const
{
    return 2.0 * k::pi / wavelength_m(frequency_hz);
}

double Medium::phase_velocity_m_per_s() const
{
    return k::speed_of_light_m_per_s / std::sqrt(eps_r);
}

bool DipoleSource::electrically_short(const Medium& medium) const
{
    return length_m <= medium.wavelength_m(frequency_hz) / 10.0;
}

EmField fields_at(const DipoleSource& source, const Medium& medium, const FieldPoint& point)
{
    if (!(point.r_m > 0.0))
        throw std::invalid_argument("fields_at: observation radius must be > 0 (dipole singularity)");
    if (!(source.frequency_hz > 0.0))
        throw std::invalid_argument("fields_at: frequency must be > 0");
    if (!(source.length_m > 0.0))
        throw std::invalid_argument("fields_at: dipole length must be > 0");

    const double eta = medium.wave_impedance_ohm();
    const double beta = medium.wavenumber_rad_per_m(source.frequency_hz);
    const double r = point.r_m;
    const double moment = source.current_a * source.length_m;
    const double cos_t = std::cos(point.theta_rad);
    const double sin_t = std::sin(point.theta_rad);

    const complex<double> j(0.0, 1.0);
    const complex<double> phase = std::exp(-j * beta * r);

    const complex<double> radial_terms = 1.0 / (r * r) + 1.0 / (j * beta * r * r * r);
    const complex<double> theta_terms =
        1.0 / r + 1.0 / (j * beta * r * r) - 1.0 / (beta * beta * r * r * r);
    const complex<double> phi_terms = 1.0 / r + 1.0 / (j * beta * r * r);

    EmField field;
    field.e_r = eta * moment * cos_t / (2.0 * k::pi) * radial_terms * phase;
    field.e_theta = j * eta * beta * moment * sin_t / (4.0 * k::pi) * theta_terms * phase;
    field.h_phi = j * beta * moment * sin_t / (4.0 * k::pi) * phi_terms * phase;
    // e_phi, h_r, h_theta stay exactly zero.
    return field;
}

FieldRegion region_classify(const Medium& medium, double r_m, double frequency_hz,
                            const RegionThresholds& thresholds)
{
    if (!(r_m > 0.0))
        throw std::invalid_argument("region_classify: r must be > 0");
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("region_classify: frequency must be > 0");

    const double beta_r = medium.wavenumber_rad_per_m(frequency_hz) * r_m;
    if (beta_r < thresholds.near_max_beta_r)
        return FieldRegion::near;
    if (beta_r > thresholds.far_min_beta_r)
        return FieldRegion::far;
    return FieldRegion::intermediate;
}

double radiation_zone_radius_m(const Medium& medium, double frequency_hz)
{
    return 1.0 / medium.wavenumber_rad_per_m(frequency_hz);
}

double radial_poynting_w_per_m2(const EmField& field)
{
    return 0.5 * (field.e_theta * std::conj(field.h_phi)).real();
}

} // namespace brhbc
