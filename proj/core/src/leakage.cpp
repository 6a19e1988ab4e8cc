// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/leakage.hpp"

#include "brhbc/constants.hpp"
#include "brhbc/dipole.hpp"

#include <cmath>
#include <stdexcept>

namespace brhbc {

namespace k = constants;

LeakageProfile offbody_profile(const BodyChannel& channel, double frequency_hz,
                               std::span<const double> distances_m, double v_in_volts)
{
    if (distances_m.empty())
        throw std::invalid_argument("offbody_profile: needs at least one distance");
    for (std::size_t i = 0; i < distances_m.size(); ++i) {
        if (!(distances_m[i] > 0.0))
            throw std::invalid_argument("offbody_profile: distances must be > 0");
        if (i > 0 && !(distances_m[i] > distances_m[i - 1]))
            throw std::invalid_argument("offbody_profile: distances must be strictly increasing");
    }
    if (!(v_in_volts > 0.0))
        throw std::invalid_argument("offbody_profile: drive amplitude must be > 0");

    const LineSolution sol = channel.solve(frequency_hz, true);
    const double moment_a_m = std::abs(sol.axial_current_moment_a_m()) * v_in_volts;

    LeakageProfile profile;
    profile.frequency_hz = frequency_hz;
    profile.v_on_volts = std::abs(sol.gain) * v_in_volts;
    profile.distances_m.assign(distances_m.begin(), distances_m.end());
    profile.v_off_volts.reserve(distances_m.size());
    profile.ratio.reserve(distances_m.size());

    // The off-body receiver is the same coupler pair working as a small
    // capacitive dipole: open-circuit voltage E_theta * plate separation
    // behind its antenna capacitance, loaded by the same termination as the
    // on-body receiver. Both legs of the ratio then measure a loaded device.
    const DeviceGeometry& rx = channel.rx_device;
    const double omega = 2.0 * k::pi * frequency_hz;
    const double c_sig_self = 8.0 * k::eps0_f_per_m * rx.signal_plate_radius_m;
    const double c_gnd_self =
        8.0 * k::eps0_f_per_m * std::sqrt(rx.ground_plate_area_m2 / k::pi);
    const double c_mutual = k::eps0_f_per_m * k::pi * rx.signal_plate_radius_m *
                            rx.signal_plate_radius_m / rx.plate_separation_m;
    const double c_antenna = c_sig_self * c_gnd_self / (c_sig_self + c_gnd_self) + c_mutual;
    const std::complex<double> y_antenna(0.0, omega * c_antenna);
    const std::complex<double> y_term = channel.termination.admittance_s(frequency_hz);
    const double pickup = std::abs(y_antenna / (y_antenna + y_term));

    // Unit current with the moment folded into the length keeps fields_at's
    // I0*l product equal to the fitted radiating moment.
    const DipoleSource radiator{1.0, moment_a_m, frequency_hz};
    const Medium air = Medium::free_space();
    for (const double d : distances_m) {
        const EmField field = fields_at(radiator, air, {d, k::pi / 2.0, 0.0});
        const double v_off =
            std::abs(field.e_theta) * rx.plate_separation_m * pickup;
        profile.v_off_volts.push_back(v_off);
        profile.ratio.push_back(v_off / profile.v_on_volts);
    }
    return profile;
}

} // namespace brhbc
