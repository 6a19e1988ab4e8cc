// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_LEAKAGE_HPP
#define BRHBC_LEAKAGE_HPP

#include "brhbc/body_line.hpp"

#include <span>
#include <vector>

namespace brhbc {

/// Off-body received signal versus line-of-sight distance, against the
/// on-body reference at the channel's own length.
struct LeakageProfile {
    double frequency_hz = 0.0;
    double v_on_volts = 0.0;
    std::vector<double> distances_m;
    std::vector<double> v_off_volts;
    std::vector<double> ratio; // v_off / v_on, elementwise
};

/// Models the driven body as a short-dipole radiator whose moment is the
/// axial current integral of the line solution; the off-body receiver picks
/// up E_theta across its plate separation at broadside. The ratio is
/// invariant under drive-amplitude scaling by construction.
LeakageProfile offbody_profile(const BodyChannel& channel, double frequency_hz,
                               std::span<const double> distances_m, double v_in_volts = 1.0);

} // namespace brhbc

#endif
