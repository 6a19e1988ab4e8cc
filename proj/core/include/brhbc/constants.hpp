// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_CONSTANTS_HPP
#define BRHBC_CONSTANTS_HPP

namespace brhbc::constants {

inline constexpr double speed_of_light_m_per_s = 299792458.0;
inline constexpr double mu0_h_per_m = 1.25663706212e-6;
inline constexpr double eps0_f_per_m = 8.8541878128e-12;
inline constexpr double eta0_ohm = 376.730313668;
inline constexpr double boltzmann_j_per_k = 1.380649e-23;
inline constexpr double pi = 3.14159265358979323846;

// Bulk conductivity of annealed copper, used by the conducting-cylinder
// reference material.
inline constexpr double copper_conductivity_s_per_m = 5.8e7;

} // namespace brhbc::constants

#endif
