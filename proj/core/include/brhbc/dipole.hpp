// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_DIPOLE_HPP
#define BRHBC_DIPOLE_HPP

#include <complex>

namespace brhbc {

/// Lossless, non-magnetic propagation medium characterized by its relative
/// permittivity. Wavelength, wavenumber and wave impedance follow from it.
struct Medium {
    double eps_r = 1.0;

    static Medium free_space() { return {1.0}; }

    double wave_impedance_ohm() const;
    double wavelength_m(double frequency_hz) const;
    double wavenumber_rad_per_m(double frequency_hz) const;
    double phase_velocity_m_per_s() const;
};

/// Electrically short dipole excitation: peak current, element length and
/// operating frequency.
struct DipoleSource {
    double current_a = 0.0; // peak
    double length_m = 0.0;
    double frequency_hz = 0.0;

    /// The field expressions assume l << lambda; callers should warn when
    /// this returns false (l > lambda/10).
    bool electrically_short(const Medium& medium) const;
};

/// Spherical observation point relative to the dipole at the origin, dipole
/// axis along theta = 0.
struct FieldPoint {
    double r_m = 0.0;
    double theta_rad = 0.0;
    double phi_rad = 0.0;
};

/// Complex field phasors. E_phi, H_r and H_theta are identically zero for a
/// Hertzian dipole and are stored as exact zeros.
struct EmField {
    std::complex<double> e_r;
    std::complex<double> e_theta;
    std::complex<double> e_phi;
    std::complex<double> h_r;
    std::complex<double> h_theta;
    std::complex<double> h_phi;
};

/// Full Hertzian-dipole field evaluation, all radial orders retained
/// (1/r, 1/r^2, 1/r^3 for E; 1/r, 1/r^2 for H) with the e^{-j beta r}
/// propagation factor. Throws std::invalid_argument for r <= 0.
EmField fields_at(const DipoleSource& source, const Medium& medium, const FieldPoint& point);

enum class FieldRegion { near, intermediate, far };

/// Classification thresholds on beta*r. The near/far inequalities are only
/// asymptotic, so the cutoffs are configurable; the defaults put a decade of
/// "intermediate" between them.
struct RegionThresholds {
    double near_max_beta_r = 0.1;
    double far_min_beta_r = 10.0;
};

FieldRegion region_classify(const Medium& medium, double r_m, double frequency_hz,
                            const RegionThresholds& thresholds = {});

/// Reactive-to-radiating crossover radius r_d = lambda/(2 pi) = 1/beta.
double radiation_zone_radius_m(const Medium& medium, double frequency_hz);

/// Time-average radial power flux S_r = Re(E_theta * conj(H_phi)) / 2.
double radial_poynting_w_per_m2(const EmField& field);

} // namespace brhbc

#endif
