// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_BODY_LINE_HPP
#define BRHBC_BODY_LINE_HPP

#include "brhbc/dielectric.hpp"
#include "brhbc/twoport.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace brhbc {

/// One piece of the on-body signal path, modeled as a two-layer (outer
/// shell + interior) cylinder running parallel to the earth ground plane.
struct BodySegment {
    double length_m = 0.0;
    double outer_radius_m = 0.0;
    double skin_thickness_m = 0.0;
    double height_above_ground_m = 0.0; // body surface to ground plane
    std::string tissue_outer = "skin_dry";
    std::string tissue_inner = "muscle";

    void validate() const;
    /// Height of the cylinder axis over the ground plane.
    double axis_height_m() const { return height_above_ground_m + outer_radius_m; }
};

/// Distributed line parameters of one segment at one frequency.
struct PerUnitLengthParams {
    double r_ohm_per_m = 0.0;
    double l_h_per_m = 0.0;
    double g_s_per_m = 0.0;
    double c_f_per_m = 0.0;

    double phase_velocity_m_per_s() const;
    std::complex<double> series_impedance_per_m(double frequency_hz) const;
    std::complex<double> shunt_admittance_per_m(double frequency_hz) const;
    std::complex<double> propagation_constant_per_m(double frequency_hz) const;
    std::complex<double> characteristic_impedance_ohm(double frequency_hz) const;
};

/// Wire-over-ground-plane line constants for a segment:
///   L' = mu0/(2 pi) * acosh(h/a),  C'_air = 2 pi eps0 / acosh(h/a)
/// with the air gap as the external dielectric. The series resistance uses
/// the two-layer DC cross-section in parallel, blended smoothly into the
/// skin-depth limited value once delta shrinks below the conductor size.
/// The shunt branch is the air capacitance in series with the lossy outer
/// shell, which yields both C' and the effective loss tangent behind G'.
PerUnitLengthParams pul_params(const BodySegment& segment, double frequency_hz,
                               const TissueLibrary& tissues);

/// Exact lossy-line chain matrix of a length dl:
///   A = D = cosh(gamma dl), B = Z0 sinh(gamma dl), C = sinh(gamma dl)/Z0.
TwoPort segment_twoport(const PerUnitLengthParams& pul, double dl_m, double frequency_hz);

/// Receiver load: R_L parallel C_L, either element optional.
struct TerminationNetwork {
    std::optional<double> r_l_ohm;
    std::optional<double> c_l_f;

    void validate() const;
    std::complex<double> admittance_s(double frequency_hz) const;
    double conductance_s() const { return r_l_ohm ? 1.0 / *r_l_ohm : 0.0; }
};

/// Coupler geometry of a wearable device: a signal disc resting on the skin
/// and a floating ground plate behind it.
struct DeviceGeometry {
    double signal_plate_radius_m = 0.025;
    double plate_separation_m = 0.03;
    double ground_plate_area_m2 = 1.9635e-3; // 2.5 cm disc
    double ground_plate_thickness_m = 0.005;
    double ground_distance_m = 1.0; // floating ground plate to earth ground
    double skin_gap_m = 1e-3;       // coupler-to-skin dielectric gap

    void validate() const;
    /// Signal plate to body: parallel plate over the contact area.
    double coupling_capacitance_f() const;
};

/// Return-path capacitance of a floating device ground: disc self
/// capacitance 8 eps0 a_eq as the floor plus the parallel-plate term to the
/// earth plane. Monotonically non-increasing in ground_distance.
double return_path_capacitance_f(const DeviceGeometry& device, double ground_distance_m);

/// Parasitic body-to-earth capacitance and how it loads the line. The
/// distributed mode spreads C_B as equal shunts along the segments; the
/// lumped mode places one shunt at the feed end for EQS comparison studies.
struct BodyGroundCoupling {
    double c_b_f = 150e-12; // uncalibrated default; fit via measurement-calib
    bool distributed = true;

    void validate() const;
};

struct LineOptions {
    int n_segments = 512;
    /// Scales the distributed radiation resistance (short-dipole law
    /// saturating at the half-wave value, spread along the path). 0 turns
    /// radiation loss off.
    double radiation_factor = 1.0;
    double source_resistance_ohm = 0.0;

    void validate() const;
};

/// Per-frequency network solution. All phasors are for V_in = 1 V peak;
/// scale linearly for other drive levels.
struct LineSolution {
    double frequency_hz = 0.0;
    std::complex<double> gain;       // V_Rx / V_in across the termination
    std::complex<double> v_line_in;  // body potential at the feed point
    std::complex<double> i_line_in;
    std::complex<double> v_line_out;
    std::complex<double> i_line_out;
    std::complex<double> i_source;   // current drawn from the excitation
    double p_source_w = 0.0;         // 0.5 Re(V_in conj(I_src))
    double p_load_w = 0.0;           // dissipated in the termination resistance

    // Axial profile, filled only when solved with profile = true.
    std::vector<double> z_m;                     // node positions, size M+1
    std::vector<std::complex<double>> v_node;    // size M+1
    std::vector<std::complex<double>> i_node;    // size M+1
    std::vector<double> dz_m;                    // per sub-segment, size M
    std::vector<double> radius_m;                // per sub-segment
    std::vector<double> r_cond_ohm_per_m;        // conduction-only R'
    std::vector<double> cross_section_m2;        // per sub-segment

    /// Complex axial current moment integral(I dz), the effective radiating
    /// moment used by the leakage model. Requires the profile.
    std::complex<double> axial_current_moment_a_m() const;
};

/// The assembled channel: segmented body line between two coupled devices
/// over a common earth ground.
class BodyChannel {
public:
    std::vector<BodySegment> segments;
    DeviceGeometry tx_device;
    DeviceGeometry rx_device;
    TerminationNetwork termination;
    BodyGroundCoupling ground;
    LineOptions options;
    TissueLibrary tissues = TissueLibrary::with_builtins();

    void validate() const;
    double total_length_m() const;

    /// End-to-end complex voltage gain V_Rx / V_in at one frequency.
    std::complex<double> transfer(double frequency_hz) const;

    /// Full solution; profile = true additionally reconstructs V(z), I(z)
    /// along the line for the safety and leakage estimators.
    LineSolution solve(double frequency_hz, bool profile = false) const;

    /// Line two-port alone (segments, shunt C_B loading and radiation loss
    /// included; couplers and termination excluded).
    TwoPort line_twoport(double frequency_hz) const;

    /// Distributed radiation resistance applied to the series branch.
    double radiation_resistance_ohm_per_m(double frequency_hz) const;
};

/// Convenience wrapper matching the flat operation signature.
std::complex<double> transfer_function(const std::vector<BodySegment>& body,
                                       const DeviceGeometry& dev_tx, const DeviceGeometry& dev_rx,
                                       const TerminationNetwork& term, const BodyGroundCoupling& bg,
                                       double frequency_hz, int n_segments);

} // namespace brhbc

#endif
