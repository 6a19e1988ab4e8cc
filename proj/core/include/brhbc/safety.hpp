// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_SAFETY_HPP
#define BRHBC_SAFETY_HPP

#include "brhbc/body_line.hpp"

#include <istream>
#include <vector>

namespace brhbc {

/// Frequency tables of reference field limits plus the whole-body SAR cap.
/// The bundled defaults carry ICNIRP-style general-public reference levels;
/// the CSV form exists because guidelines revise.
class ExposureLimits {
public:
    struct Row {
        double frequency_hz;
        double e_limit_v_per_m;
        double h_limit_a_per_m;
    };

    ExposureLimits(std::vector<Row> rows, double sar_limit_whole_body_w_per_kg);

    static ExposureLimits builtin_defaults(double sar_limit_whole_body_w_per_kg = 0.08);
    /// CSV schema: frequency_hz,e_limit_v_per_m,h_limit_a_per_m.
    static ExposureLimits from_csv(std::istream& source, double sar_limit_whole_body_w_per_kg);

    /// Log-frequency interpolated limits; throws std::domain_error when the
    /// table does not cover the requested frequency.
    Row at(double frequency_hz) const;
    double sar_limit_w_per_kg() const { return sar_limit_; }

private:
    std::vector<Row> rows_;
    double sar_limit_;
};

struct TxPowerReport {
    double v_r_peak_v = 0.0;
    double i_tx_a_rms = 0.0;
    double v_tx_v_rms = 0.0;
    double p_tx_w = 0.0;
};

/// Sense-resistor transmit power bookkeeping:
///   I_Tx = (V_R/sqrt 2)/R,  V_Tx = V_in/sqrt 2,  P_Tx = V_Tx I_Tx.
TxPowerReport tx_power(double v_in_peak_v, double sense_resistance_ohm, double v_r_peak_v);

struct ExposureReport {
    double frequency_hz = 0.0;
    double v_in_peak_v = 0.0;
    double induced_e_v_per_m = 0.0;
    double induced_h_a_per_m = 0.0;
    double sar_whole_body_w_per_kg = 0.0;
    double margin_e = 0.0;   // limit / estimate
    double margin_h = 0.0;
    double margin_sar = 0.0;
    bool safe = false;
};

/// Line-model exposure estimate at one frequency:
///  - induced E from the axial surface-potential gradient |dV/dz|,
///  - induced H from the enclosed axial current at the body surface,
///  - whole-body SAR from the ohmic series dissipation integral over the
///    cylinder volume (density configurable).
/// Scales linearly (E, H) and quadratically (SAR) in the drive amplitude.
ExposureReport exposure_estimate(const BodyChannel& channel, double frequency_hz,
                                 double v_in_peak_v, const ExposureLimits& limits,
                                 double tissue_density_kg_per_m3 = 1000.0);

} // namespace brhbc

#endif
