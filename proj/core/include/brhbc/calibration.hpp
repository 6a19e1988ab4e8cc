// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_CALIBRATION_HPP
#define BRHBC_CALIBRATION_HPP

#include "brhbc/body_line.hpp"
#include "brhbc/channel.hpp"

#include <istream>
#include <span>
#include <vector>

namespace brhbc {

/// One row of a handheld-device sweep measurement.
struct SweepRecord {
    double frequency_hz = 0.0;
    double rx_power_dbm = 0.0;
    double tx_power_dbm = 0.0;
};

/// Parses the measurement CSV schema
///   frequency_hz,rx_power_dbm,tx_power_dbm
/// and returns records sorted by frequency. Duplicate frequencies are
/// ambiguous and rejected; all fields must be finite.
std::vector<SweepRecord> ingest_sweep(std::istream& source);

/// Frequency-dependent correction offsets (dB) with log-frequency linear
/// interpolation. A default-constructed table is identically zero; a
/// non-empty table throws std::domain_error outside its span (coverage gap).
class OffsetTable {
public:
    OffsetTable() = default;
    explicit OffsetTable(std::vector<std::pair<double, double>> samples);

    /// CSV schema: frequency_hz,offset_db.
    static OffsetTable from_csv(std::istream& source);

    bool empty() const { return samples_.empty(); }
    double at(double frequency_hz) const;

private:
    std::vector<std::pair<double, double>> samples_;
};

/// Bench-calibration chain of the measurement setup: a flat transmitter
/// offset plus receiver and buffer characterization tables.
struct CorrectionFactors {
    double tx_offset_db = 0.0;
    OffsetTable rx_offset_db;
    OffsetTable buffer_offset_db;
};

/// Calibrated channel gain:
///   gain_db(f) = rx_power + rx_offset(f) + buffer_offset(f)
///              - (tx_power + tx_offset).
/// Purely additive in dB, so stacked corrections compose exactly.
ChannelResponse calibrated_gain(std::span<const SweepRecord> records,
                                const CorrectionFactors& corrections);

struct CapacitanceFit {
    double c_b_f = 0.0;
    double rms_residual_db = 0.0;
    bool identifiable = false;
    int evaluations = 0;
};

/// Least-squares fit of the body-to-earth capacitance against a calibrated
/// measurement, restricted to the EQS band where the model's C_B
/// sensitivity is cleanest. Golden-section search over log10 C_B in
/// [1, 1000] pF; a fit pinned to a search boundary or a flat objective is
/// reported as non-identifiable rather than thrown.
CapacitanceFit fit_body_ground_capacitance(const ChannelResponse& calibrated,
                                           const BodyChannel& scenario, Band eqs_band);

} // namespace brhbc

#endif
