// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_CHANNEL_HPP
#define BRHBC_CHANNEL_HPP

#include "brhbc/body_line.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace brhbc {

struct FrequencySweep {
    enum class Spacing { log, linear };

    double f_start_hz = 1e5;
    double f_stop_hz = 1e9;
    int points = 1024;
    Spacing spacing = Spacing::log;

    void validate() const;
    std::vector<double> grid() const;
};

/// Gain-vs-frequency result of a sweep. gain_db is 20 log10|complex_gain|
/// and v_rx_volts = |complex_gain| * v_in_volts, element by element.
struct ChannelResponse {
    std::vector<double> frequencies_hz;
    std::vector<std::complex<double>> complex_gain;
    std::vector<double> gain_db;
    double v_in_volts = 1.0;
    std::vector<double> v_rx_volts;
};

ChannelResponse make_response(std::vector<double> frequencies,
                              std::vector<std::complex<double>> gain, double v_in_volts);

/// Evaluates the channel transfer over the sweep grid. Frequencies are
/// processed in parallel when BRHBC_THREADS (or hardware concurrency)
/// allows; results are merged by index, so output is deterministic.
ChannelResponse sweep_gain(const BodyChannel& channel, const FrequencySweep& sweep,
                           double v_in_volts = 1.0);

/// Line-of-sight air path between the device couplers.
struct AirPathParams {
    double los_distance_m = 1.5;
    double eps_eff = 1.0; // effective permittivity along the sight line
    double scale = 1.0;   // extra calibration factor on the air term

    void validate() const;
};

/// Complex air-path gain: transmit coupler driven as an electrically short
/// dipole (moment from the device coupling factor), received as the E_theta
/// line integral across the receive coupler plates.
std::complex<double> air_path_gain(const DeviceGeometry& tx, const DeviceGeometry& rx,
                                   const AirPathParams& air, double frequency_hz);

/// Complex superposition of the body-guided response and the air path.
/// Notches appear where the two phasors oppose.
ChannelResponse superpose_air_path(const ChannelResponse& body_response, const DeviceGeometry& tx,
                                   const DeviceGeometry& rx, const AirPathParams& air);

struct SpectralFeature {
    enum class Kind { peak, notch };

    Kind kind = Kind::peak;
    double f_c_hz = 0.0;
    double gain_db = 0.0;
    double q = 0.0;
    double bandwidth_hz = 0.0; // -3 dB width, BW = f_c / Q
};

/// Local extrema exceeding the prominence threshold, peaks and notches,
/// sorted by frequency. Plateau ties resolve toward the lower frequency.
/// Requires at least 16 sweep points; an empty list is a valid result.
std::vector<SpectralFeature> find_features(const ChannelResponse& response,
                                           double prominence_db = 3.0);

/// The dominant peak: the in-band peak with the highest gain, if any.
std::optional<SpectralFeature> dominant_peak(const std::vector<SpectralFeature>& features);

struct NoiseModel {
    double temperature_k = 290.0;
    double noise_figure_db = 5.0;
    std::optional<double> extra_floor_dbm_per_hz; // interference floor

    void validate() const;
    /// Total noise power spectral density in W/Hz.
    double density_w_per_hz() const;
};

struct Band {
    double lo_hz = 0.0;
    double hi_hz = 0.0;

    double width_hz() const { return hi_hz - lo_hz; }
};

struct CapacityReport {
    Band band;
    double capacity_bits_per_s = 0.0;
    double mean_snr_db = 0.0;
    double comparison_ratio = 0.0; // capacity of `band` over the EQS reference
    double eqs_capacity_bits_per_s = 0.0;
    Band eqs_reference;
    double tx_power_dbm = 0.0;
    double psd_w_per_hz = 0.0;
};

/// Shannon-Hartley capacity integrated over the band on the sweep grid.
/// The transmit power is spread as a flat PSD across the full swept span,
/// so band capacities are additive under band subdivision and monotone
/// under band growth. SNR is piecewise constant per grid cell. The EQS
/// reference band is always integrated alongside for the comparison ratio.
CapacityReport shannon_capacity(const ChannelResponse& response, const NoiseModel& noise,
                                double tx_power_dbm, Band band, Band eqs_reference = {1e5, 2e7});

/// J/bit at a given radiated/consumed transmit power.
double energy_per_bit_j(double p_tx_w, double capacity_bits_per_s);

} // namespace brhbc

#endif
