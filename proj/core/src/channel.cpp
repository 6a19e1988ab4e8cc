// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/channel.hpp"

#include "brhbc/constants.hpp"
#include "brhbc/dipole.hpp"
#include "brhbc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace brhbc {

using std::complex;
namespace k = constants;

void FrequencySweep::validate() const
{
    if (!(f_start_hz > 0.0) || !(f_stop_hz > f_start_hz))
        throw std::invalid_argument("sweep: need 0 < f_start < f_stop");
    if (points < 2)
        throw std::invalid_argument("sweep: need at least 2 points");
}

std::vector<double> FrequencySweep::grid() const
{
    validate();
    std::vector<double> freqs(static_cast<std::size_t>(points));
    const double n = points - 1;
    if (spacing == Spacing::log) {
        const double log_lo = std::log10(f_start_hz);
        const double log_hi = std::log10(f_stop_hz);
        for (int i = 0; i < points; ++i)
            freqs[static_cast<std::size_t>(i)] = std::pow(10.0, log_lo + (log_hi - log_lo) * i / n);
    } else {
        for (int i = 0; i < points; ++i)
            freqs[static_cast<std::size_t>(i)] = f_start_hz + (f_stop_hz - f_start_hz) * i / n;
    }
    freqs.front() = f_start_hz;
    freqs.back() = f_stop_hz;
    return freqs;
}

ChannelResponse make_response(std::vector<double> frequencies,
                              std::vector<complex<double>> gain, double v_in_volts)
{
    if (frequencies.size() != gain.size())
        throw std::invalid_argument("response: frequency/gain length mismatch");
    ChannelResponse resp;
    resp.frequencies_hz = std::move(frequencies);
    resp.complex_gain = std::move(gain);
    resp.v_in_volts = v_in_volts;
    resp.gain_db.resize(resp.complex_gain.size());
    resp.v_rx_volts.resize(resp.complex_gain.size());
    for (std::size_t i = 0; i < resp.complex_gain.size(); ++i) {
        const double mag = std::abs(resp.complex_gain[i]);
        resp.gain_db[i] = 20.0 * std::log10(mag);
        resp.v_rx_volts[i] = mag * v_in_volts;
    }
    return resp;
}

namespace {

unsigned worker_count(std::size_t jobs)
{
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("BRHBC_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1 && parsed <= 256)
            n = static_cast<unsigned>(parsed);
    }
    n = std::max(1u, std::min({n == 0 ? 1u : n, 64u, static_cast<unsigned>(jobs)}));
    return n;
}

} // namespace

ChannelResponse sweep_gain(const BodyChannel& channel, const FrequencySweep& sweep,
                           double v_in_volts)
{
    channel.validate();
    std::vector<double> freqs = sweep.grid();
    std::vector<complex<double>> gain(freqs.size());

    const unsigned workers = worker_count(freqs.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < freqs.size(); ++i)
            gain[i] = channel.transfer(freqs[i]);
    } else {
        std::mutex error_mutex;
        std::exception_ptr first_error;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (freqs.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(freqs.size(), begin + chunk);
            if (begin >= end)
                break;
            pool.emplace_back([&, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i)
                        gain[i] = channel.transfer(freqs[i]);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            });
        }
        for (auto& t : pool)
            t.join();
        if (first_error)
            std::rethrow_exception(first_error);
    }
    return make_response(std::move(freqs), std::move(gain), v_in_volts);
}

void AirPathParams::validate() const
{
    if (!(los_distance_m > 0.0))
        throw std::invalid_argument("air path: los_distance must be > 0");
    if (!(eps_eff >= 1.0))
        throw std::invalid_argument("air path: eps_eff must be >= 1");
}

complex<double> air_path_gain(const DeviceGeometry& tx, const DeviceGeometry& rx,
                              const AirPathParams& air, double frequency_hz)
{
    air.validate();
    if (air.scale == 0.0)
        return {0.0, 0.0};

    const double omega = 2.0 * k::pi * frequency_hz;
    // Drive current into the transmit coupler for V_in = 1: the series
    // combination of the plate-to-body and return-path capacitances.
    const double c_drive = tx.coupling_capacitance_f() *
                           return_path_capacitance_f(tx, tx.ground_distance_m) /
                           (tx.coupling_capacitance_f() +
                            return_path_capacitance_f(tx, tx.ground_distance_m));
    const complex<double> drive_current(0.0, omega * c_drive);

    Medium medium{air.eps_eff};
    DipoleSource source{std::abs(drive_current), tx.plate_separation_m, frequency_hz};
    FieldPoint broadside{air.los_distance_m, k::pi / 2.0, 0.0};
    const EmField field = fields_at(source, medium, broadside);

    // Restore the drive-current phase (fields_at takes a real amplitude)
    // and convert the field to the receive coupler's open-circuit voltage.
    const complex<double> phase = drive_current / std::abs(drive_current);
    return air.scale * phase * field.e_theta * rx.plate_separation_m;
}

ChannelResponse superpose_air_path(const ChannelResponse& body_response, const DeviceGeometry& tx,
                                   const DeviceGeometry& rx, const AirPathParams& air)
{
    air.validate();
    std::vector<complex<double>> gain(body_response.complex_gain.size());
    for (std::size_t i = 0; i < gain.size(); ++i)
        gain[i] = body_response.complex_gain[i] +
                  air_path_gain(tx, rx, air, body_response.frequencies_hz[i]);
    return make_response(body_response.frequencies_hz, std::move(gain), body_response.v_in_volts);
}

namespace {

// Topographic prominence of sample `i` in `g`: height above the higher of
// the two saddles on the way to higher ground (or to the series edge).
double prominence_at(const std::vector<double>& g, std::size_t i)
{
    double left_min = g[i];
    for (std::size_t j = i; j-- > 0;) {
        left_min = std::min(left_min, g[j]);
        if (g[j] > g[i])
            break;
    }
    double right_min = g[i];
    for (std::size_t j = i + 1; j < g.size(); ++j) {
        right_min = std::min(right_min, g[j]);
        if (g[j] > g[i])
            break;
    }
    return g[i] - std::max(left_min, right_min);
}

// First crossing of `level` to the right/left of `i`, linearly interpolated
// in frequency. Returns nan when the series ends before crossing.
double crossing_right(const std::vector<double>& f, const std::vector<double>& g,
                      std::size_t i, double level)
{
    for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (g[j] <= level) {
            const double t = (g[j - 1] - level) / (g[j - 1] - g[j]);
            return f[j - 1] + t * (f[j] - f[j - 1]);
        }
    }
    return std::nan("");
}

double crossing_left(const std::vector<double>& f, const std::vector<double>& g,
                     std::size_t i, double level)
{
    for (std::size_t j = i; j-- > 0;) {
        if (g[j] <= level) {
            const double t = (g[j + 1] - level) / (g[j + 1] - g[j]);
            return f[j + 1] + t * (f[j] - f[j + 1]);
        }
    }
    return std::nan("");
}

void collect_extrema(const std::vector<double>& f, const std::vector<double>& g,
                     double prominence_db, SpectralFeature::Kind kind,
                     std::vector<SpectralFeature>& out)
{
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        // Strict rise on the left, non-strict on the right: plateau ties
        // resolve to the lower frequency.
        if (!std::isfinite(g[i]))
            continue; // exact nulls have no finite depth or Q
        if (!(g[i] > g[i - 1] && g[i] >= g[i + 1]))
            continue;
        if (prominence_at(g, i) < prominence_db)
            continue;

        const double level = g[i] - 3.0;
        double f_lo = crossing_left(f, g, i, level);
        double f_hi = crossing_right(f, g, i, level);
        if (std::isnan(f_lo) && std::isnan(f_hi))
            continue; // cannot happen with prominence >= 3, kept as a guard
        if (std::isnan(f_lo))
            f_lo = f[i] - (f_hi - f[i]);
        if (std::isnan(f_hi))
            f_hi = f[i] + (f[i] - f_lo);

        SpectralFeature feature;
        feature.kind = kind;
        feature.f_c_hz = f[i];
        feature.gain_db = kind == SpectralFeature::Kind::peak ? g[i] : -g[i];
        feature.bandwidth_hz = f_hi - f_lo;
        feature.q = feature.f_c_hz / feature.bandwidth_hz;
        out.push_back(feature);
    }
}

} // namespace

std::vector<SpectralFeature> find_features(const ChannelResponse& response, double prominence_db)
{
    if (response.frequencies_hz.size() < 16)
        throw std::invalid_argument("find_features: need at least 16 sweep points");
    if (!(prominence_db > 0.0))
        throw std::invalid_argument("find_features: prominence must be > 0");

    std::vector<SpectralFeature> features;
    collect_extrema(response.frequencies_hz, response.gain_db, prominence_db,
                    SpectralFeature::Kind::peak, features);

    std::vector<double> inverted(response.gain_db.size());
    for (std::size_t i = 0; i < inverted.size(); ++i)
        inverted[i] = -response.gain_db[i];
    collect_extrema(response.frequencies_hz, inverted, prominence_db,
                    SpectralFeature::Kind::notch, features);

    std::sort(features.begin(), features.end(),
              [](const SpectralFeature& lhs, const SpectralFeature& rhs) {
                  return lhs.f_c_hz < rhs.f_c_hz;
              });
    return features;
}

std::optional<SpectralFeature> dominant_peak(const std::vector<SpectralFeature>& features)
{
    std::optional<SpectralFeature> best;
    for (const auto& feature : features) {
        if (feature.kind != SpectralFeature::Kind::peak)
            continue;
        if (!best || feature.gain_db > best->gain_db)
            best = feature;
    }
    return best;
}

void NoiseModel::validate() const
{
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("noise model: temperature must be > 0");
}

double NoiseModel::density_w_per_hz() const
{
    validate();
    double n0 = k::boltzmann_j_per_k * temperature_k * std::pow(10.0, noise_figure_db / 10.0);
    if (extra_floor_dbm_per_hz)
        n0 += std::pow(10.0, (*extra_floor_dbm_per_hz - 30.0) / 10.0);
    return n0;
}

namespace {

struct BandIntegral {
    double capacity_bits_per_s = 0.0;
    double snr_db_weighted = 0.0;
    double width = 0.0;
};

BandIntegral integrate_band(const ChannelResponse& resp, const Band& band, double psd_w_per_hz,
                            double noise_w_per_hz)
{
    BandIntegral acc;
    const auto& f = resp.frequencies_hz;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        const double lo = std::max(band.lo_hz, f[i]);
        const double hi = std::min(band.hi_hz, f[i + 1]);
        if (hi <= lo)
            continue;
        const double h2 = 0.5 * (std::norm(resp.complex_gain[i]) + std::norm(resp.complex_gain[i + 1]));
        const double snr = psd_w_per_hz * h2 / noise_w_per_hz;
        const double width = hi - lo;
        acc.capacity_bits_per_s += width * std::log2(1.0 + snr);
        acc.snr_db_weighted += width * 10.0 * std::log10(snr);
        acc.width += width;
    }
    return acc;
}

} // namespace

CapacityReport shannon_capacity(const ChannelResponse& response, const NoiseModel& noise,
                                double tx_power_dbm, Band band, Band eqs_reference)
{
    if (response.frequencies_hz.size() < 2)
        throw std::invalid_argument("shannon_capacity: response needs at least 2 points");
    if (!(band.lo_hz < band.hi_hz))
        throw std::invalid_argument("shannon_capacity: empty band");
    const double sweep_lo = response.frequencies_hz.front();
    const double sweep_hi = response.frequencies_hz.back();
    if (band.lo_hz < sweep_lo || band.hi_hz > sweep_hi)
        throw std::invalid_argument("shannon_capacity: band outside the swept range");

    const double p_tx_w = std::pow(10.0, (tx_power_dbm - 30.0) / 10.0);
    const double psd = p_tx_w / (sweep_hi - sweep_lo);
    const double n0 = noise.density_w_per_hz();

    const BandIntegral main = integrate_band(response, band, psd, n0);
    const BandIntegral eqs = integrate_band(response, eqs_reference, psd, n0);

    CapacityReport report;
    report.band = band;
    report.eqs_reference = eqs_reference;
    report.tx_power_dbm = tx_power_dbm;
    report.psd_w_per_hz = psd;
    report.capacity_bits_per_s = main.capacity_bits_per_s;
    report.mean_snr_db = main.width > 0.0 ? main.snr_db_weighted / main.width : 0.0;
    report.eqs_capacity_bits_per_s = eqs.capacity_bits_per_s;
    report.comparison_ratio =
        eqs.capacity_bits_per_s > 0.0 ? main.capacity_bits_per_s / eqs.capacity_bits_per_s : 0.0;
    return report;
}

double energy_per_bit_j(double p_tx_w, double capacity_bits_per_s)
{
    if (!(capacity_bits_per_s > 0.0))
        throw std::invalid_argument("energy_per_bit: capacity must be > 0");
    return p_tx_w / capacity_bits_per_s;
}

} // namespace brhbc
