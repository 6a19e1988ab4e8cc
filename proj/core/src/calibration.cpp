// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/calibration.hpp"

#include "brhbc/errors.hpp"
#include "brhbc/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brhbc {

std::vector<SweepRecord> ingest_sweep(std::istream& source)
{
    const CsvTable table = read_csv(source, {"frequency_hz", "rx_power_dbm", "tx_power_dbm"});
    if (table.rows.empty())
        throw parse_error("measurement file contains no data rows");

    std::vector<SweepRecord> records;
    records.reserve(table.rows.size());
    for (const auto& r : table.rows) {
        if (!std::isfinite(r[0]) || !std::isfinite(r[1]) || !std::isfinite(r[2]))
            throw parse_error("measurement row with non-finite value at " + format_double(r[0]) + " Hz");
        if (!(r[0] > 0.0))
            throw parse_error("measurement row with non-positive frequency");
        records.push_back({r[0], r[1], r[2]});
    }
    std::sort(records.begin(), records.end(),
              [](const SweepRecord& a, const SweepRecord& b) { return a.frequency_hz < b.frequency_hz; });
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].frequency_hz == records[i - 1].frequency_hz)
            throw parse_error("duplicate measurement frequency " +
                              format_double(records[i].frequency_hz) + " Hz is ambiguous");
    return records;
}

OffsetTable::OffsetTable(std::vector<std::pair<double, double>> samples)
    : samples_(std::move(samples))
{
    if (samples_.size() < 2)
        throw std::invalid_argument("offset table: need at least 2 samples");
    for (std::size_t i = 1; i < samples_.size(); ++i)
        if (!(samples_[i].first > samples_[i - 1].first))
            throw std::invalid_argument("offset table: frequencies must be strictly increasing");
}

OffsetTable OffsetTable::from_csv(std::istream& source)
{
    const CsvTable table = read_csv(source, {"frequency_hz", "offset_db"});
    std::vector<std::pair<double, double>> samples;
    samples.reserve(table.rows.size());
    for (const auto& r : table.rows)
        samples.emplace_back(r[0], r[1]);
    return OffsetTable(std::move(samples));
}

double OffsetTable::at(double frequency_hz) const
{
    if (samples_.empty())
        return 0.0;
    if (frequency_hz < samples_.front().first || frequency_hz > samples_.back().first)
        throw std::domain_error("correction table does not cover " + format_double(frequency_hz) +
                                " Hz (coverage gap)");
    const auto it = std::lower_bound(
        samples_.begin(), samples_.end(), frequency_hz,
        [](const std::pair<double, double>& s, double f) { return s.first < f; });
    if (it->first == frequency_hz)
        return it->second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t =
        (std::log10(frequency_hz) - std::log10(lo.first)) / (std::log10(hi.first) - std::log10(lo.first));
    return lo.second + t * (hi.second - lo.second);
}

ChannelResponse calibrated_gain(std::span<const SweepRecord> records,
                                const CorrectionFactors& corrections)
{
    if (records.empty())
        throw std::invalid_argument("calibrated_gain: no records");

    std::vector<double> freqs;
    std::vector<std::complex<double>> gain;
    freqs.reserve(records.size());
    gain.reserve(records.size());
    for (const auto& rec : records) {
        const double gain_db = rec.rx_power_dbm + corrections.rx_offset_db.at(rec.frequency_hz) +
                               corrections.buffer_offset_db.at(rec.frequency_hz) -
                               (rec.tx_power_dbm + corrections.tx_offset_db);
        freqs.push_back(rec.frequency_hz);
        gain.emplace_back(std::pow(10.0, gain_db / 20.0), 0.0);
    }
    return make_response(std::move(freqs), std::move(gain), 1.0);
}

namespace {

double fit_objective(const ChannelResponse& calibrated, const BodyChannel& scenario, Band band,
                     double c_b_f, int& evaluations)
{
    BodyChannel candidate = scenario;
    candidate.ground.c_b_f = c_b_f;
    double sum_sq = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < calibrated.frequencies_hz.size(); ++i) {
        const double f = calibrated.frequencies_hz[i];
        if (f < band.lo_hz || f > band.hi_hz)
            continue;
        const double model_db = 20.0 * std::log10(std::abs(candidate.transfer(f)));
        const double err = model_db - calibrated.gain_db[i];
        sum_sq += err * err;
        ++count;
    }
    ++evaluations;
    return sum_sq / count;
}

} // namespace

CapacitanceFit fit_body_ground_capacitance(const ChannelResponse& calibrated,
                                           const BodyChannel& scenario, Band eqs_band)
{
    int in_band = 0;
    for (const double f : calibrated.frequencies_hz)
        if (f >= eqs_band.lo_hz && f <= eqs_band.hi_hz)
            ++in_band;
    if (in_band < 3)
        throw model_error("fit_body_ground_capacitance: calibrated response must span the EQS band "
                          "(need >= 3 in-band samples)");

    const double x_lo = std::log10(1e-12);
    const double x_hi = std::log10(1000e-12);
    constexpr double golden = 0.6180339887498949;

    CapacitanceFit fit;
    auto objective = [&](double x) {
        return fit_objective(calibrated, scenario, eqs_band, std::pow(10.0, x), fit.evaluations);
    };

    double a = x_lo, b = x_hi;
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > 1e-7) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = objective(d);
        }
    }
    const double x_best = 0.5 * (a + b);
    const double j_best = objective(x_best);

    fit.c_b_f = std::pow(10.0, x_best);
    fit.rms_residual_db = std::sqrt(j_best);

    // Non-identifiable outcomes: the optimum pinned to a search boundary, or
    // an objective that is flat across the whole range.
    const double j_lo = objective(x_lo);
    const double j_hi = objective(x_hi);
    const bool at_boundary = (x_best - x_lo) < 1e-3 || (x_hi - x_best) < 1e-3;
    const bool flat = std::max(j_lo, j_hi) - j_best <= 1e-9 * (1.0 + j_best);
    fit.identifiable = !at_boundary && !flat;
    return fit;
}

} // namespace brhbc
