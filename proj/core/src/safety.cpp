// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/safety.hpp"

#include "brhbc/constants.hpp"
#include "brhbc/errors.hpp"
#include "brhbc/text_io.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace brhbc {

namespace k = constants;

ExposureLimits::ExposureLimits(std::vector<Row> rows, double sar_limit_whole_body_w_per_kg)
    : rows_(std::move(rows)), sar_limit_(sar_limit_whole_body_w_per_kg)
{
    if (rows_.size() < 2)
        throw std::invalid_argument("exposure limits: need at least 2 table rows");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!(rows_[i].e_limit_v_per_m > 0.0) || !(rows_[i].h_limit_a_per_m > 0.0))
            throw std::invalid_argument("exposure limits: limits must be > 0");
        if (i > 0 && !(rows_[i].frequency_hz > rows_[i - 1].frequency_hz))
            throw std::invalid_argument("exposure limits: frequencies must be strictly increasing");
    }
    if (!(sar_limit_ > 0.0))
        throw std::invalid_argument("exposure limits: SAR limit must be > 0");
}

ExposureLimits ExposureLimits::builtin_defaults(double sar_limit_whole_body_w_per_kg)
{
    // General-public reference levels in the style of the ICNIRP guidelines
    // (editable via CSV; see data/icnirp_limits.csv).
    return ExposureLimits({{1e5, 87.0, 7.3},
                           {1e6, 87.0, 0.73},
                           {1e7, 28.0, 0.073},
                           {4e8, 28.0, 0.073},
                           {1e9, 43.5, 0.117}},
                          sar_limit_whole_body_w_per_kg);
}

ExposureLimits ExposureLimits::from_csv(std::istream& source, double sar_limit_whole_body_w_per_kg)
{
    const CsvTable table = read_csv(source, {"frequency_hz", "e_limit_v_per_m", "h_limit_a_per_m"});
    std::vector<Row> rows;
    rows.reserve(table.rows.size());
    for (const auto& r : table.rows)
        rows.push_back({r[0], r[1], r[2]});
    return ExposureLimits(std::move(rows), sar_limit_whole_body_w_per_kg);
}

ExposureLimits::Row ExposureLimits::at(double frequency_hz) const
{
    if (frequency_hz < rows_.front().frequency_hz || frequency_hz > rows_.back().frequency_hz)
        throw std::domain_error("exposure limits table does not cover " +
                                format_double(frequency_hz) + " Hz");
    std::size_t hi = 1;
    while (rows_[hi].frequency_hz < frequency_hz)
        ++hi;
    const Row& a = rows_[hi - 1];
    const Row& b = rows_[hi];
    if (b.frequency_hz == frequency_hz)
        return {frequency_hz, b.e_limit_v_per_m, b.h_limit_a_per_m};
    const double t = (std::log10(frequency_hz) - std::log10(a.frequency_hz)) /
                     (std::log10(b.frequency_hz) - std::log10(a.frequency_hz));
    return {frequency_hz, a.e_limit_v_per_m + t * (b.e_limit_v_per_m - a.e_limit_v_per_m),
            a.h_limit_a_per_m + t * (b.h_limit_a_per_m - a.h_limit_a_per_m)};
}

TxPowerReport tx_power(double v_in_peak_v, double sense_resistance_ohm, double v_r_peak_v)
{
    if (!(sense_resistance_ohm > 0.0))
        throw std::invalid_argument("tx_power: sense resistance must be > 0");

    TxPowerReport report;
    report.v_r_peak_v = v_r_peak_v;
    report.i_tx_a_rms = v_r_peak_v / std::sqrt(2.0) / sense_resistance_ohm;
    report.v_tx_v_rms = v_in_peak_v / std::sqrt(2.0);
    report.p_tx_w = report.v_tx_v_rms * report.i_tx_a_rms;
    return report;
}

ExposureReport exposure_estimate(const BodyChannel& channel, double frequency_hz,
                                 double v_in_peak_v, const ExposureLimits& limits,
                                 double tissue_density_kg_per_m3)
{
    if (!(v_in_peak_v >= 0.0))
        throw std::invalid_argument("exposure_estimate: drive amplitude must be >= 0");
    if (!(tissue_density_kg_per_m3 > 0.0))
        throw std::invalid_argument("exposure_estimate: density must be > 0");

    const ExposureLimits::Row limit = limits.at(frequency_hz);
    const LineSolution sol = channel.solve(frequency_hz, true);

    double e_max = 0.0;
    double h_max = 0.0;
    double dissipated_w = 0.0;
    double volume_m3 = 0.0;
    for (std::size_t s = 0; s < sol.dz_m.size(); ++s) {
        const double dv = std::abs(sol.v_node[s + 1] - sol.v_node[s]);
        e_max = std::max(e_max, dv / sol.dz_m[s] * v_in_peak_v);

        const double i_mid = std::abs(0.5 * (sol.i_node[s] + sol.i_node[s + 1])) * v_in_peak_v;
        h_max = std::max(h_max, i_mid / (2.0 * k::pi * sol.radius_m[s]));

        dissipated_w += 0.5 * i_mid * i_mid * sol.r_cond_ohm_per_m[s] * sol.dz_m[s];
        volume_m3 += sol.cross_section_m2[s] * sol.dz_m[s];
    }

    ExposureReport report;
    report.frequency_hz = frequency_hz;
    report.v_in_peak_v = v_in_peak_v;
    report.induced_e_v_per_m = e_max;
    report.induced_h_a_per_m = h_max;
    report.sar_whole_body_w_per_kg = dissipated_w / (tissue_density_kg_per_m3 * volume_m3);

    constexpr double inf = std::numeric_limits<double>::infinity();
    report.margin_e = e_max > 0.0 ? limit.e_limit_v_per_m / e_max : inf;
    report.margin_h = h_max > 0.0 ? limit.h_limit_a_per_m / h_max : inf;
    report.margin_sar = report.sar_whole_body_w_per_kg > 0.0
                            ? limits.sar_limit_w_per_kg() / report.sar_whole_body_w_per_kg
                            : inf;
    report.safe = report.margin_e > 1.0 && report.margin_h > 1.0 && report.margin_sar > 1.0;
    return report;
}

} // namespace brhbc
