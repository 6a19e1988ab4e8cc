// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/brhbc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

using namespace brhbc;

struct SweepOverrides {
    std::optional<int> points;
    std::optional<int> segments;
};

ScenarioConfig load_config(const std::string& path, const SweepOverrides& overrides)
{
    ScenarioConfig cfg = load_scenario(path);
    if (overrides.points)
        cfg.sweep.points = *overrides.points;
    if (overrides.segments)
        cfg.channel.options.n_segments = *overrides.segments;
    cfg.sweep.validate();
    cfg.channel.options.validate();
    return cfg;
}

ChannelResponse run_sweep(const ScenarioConfig& cfg)
{
    ChannelResponse resp = sweep_gain(cfg.channel, cfg.sweep, cfg.v_in_volts);
    if (cfg.air.enabled) {
        const DipoleSource top_of_band{1.0, cfg.channel.tx_device.plate_separation_m,
                                       cfg.sweep.f_stop_hz};
        if (!top_of_band.electrically_short(Medium{cfg.air.params.eps_eff}))
            std::cerr << "warning: transmit coupler is not electrically short at "
                      << format_double(cfg.sweep.f_stop_hz)
                      << " Hz; the air-path dipole term degrades there\n";
        resp = superpose_air_path(resp, cfg.channel.tx_device, cfg.channel.rx_device, cfg.air.params);
    }
    return resp;
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << contents;
    if (!out)
        throw std::runtime_error("failed writing output file '" + path + "'");
}

std::string response_csv(const ChannelResponse& resp)
{
    std::string text = "frequency_hz,gain_db,phase_rad,v_rx_volts\n";
    for (std::size_t i = 0; i < resp.frequencies_hz.size(); ++i) {
        text += format_double(resp.frequencies_hz[i]);
        text += ',';
        text += format_double(resp.gain_db[i]);
        text += ',';
        text += format_double(std::arg(resp.complex_gain[i]));
        text += ',';
        text += format_double(resp.v_rx_volts[i]);
        text += '\n';
    }
    return text;
}

json echo_json(const ScenarioConfig& cfg)
{
    json obj = json::object();
    for (const auto& [key, value] : cfg.echo())
        obj[key] = value;
    return obj;
}

json features_json(const std::vector<SpectralFeature>& features)
{
    json arr = json::array();
    for (const auto& f : features) {
        arr.push_back({{"kind", f.kind == SpectralFeature::Kind::peak ? "peak" : "notch"},
                       {"f_c_hz", f.f_c_hz},
                       {"gain_db", f.gain_db},
                       {"q", f.q},
                       {"bandwidth_hz", f.bandwidth_hz}});
    }
    return arr;
}

std::optional<SpectralFeature> dominant_br_peak(const ChannelResponse& resp, Band br)
{
    std::vector<SpectralFeature> in_band;
    for (const auto& f : find_features(resp))
        if (f.kind == SpectralFeature::Kind::peak && f.f_c_hz >= br.lo_hz && f.f_c_hz <= br.hi_hz)
            in_band.push_back(f);
    return dominant_peak(in_band);
}

ExposureLimits load_limits(const ScenarioConfig& cfg)
{
    if (cfg.safety.limits_file.empty())
        return ExposureLimits::builtin_defaults(cfg.safety.sar_limit_w_per_kg);
    std::ifstream in(cfg.safety.limits_file);
    if (!in)
        throw std::runtime_error("cannot open limits file '" + cfg.safety.limits_file + "'");
    return ExposureLimits::from_csv(in, cfg.safety.sar_limit_w_per_kg);
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const SweepOverrides& overrides)
{
    const ScenarioConfig cfg = load_config(config_path, overrides);
    const ChannelResponse resp = run_sweep(cfg);
    const std::string csv = response_csv(resp);

    json doc;
    doc["config"] = echo_json(cfg);
    bool skip_features = cfg.sweep.points < 32;
    if (skip_features) {
        std::cerr << "warning: " << cfg.sweep.points
                  << " sweep points is below the feature-detection minimum (32); "
                     "skipping feature extraction\n";
    } else {
        doc["features"] = features_json(find_features(resp));
    }

    write_file(out_path, csv);
    if (!skip_features) {
        const std::string features_path = out_path + ".features.json";
        write_file(features_path, doc.dump(2) + "\n");
        std::cout << "wrote " << out_path << " and " << features_path << "\n";
    } else {
        std::cout << "wrote " << out_path << " (features skipped)\n";
    }
    return 0;
}

int cmd_capacity(const std::string& config_path, const std::string& out_path,
                 const SweepOverrides& overrides, const std::string& band_spec)
{
    const ScenarioConfig cfg = load_config(config_path, overrides);

    Band band = cfg.br_band;
    if (!band_spec.empty()) {
        const auto comma = band_spec.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("--band expects 'lo_hz,hi_hz'");
        band.lo_hz = parse_double(band_spec.substr(0, comma), "--band lo");
        band.hi_hz = parse_double(band_spec.substr(comma + 1), "--band hi");
    }

    const ChannelResponse resp = run_sweep(cfg);
    const CapacityReport report =
        shannon_capacity(resp, cfg.noise, cfg.tx_power_dbm, band, cfg.eqs_band);

    // Device power draw at the dominant in-band peak gives the modeled
    // energy-per-bit figure.
    json doc;
    doc["config"] = echo_json(cfg);
    doc["band_lo_hz"] = report.band.lo_hz;
    doc["band_hi_hz"] = report.band.hi_hz;
    doc["capacity_bits_per_s"] = report.capacity_bits_per_s;
    doc["mean_snr_db"] = report.mean_snr_db;
    doc["eqs_lo_hz"] = report.eqs_reference.lo_hz;
    doc["eqs_hi_hz"] = report.eqs_reference.hi_hz;
    doc["eqs_capacity_bits_per_s"] = report.eqs_capacity_bits_per_s;
    doc["comparison_ratio"] = report.comparison_ratio;
    doc["tx_power_dbm"] = report.tx_power_dbm;
    doc["psd_w_per_hz"] = report.psd_w_per_hz;

    if (const auto peak = dominant_br_peak(resp, cfg.br_band)) {
        const LineSolution sol = cfg.channel.solve(peak->f_c_hz);
        const double v_r_peak = std::abs(sol.i_source) * cfg.v_in_volts *
                                cfg.safety.sense_resistance_ohm;
        const TxPowerReport tx =
            tx_power(cfg.v_in_volts, cfg.safety.sense_resistance_ohm, v_r_peak);
        doc["br_peak_hz"] = peak->f_c_hz;
        doc["modeled_p_tx_w"] = tx.p_tx_w;
        if (report.capacity_bits_per_s > 0.0)
            doc["energy_per_bit_j"] = energy_per_bit_j(tx.p_tx_w, report.capacity_bits_per_s);
    }

    write_file(out_path, doc.dump(2) + "\n");
    std::cout << "capacity " << format_double(report.capacity_bits_per_s) << " bit/s, "
              << format_double(report.comparison_ratio) << "x the EQS reference band\n";
    return 0;
}

int cmd_safety(const std::string& config_path, const std::string& out_path,
               const SweepOverrides& overrides, double freq_hz, const std::string& power_out)
{
    const ScenarioConfig cfg = load_config(config_path, overrides);
    const ExposureLimits limits = load_limits(cfg);

    double f_eval = freq_hz;
    if (f_eval <= 0.0) {
        const ChannelResponse resp = run_sweep(cfg);
        const auto peak = dominant_br_peak(resp, cfg.br_band);
        f_eval = peak ? peak->f_c_hz : 0.5 * (cfg.br_band.lo_hz + cfg.br_band.hi_hz);
    }

    const ExposureReport exposure =
        exposure_estimate(cfg.channel, f_eval, cfg.v_in_volts, limits,
                          cfg.safety.tissue_density_kg_per_m3);
    const LineSolution sol = cfg.channel.solve(f_eval);
    const double v_r_peak =
        std::abs(sol.i_source) * cfg.v_in_volts * cfg.safety.sense_resistance_ohm;
    const TxPowerReport tx = tx_power(cfg.v_in_volts, cfg.safety.sense_resistance_ohm, v_r_peak);

    json doc;
    doc["config"] = echo_json(cfg);
    doc["frequency_hz"] = exposure.frequency_hz;
    doc["v_in_peak_v"] = exposure.v_in_peak_v;
    doc["induced_e_v_per_m"] = exposure.induced_e_v_per_m;
    doc["induced_h_a_per_m"] = exposure.induced_h_a_per_m;
    doc["sar_whole_body_w_per_kg"] = exposure.sar_whole_body_w_per_kg;
    doc["margin_e"] = exposure.margin_e;
    doc["margin_h"] = exposure.margin_h;
    doc["margin_sar"] = exposure.margin_sar;
    doc["safe"] = exposure.safe;
    doc["i_tx_a_rms"] = tx.i_tx_a_rms;
    doc["p_tx_w"] = tx.p_tx_w;

    std::string power_csv;
    if (!power_out.empty()) {
        power_csv = "frequency_hz,i_tx_a_rms,p_tx_w\n";
        for (const double f : cfg.sweep.grid()) {
            const LineSolution s = cfg.channel.solve(f);
            const double vr = std::abs(s.i_source) * cfg.v_in_volts *
                              cfg.safety.sense_resistance_ohm;
            const TxPowerReport t =
                tx_power(cfg.v_in_volts, cfg.safety.sense_resistance_ohm, vr);
            power_csv += format_double(f) + ',' + format_double(t.i_tx_a_rms) + ',' +
                         format_double(t.p_tx_w) + '\n';
        }
    }

    write_file(out_path, doc.dump(2) + "\n");
    if (!power_out.empty())
        write_file(power_out, power_csv);
    std::cout << (exposure.safe ? "safe" : "NOT SAFE") << " at "
              << format_double(f_eval) << " Hz: margin_e=" << format_double(exposure.margin_e)
              << " margin_h=" << format_double(exposure.margin_h)
              << " margin_sar=" << format_double(exposure.margin_sar) << "\n";
    return 0;
}

int cmd_leakage(const std::string& config_path, const std::string& out_path,
                const SweepOverrides& overrides, double freq_hz)
{
    const ScenarioConfig cfg = load_config(config_path, overrides);

    double f_eval = freq_hz > 0.0 ? freq_hz : cfg.leakage.frequency_hz;
    if (f_eval <= 0.0) {
        const ChannelResponse resp = run_sweep(cfg);
        const auto peak = dominant_br_peak(resp, cfg.br_band);
        f_eval = peak ? peak->f_c_hz : 0.5 * (cfg.br_band.lo_hz + cfg.br_band.hi_hz);
    }

    const LeakageProfile profile =
        offbody_profile(cfg.channel, f_eval, cfg.leakage.distances_m, cfg.v_in_volts);

    std::string csv = "distance_m,v_off_volts,ratio\n";
    for (std::size_t i = 0; i < profile.distances_m.size(); ++i) {
        csv += format_double(profile.distances_m[i]) + ',' +
               format_double(profile.v_off_volts[i]) + ',' + format_double(profile.ratio[i]) +
               '\n';
    }
    write_file(out_path, csv);
    std::cout << "leakage at " << format_double(profile.frequency_hz)
              << " Hz, v_on=" << format_double(profile.v_on_volts) << " V; wrote " << out_path
              << "\n";
    return 0;
}

int cmd_calibrate(const std::string& config_path, const std::string& measurement_path,
                  const std::string& rx_corr_path, const std::string& buffer_corr_path,
                  double tx_offset_db, const std::string& out_path, const std::string& fit_out)
{
    const ScenarioConfig cfg = load_config(config_path, {});

    std::ifstream meas_in(measurement_path);
    if (!meas_in)
        throw std::runtime_error("cannot open measurement file '" + measurement_path + "'");
    const auto records = ingest_sweep(meas_in);

    CorrectionFactors corrections;
    corrections.tx_offset_db = tx_offset_db;
    if (!rx_corr_path.empty()) {
        std::ifstream in(rx_corr_path);
        if (!in)
            throw std::runtime_error("cannot open rx correction file '" + rx_corr_path + "'");
        corrections.rx_offset_db = OffsetTable::from_csv(in);
    }
    if (!buffer_corr_path.empty()) {
        std::ifstream in(buffer_corr_path);
        if (!in)
            throw std::runtime_error("cannot open buffer correction file '" + buffer_corr_path +
                                     "'");
        corrections.buffer_offset_db = OffsetTable::from_csv(in);
    }

    const ChannelResponse calibrated = calibrated_gain(records, corrections);
    const CapacitanceFit fit =
        fit_body_ground_capacitance(calibrated, cfg.channel, cfg.eqs_band);

    std::string csv = "frequency_hz,gain_db\n";
    for (std::size_t i = 0; i < calibrated.frequencies_hz.size(); ++i)
        csv += format_double(calibrated.frequencies_hz[i]) + ',' +
               format_double(calibrated.gain_db[i]) + '\n';
    write_file(out_path, csv);

    if (!fit_out.empty()) {
        json doc;
        doc["config"] = echo_json(cfg);
        doc["fitted_c_b_f"] = fit.c_b_f;
        doc["rms_residual_db"] = fit.rms_residual_db;
        doc["identifiable"] = fit.identifiable;
        doc["objective_evaluations"] = fit.evaluations;
        write_file(fit_out, doc.dump(2) + "\n");
    }

    std::cout << "calibrated " << records.size() << " records; fitted C_B = "
              << format_double(fit.c_b_f * 1e12) << " pF"
              << (fit.identifiable ? "" : " (NOT identifiable)")
              << ", rms residual " << format_double(fit.rms_residual_db) << " dB\n";
    return fit.identifiable ? 0 : 2;
}

// Built-in correctness checks against independently evaluated references.
int cmd_oracle(bool quiet)
{
    int failures = 0;
    const auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        if (!pass)
            ++failures;
        if (!quiet || !pass)
            std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
    };

    // Uniform lossy line: 1000 cascaded sections against the closed-form
    // full-length chain matrix, evaluated here from scratch.
    {
        PerUnitLengthParams pul{30.0, 250e-9, 1e-5, 100e-12};
        const double f = 50e6;
        const double length = 1.5;
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<TwoPort> chain(1000, segment_twoport(pul, length / 1000.0, f));
        const TwoPort product = cascade(chain);
        const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);

        const std::complex<double> z(pul.r_ohm_per_m, 2 * constants::pi * f * pul.l_h_per_m);
        const std::complex<double> y(pul.g_s_per_m, 2 * constants::pi * f * pul.c_f_per_m);
        const std::complex<double> gamma_l = std::sqrt(z * y) * length;
        const std::complex<double> z0 = std::sqrt(z / y);
        const std::complex<double> ref_a = std::cosh(gamma_l);
        const std::complex<double> ref_b = z0 * std::sinh(gamma_l);
        const std::complex<double> ref_c = std::sinh(gamma_l) / z0;

        const double err = std::max({std::abs(product.a - ref_a) / std::abs(ref_a),
                                     std::abs(product.b - ref_b) / std::abs(ref_b),
                                     std::abs(product.c - ref_c) / std::abs(ref_c),
                                     std::abs(product.d - ref_a) / std::abs(ref_a)});
        check("uniform-line cascade", err < 1e-6 && elapsed.count() < 1.0,
              "max relative error " + format_double(err) + ", " +
                  format_double(elapsed.count()) + " s");
    }

    // Dipole slope law in the near and far zones.
    {
        const Medium air = Medium::free_space();
        const DipoleSource src{1e-3, 0.01, 100e6};
        const double beta = air.wavenumber_rad_per_m(src.frequency_hz);
        const auto fitted_slope = [&](double br_lo, double br_hi) {
            const int n = 64;
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (int i = 0; i < n; ++i) {
                const double br = br_lo * std::pow(br_hi / br_lo, double(i) / (n - 1));
                const double r = br / beta;
                const EmField fld = fields_at(src, air, {r, constants::pi / 2, 0.0});
                const double x = std::log10(r);
                const double y = std::log10(std::abs(fld.e_theta));
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };
        const double near_slope = fitted_slope(1e-4, 1e-2);
        const double far_slope = fitted_slope(1e2, 1e4);
        check("dipole near-zone slope", std::abs(near_slope + 3.0) < 0.05,
              "fitted " + format_double(near_slope));
        check("dipole far-zone slope", std::abs(far_slope + 1.0) < 0.05,
              "fitted " + format_double(far_slope));

        const EmField far = fields_at(src, air, {20.95 / beta, constants::pi / 2, 0.0});
        const double ratio = std::abs(far.e_theta) / std::abs(far.h_phi);
        check("far-field wave impedance", std::abs(ratio - constants::eta0_ohm) <
                                              0.005 * constants::eta0_ohm,
              "|E_theta/H_phi| = " + format_double(ratio));
    }

    // Radiated power: Simpson quadrature of the radial Poynting flux over a
    // sphere against the closed-form dipole radiated power.
    {
        const Medium air = Medium::free_space();
        const DipoleSource src{1e-3, 0.01, 100e6};
        const double beta = air.wavenumber_rad_per_m(src.frequency_hz);
        const double moment = src.current_a * src.length_m;
        const double p_ref = constants::eta0_ohm * beta * beta * moment * moment /
                             (12.0 * constants::pi);
        const auto sphere_power = [&](double r) {
            const int n = 2000;
            double sum = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double theta = constants::pi * i / n;
                const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                const EmField fld = fields_at(src, air, {r, theta, 0.0});
                sum += w * radial_poynting_w_per_m2(fld) * std::sin(theta);
            }
            return sum * (constants::pi / n) / 3.0 * 2.0 * constants::pi * r * r;
        };
        const double p_near = sphere_power(0.01 / beta);
        const double p_far = sphere_power(1e3 / beta);
        check("radiated power (near sphere)", std::abs(p_near - p_ref) < 1e-6 * p_ref,
              format_double(p_near) + " W vs " + format_double(p_ref) + " W");
        check("radiated power (far sphere)", std::abs(p_far - p_ref) < 1e-6 * p_ref,
              format_double(p_far) + " W vs " + format_double(p_ref) + " W");
    }

    if (failures == 0 && !quiet)
        std::cout << "all oracles passed\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Frequency-domain channel and link-budget modeling for "
                 "body-resonance human body communication"};
    app.require_subcommand(1);

    std::string config_path, out_path, band_spec, power_out, fit_out;
    std::string measurement_path, rx_corr_path, buffer_corr_path;
    double freq_hz = 0.0, tx_offset_db = 0.0;
    SweepOverrides overrides;
    bool quiet = false;

    int points = 0, segments = 0;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "scenario file")->required();
        cmd->add_option("--points", points, "override sweep point count");
        cmd->add_option("--segments", segments, "override line segment count");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "frequency sweep: gain CSV + feature JSON");
    add_common(sweep);
    sweep->add_option("--out", out_path, "output CSV path")->required();

    CLI::App* capacity = app.add_subcommand("capacity", "Shannon capacity report");
    add_common(capacity);
    capacity->add_option("--out", out_path, "output JSON path")->required();
    capacity->add_option("--band", band_spec, "band override 'lo_hz,hi_hz'");

    CLI::App* safety = app.add_subcommand("safety", "exposure margins and transmit power");
    add_common(safety);
    safety->add_option("--out", out_path, "output JSON path")->required();
    safety->add_option("--freq", freq_hz, "evaluation frequency (default: BR peak)");
    safety->add_option("--power-out", power_out, "also sweep I_Tx/P_Tx to this CSV");

    CLI::App* leakage = app.add_subcommand("leakage", "off-body confinement profile");
    add_common(leakage);
    leakage->add_option("--out", out_path, "output CSV path")->required();
    leakage->add_option("--freq", freq_hz, "evaluation frequency (default: BR peak)");

    CLI::App* calibrate = app.add_subcommand("calibrate", "calibrate a measured sweep and fit C_B");
    calibrate->add_option("--config", config_path, "scenario file")->required();
    calibrate->add_option("--measurement", measurement_path, "measured sweep CSV")->required();
    calibrate->add_option("--rx-correction", rx_corr_path, "receiver correction CSV");
    calibrate->add_option("--buffer-correction", buffer_corr_path, "buffer correction CSV");
    calibrate->add_option("--tx-offset-db", tx_offset_db, "transmitter correction offset");
    calibrate->add_option("--out", out_path, "calibrated gain CSV path")->required();
    calibrate->add_option("--fit-out", fit_out, "fit report JSON path");

    CLI::App* oracle = app.add_subcommand("oracle", "run built-in correctness oracles");
    oracle->add_flag("--quiet", quiet, "only print failures");

    CLI11_PARSE(app, argc, argv);

    if (points > 0)
        overrides.points = points;
    if (segments > 0)
        overrides.segments = segments;

    try {
        if (sweep->parsed())
            return cmd_sweep(config_path, out_path, overrides);
        if (capacity->parsed())
            return cmd_capacity(config_path, out_path, overrides, band_spec);
        if (safety->parsed())
            return cmd_safety(config_path, out_path, overrides, freq_hz, power_out);
        if (leakage->parsed())
            return cmd_leakage(config_path, out_path, overrides, freq_hz);
        if (calibrate->parsed())
            return cmd_calibrate(config_path, measurement_path, rx_corr_path, buffer_corr_path,
                                 tx_offset_db, out_path, fit_out);
        if (oracle->parsed())
            return cmd_oracle(quiet);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
