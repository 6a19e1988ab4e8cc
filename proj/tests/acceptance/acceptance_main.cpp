// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors
//
// End-to-end acceptance suite. Runs every release criterion at its pinned
// tolerance against the shipped scenario files and prints one PASS/FAIL
// line per criterion. Exits non-zero if any criterion fails.
//
// Usage: brhbc_acceptance <path-to-brhbc-cli> <configs-dir>

#include "brhbc/brhbc.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace brhbc;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail)
{
    if (!pass)
        ++g_failures;
    std::printf("[%s] %2d %-28s %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v)
{
    return format_double(v);
}

double gain_db_at(const BodyChannel& channel, double f)
{
    return 20.0 * std::log10(std::abs(channel.transfer(f)));
}

struct PeakInfo {
    bool unique_dominant = false;
    double f_c_hz = 0.0;
    double gain_db = 0.0;
    int peak_count = 0;
};

PeakInfo dominant_info(const ChannelResponse& resp)
{
    PeakInfo info;
    const auto features = find_features(resp);
    const auto best = dominant_peak(features);
    for (const auto& f : features)
        if (f.kind == SpectralFeature::Kind::peak)
            ++info.peak_count;
    if (best) {
        info.f_c_hz = best->f_c_hz;
        info.gain_db = best->gain_db;
        info.unique_dominant = info.peak_count == 1;
    }
    return info;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------- criteria

void criterion_uniform_line()
{
    const PerUnitLengthParams pul{30.0, 250e-9, 1e-5, 100e-12};
    const double f = 50e6;
    const double length = 1.5;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TwoPort> chain(1000, segment_twoport(pul, length / 1000.0, f));
    const TwoPort product = cascade(chain);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // Oracle: the closed-form uniform-line chain matrix, evaluated directly.
    const double omega = 2.0 * constants::pi * f;
    const std::complex<double> z(pul.r_ohm_per_m, omega * pul.l_h_per_m);
    const std::complex<double> y(pul.g_s_per_m, omega * pul.c_f_per_m);
    const std::complex<double> gamma_l = std::sqrt(z * y) * length;
    const std::complex<double> z0 = std::sqrt(z / y);
    const std::complex<double> a_ref = std::cosh(gamma_l);
    const std::complex<double> b_ref = z0 * std::sinh(gamma_l);
    const std::complex<double> c_ref = std::sinh(gamma_l) / z0;

    const double err = std::max({std::abs(product.a - a_ref) / std::abs(a_ref),
                                 std::abs(product.b - b_ref) / std::abs(b_ref),
                                 std::abs(product.c - c_ref) / std::abs(c_ref),
                                 std::abs(product.d - a_ref) / std::abs(a_ref)});
    report(1, "uniform-line oracle", err < 1e-6 && seconds < 1.0,
           "N=1000 cascade vs closed form: max rel err " + fmt(err) + " (tol 1e-6), " +
               fmt(seconds) + " s (limit 1)");
}

void criterion_dipole_laws()
{
    const DipoleSource src{1e-3, 0.01, 100e6};
    const Medium air = Medium::free_space();
    const double beta = air.wavenumber_rad_per_m(src.frequency_hz);

    const auto slope = [&](double br_lo, double br_hi) {
        const int n = 64;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            const double br = br_lo * std::pow(br_hi / br_lo, double(i) / (n - 1));
            const EmField fld = fields_at(src, air, {br / beta, constants::pi / 2.0, 0.0});
            const double x = std::log10(br / beta);
            const double y = std::log10(std::abs(fld.e_theta));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };

    const double near_slope = slope(1e-4, 1e-2);
    const double far_slope = slope(1e2, 1e4);

    double worst_eta_dev = 0.0;
    for (double br = 20.0; br <= 2000.0; br *= 2.0) {
        const EmField fld = fields_at(src, air, {br / beta, constants::pi / 2.0, 0.0});
        const double ratio = std::abs(fld.e_theta) / std::abs(fld.h_phi);
        worst_eta_dev =
            std::max(worst_eta_dev, std::abs(ratio - constants::eta0_ohm) / constants::eta0_ohm);
    }

    const bool pass = std::abs(near_slope + 3.0) <= 0.05 && std::abs(far_slope + 1.0) <= 0.05 &&
                      worst_eta_dev <= 0.005;
    report(2, "dipole slope law", pass,
           "near slope " + fmt(near_slope) + " (-3.00 +/- 0.05), far slope " + fmt(far_slope) +
               " (-1.00 +/- 0.05), |E/H| dev " + fmt(worst_eta_dev * 100.0) + "% (tol 0.5%)");
}

void criterion_br_peak(const ScenarioConfig& reference)
{
    FrequencySweep sweep = reference.sweep;
    sweep.points = 1024;

    const auto t0 = std::chrono::steady_clock::now();
    const ChannelResponse resp = sweep_gain(reference.channel, sweep, reference.v_in_volts);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const PeakInfo peak = dominant_info(resp);
    const bool in_band = peak.f_c_hz >= 50e6 && peak.f_c_hz <= 150e6;
    report(3, "BR peak location", peak.unique_dominant && in_band && seconds < 10.0,
           "one dominant peak at " + fmt(peak.f_c_hz / 1e6) + " MHz (window [50, 150]), " +
               std::to_string(peak.peak_count) + " peak(s), 1024-point sweep in " + fmt(seconds) +
               " s (limit 10)");
}

void criterion_resonance_uplift(const ScenarioConfig& copper, const ScenarioConfig& tissue)
{
    const ChannelResponse copper_resp = sweep_gain(copper.channel, copper.sweep);
    const ChannelResponse tissue_resp = sweep_gain(tissue.channel, tissue.sweep);
    const PeakInfo copper_peak = dominant_info(copper_resp);
    const PeakInfo tissue_peak = dominant_info(tissue_resp);

    const double uplift = copper_peak.gain_db - gain_db_at(copper.channel, 1e6);
    const double deficit = copper_peak.gain_db - tissue_peak.gain_db;

    const bool pass = uplift >= 10.0 && uplift <= 20.0 && deficit >= 5.0 && deficit <= 13.0;
    report(4, "resonance gain uplift", pass,
           "copper peak vs 1 MHz: " + fmt(uplift) + " dB (15 +/- 5); tissue deficit " +
               fmt(deficit) + " dB (9 +/- 4)");
}

void criterion_capacity_ratio(const ScenarioConfig& reference)
{
    const ChannelResponse resp = sweep_gain(reference.channel, reference.sweep);
    const CapacityReport report_br = shannon_capacity(resp, reference.noise,
                                                      reference.tx_power_dbm, reference.br_band,
                                                      reference.eqs_band);
    report(5, "capacity ratio", report_br.comparison_ratio >= 10.0,
           "BR [30, 300] MHz vs EQS [0.1, 20] MHz at equal Tx power: " +
               fmt(report_br.comparison_ratio) + "x (floor 10x); BR capacity " +
               fmt(report_br.capacity_bits_per_s / 1e9) + " Gbit/s");
}

void criterion_termination(const ScenarioConfig& capacitive, const ScenarioConfig& resistive)
{
    const FrequencySweep eqs{1e5, 1e7, 201, FrequencySweep::Spacing::log};

    const ChannelResponse flat_resp = sweep_gain(capacitive.channel, eqs);
    double flat_min = 1e300, flat_max = -1e300;
    for (const double g : flat_resp.gain_db) {
        flat_min = std::min(flat_min, g);
        flat_max = std::max(flat_max, g);
    }
    const double flatness = flat_max - flat_min;

    const ChannelResponse slope_resp = sweep_gain(resistive.channel, eqs);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(slope_resp.frequencies_hz.size());
    for (int i = 0; i < n; ++i) {
        const double x = std::log10(slope_resp.frequencies_hz[i]);
        const double y = slope_resp.gain_db[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    const bool pass = flatness <= 1.0 && std::abs(slope - 20.0) <= 2.0;
    report(6, "termination behavior", pass,
           "2.3 pF termination: EQS ripple " + fmt(flatness) + " dB (tol 1); 50 ohm || 2.3 pF: " +
               fmt(slope) + " dB/decade (20 +/- 2)");
}

void criterion_leakage(const ScenarioConfig& leakage_cfg)
{
    const ChannelResponse resp = sweep_gain(leakage_cfg.channel, leakage_cfg.sweep);
    std::vector<SpectralFeature> peaks;
    for (const auto& f : find_features(resp))
        if (f.kind == SpectralFeature::Kind::peak && f.f_c_hz >= leakage_cfg.br_band.lo_hz &&
            f.f_c_hz <= leakage_cfg.br_band.hi_hz)
            peaks.push_back(f);
    const auto best = dominant_peak(peaks);
    if (!best) {
        report(7, "leakage confinement", false, "no BR-band peak found");
        return;
    }

    const double f_peak = best->f_c_hz;
    const LeakageProfile at_half =
        offbody_profile(leakage_cfg.channel, f_peak, std::vector<double>{0.5});

    const double r_d = radiation_zone_radius_m(Medium::free_space(), f_peak);
    std::vector<double> beyond;
    for (double d = r_d * 1.05; d < 30.0; d *= 1.2)
        beyond.push_back(d);
    const LeakageProfile tail = offbody_profile(leakage_cfg.channel, f_peak, beyond);
    bool strictly_decreasing = true;
    for (std::size_t i = 1; i < tail.ratio.size(); ++i)
        strictly_decreasing = strictly_decreasing && tail.ratio[i] < tail.ratio[i - 1];

    const bool pass = at_half.ratio.front() < 0.1 && strictly_decreasing;
    report(7, "leakage confinement", pass,
           "V_off/V_on at 0.5 m, " + fmt(f_peak / 1e6) + " MHz: " + fmt(at_half.ratio.front()) +
               " (tol < 0.1); strictly decreasing beyond r_d = " + fmt(r_d) + " m: " +
               (strictly_decreasing ? "yes" : "no"));
}

void criterion_safety(const ScenarioConfig& reference)
{
    const ChannelResponse resp = sweep_gain(reference.channel, reference.sweep);
    const PeakInfo peak = dominant_info(resp);
    const ExposureLimits limits =
        ExposureLimits::builtin_defaults(reference.safety.sar_limit_w_per_kg);

    const ExposureReport at_1v = exposure_estimate(reference.channel, peak.f_c_hz, 1.0, limits,
                                                   reference.safety.tissue_density_kg_per_m3);
    const ExposureReport at_2v = exposure_estimate(reference.channel, peak.f_c_hz, 2.0, limits,
                                                   reference.safety.tissue_density_kg_per_m3);
    const double sar_scaling = at_2v.sar_whole_body_w_per_kg / at_1v.sar_whole_body_w_per_kg;

    const bool pass = at_1v.margin_e >= 10.0 && at_1v.margin_h >= 10.0 &&
                      at_1v.margin_sar >= 100.0 && std::abs(sar_scaling - 4.0) <= 1e-9 * 4.0;
    report(8, "safety floors", pass,
           "margins at 1 V: E " + fmt(at_1v.margin_e) + "x (>= 10), H " + fmt(at_1v.margin_h) +
               "x (>= 10), SAR " + fmt(at_1v.margin_sar) + "x (>= 100); SAR doubling factor " +
               fmt(sar_scaling) + " (= 4)");
}

void criterion_length_scaling()
{
    // First resonance of the ideally driven open lossless line: the first
    // zero of Re(A) = cos(beta l), located by bisection.
    const auto first_resonance = [](double length) {
        BodyChannel ch;
        BodySegment seg;
        seg.length_m = length;
        seg.outer_radius_m = 0.06;
        seg.skin_thickness_m = 0.004;
        seg.height_above_ground_m = 1.0;
        seg.tissue_outer = "copper";
        seg.tissue_inner = "copper";
        ch.segments = {seg};
        ch.termination.c_l_f = 2.3e-12;
        ch.ground.c_b_f = 1e-18;
        ch.options.radiation_factor = 0.0;
        ch.options.n_segments = 64;

        const auto re_a = [&](double f) { return ch.line_twoport(f).a.real(); };
        double f_prev = 1e6;
        double a_prev = re_a(f_prev);
        for (double f = 2e6; f <= 2e8; f += 1e6) {
            const double a = re_a(f);
            if ((a_prev > 0.0) != (a > 0.0)) {
                double lo = f_prev, hi = f;
                for (int i = 0; i < 60; ++i) {
                    const double mid = 0.5 * (lo + hi);
                    if ((re_a(mid) > 0.0) == (a_prev > 0.0))
                        lo = mid;
                    else
                        hi = mid;
                }
                return 0.5 * (lo + hi);
            }
            f_prev = f;
            a_prev = a;
        }
        return 0.0;
    };

    const double f1 = first_resonance(1.5);
    const double f2 = first_resonance(3.0);
    const double deviation = std::abs(f2 - 0.5 * f1) / (0.5 * f1);
    report(9, "length scaling", f1 > 0.0 && f2 > 0.0 && deviation <= 0.02,
           "first resonance " + fmt(f1 / 1e6) + " MHz at 1.5 m vs " + fmt(f2 / 1e6) +
               " MHz at 3.0 m: halving deviation " + fmt(deviation * 100.0) + "% (tol 2%)");
}

void criterion_calibration(const ScenarioConfig& reference)
{
    // Zero-offset calibration is the raw subtraction, exactly.
    const std::vector<SweepRecord> raw{{1e6, -45.0, -5.0}, {5e6, -48.5, -5.0}};
    const ChannelResponse plain = calibrated_gain(raw, {});
    const bool exact = plain.gain_db[0] == -40.0 && plain.gain_db[1] == -43.5;

    // Self-consistency: data generated by the model at C_B = 150 pF with
    // +/- 0.1 dB noise must refit within 10%.
    BodyChannel truth = reference.channel;
    truth.ground.c_b_f = 150e-12;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> noise(-0.1, 0.1);
    std::vector<SweepRecord> synth;
    const FrequencySweep eqs{1e5, 2e7, 41, FrequencySweep::Spacing::log};
    for (const double f : eqs.grid()) {
        const double gain_db = 20.0 * std::log10(std::abs(truth.transfer(f)));
        synth.push_back({f, -5.0 + gain_db + noise(rng), -5.0});
    }
    const CapacitanceFit fit = fit_body_ground_capacitance(calibrated_gain(synth, {}),
                                                           reference.channel, reference.eqs_band);
    const double rel_err = std::abs(fit.c_b_f - 150e-12) / 150e-12;

    const bool pass = exact && fit.identifiable && rel_err <= 0.10;
    report(10, "calibration round trip", pass,
           std::string("zero-offset subtraction exact: ") + (exact ? "yes" : "no") +
               "; C_B refit " + fmt(fit.c_b_f * 1e12) + " pF vs 150 pF (err " +
               fmt(rel_err * 100.0) + "%, tol 10%)");
}

void criterion_determinism(const std::string& cli, const std::string& configs_dir)
{
    const std::string config = configs_dir + "/reference_body.cfg";
    const std::string cmd1 = "\"" + cli + "\" sweep --config \"" + config +
                             "\" --out acceptance_run1.csv > /dev/null 2>&1";
    const std::string cmd2 = "\"" + cli + "\" sweep --config \"" + config +
                             "\" --out acceptance_run2.csv > /dev/null 2>&1";
    const int rc1 = std::system(cmd1.c_str());
    const int rc2 = std::system(cmd2.c_str());

    const std::string a = slurp("acceptance_run1.csv");
    const std::string b = slurp("acceptance_run2.csv");
    const bool pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    report(11, "sweep determinism", pass,
           "two CLI runs on the reference config: " + std::to_string(a.size()) +
               " bytes, byte-identical: " + (a == b && !a.empty() ? "yes" : "no"));
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::cerr << "usage: brhbc_acceptance <brhbc-cli> <configs-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string configs_dir = argv[2];

    try {
        const ScenarioConfig reference = load_scenario(configs_dir + "/reference_body.cfg");
        const ScenarioConfig reference_rl50 =
            load_scenario(configs_dir + "/reference_body_rl50.cfg");
        const ScenarioConfig copper = load_scenario(configs_dir + "/single_cylinder_copper.cfg");
        const ScenarioConfig tissue = load_scenario(configs_dir + "/single_cylinder_tissue.cfg");
        const ScenarioConfig leakage_cfg =
            load_scenario(configs_dir + "/leakage_confinement.cfg");

        criterion_uniform_line();
        criterion_dipole_laws();
        criterion_br_peak(reference);
        criterion_resonance_uplift(copper, tissue);
        criterion_capacity_ratio(reference);
        criterion_termination(reference, reference_rl50);
        criterion_leakage(leakage_cfg);
        criterion_safety(reference);
        criterion_length_scaling();
        criterion_calibration(reference);
        criterion_determinism(cli, configs_dir);
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 2;
    }

    std::printf("%d/11 criteria passed\n", 11 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
