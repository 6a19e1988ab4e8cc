// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_SCENARIO_HPP
#define BRHBC_SCENARIO_HPP

#include "brhbc/body_line.hpp"
#include "brhbc/channel.hpp"

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace brhbc {

struct AirPathSettings {
    bool enabled = false;
    AirPathParams params;
};

struct SafetySettings {
    std::string limits_file; // empty = bundled defaults
    double sar_limit_w_per_kg = 0.08;
    double tissue_density_kg_per_m3 = 1000.0;
    double sense_resistance_ohm = 1.0;
};

struct LeakageSettings {
    std::vector<double> distances_m = {0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
    double frequency_hz = 0.0; // 0 = evaluate at the dominant peak
};

/// Everything a run needs, resolved and validated: the assembled channel,
/// the sweep grid, drive and noise settings, analysis bands and the
/// per-command extras. `echo()` flattens every effective value (defaults
/// included) so outputs can embed the exact configuration they used.
struct ScenarioConfig {
    BodyChannel channel;
    FrequencySweep sweep;
    double v_in_volts = 1.0;
    double tx_power_dbm = -5.0;
    NoiseModel noise;
    Band eqs_band{1e5, 2e7};
    Band br_band{3e7, 3e8};
    AirPathSettings air;
    SafetySettings safety;
    LeakageSettings leakage;

    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Parses the sectioned key-value scenario grammar (see README for the
/// schema). Throws parse_error naming the file, section and key of any
/// problem, including unknown keys. Relative paths inside the file resolve
/// against the file's directory.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(std::istream& source, const std::string& display_name,
                              const std::string& base_dir);

} // namespace brhbc

#endif
