// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/scenario.hpp"

#include "brhbc/errors.hpp"
#include "brhbc/text_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace brhbc {

namespace {

struct RawConfig {
    std::string name;
    // section -> key -> value, plus section order for error messages
    std::map<std::string, std::map<std::string, std::string>> sections;
    mutable std::set<std::string> consumed;

    std::string where(const std::string& section, const std::string& key) const
    {
        return name + ": [" + section + "] " + key;
    }

    bool has(const std::string& section, const std::string& key) const
    {
        const auto sec = sections.find(section);
        return sec != sections.end() && sec->second.count(key) != 0;
    }

    std::string get(const std::string& section, const std::string& key) const
    {
        const auto sec = sections.find(section);
        if (sec == sections.end() || sec->second.count(key) == 0)
            throw parse_error(where(section, key) + ": missing required key");
        consumed.insert(section + "\n" + key);
        return sec->second.at(key);
    }

    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const
    {
        if (!has(section, key))
            return fallback;
        return get(section, key);
    }

    double number(const std::string& section, const std::string& key) const
    {
        return parse_double(get(section, key), where(section, key));
    }

    double number_or(const std::string& section, const std::string& key, double fallback) const
    {
        if (!has(section, key))
            return fallback;
        return number(section, key);
    }

    bool flag_or(const std::string& section, const std::string& key, bool fallback) const
    {
        if (!has(section, key))
            return fallback;
        const std::string v = get(section, key);
        if (v == "true" || v == "yes" || v == "1")
            return true;
        if (v == "false" || v == "no" || v == "0")
            return false;
        throw parse_error(where(section, key) + ": expected a boolean, got '" + v + "'");
    }

    void reject_unknown() const
    {
        for (const auto& [section, keys] : sections)
            for (const auto& [key, value] : keys)
                if (consumed.count(section + "\n" + key) == 0)
                    throw parse_error(where(section, key) + ": unknown key");
    }
};

RawConfig read_raw(std::istream& source, const std::string& name)
{
    RawConfig raw;
    raw.name = name;
    std::string line;
    std::string section;
    long line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#' || stripped.front() == ';')
            continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']')
                throw parse_error(name + ":" + std::to_string(line_no) + ": unterminated section header");
            section = trim(stripped.substr(1, stripped.size() - 2));
            if (section.empty())
                throw parse_error(name + ":" + std::to_string(line_no) + ": empty section name");
            raw.sections[section];
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw parse_error(name + ":" + std::to_string(line_no) + ": expected 'key = value'");
        if (section.empty())
            throw parse_error(name + ":" + std::to_string(line_no) + ": key outside any [section]");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw parse_error(name + ":" + std::to_string(line_no) + ": empty key");
        if (!raw.sections[section].insert({key, value}).second)
            throw parse_error(name + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    return raw;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    for (const auto& piece : split_csv_line(text))
        if (!piece.empty())
            items.push_back(piece);
    return items;
}

std::string join_path(const std::string& base_dir, const std::string& path)
{
    if (path.empty() || path.front() == '/' || base_dir.empty())
        return path;
    return base_dir + "/" + path;
}

BodySegment parse_segment(const RawConfig& raw, const std::string& section)
{
    BodySegment seg;
    seg.length_m = raw.number(section, "length_m");
    seg.outer_radius_m = raw.number(section, "outer_radius_m");
    seg.skin_thickness_m = raw.number_or(section, "skin_thickness_m", 0.004);
    seg.height_above_ground_m = raw.number(section, "height_above_ground_m");
    seg.tissue_outer = raw.get_or(section, "tissue_outer", "skin_dry");
    seg.tissue_inner = raw.get_or(section, "tissue_inner", "muscle");
    return seg;
}

DeviceGeometry parse_device(const RawConfig& raw, const std::string& section)
{
    DeviceGeometry dev;
    dev.signal_plate_radius_m = raw.number_or(section, "signal_plate_radius_m", dev.signal_plate_radius_m);
    dev.plate_separation_m = raw.number_or(section, "plate_separation_m", dev.plate_separation_m);
    dev.ground_plate_area_m2 = raw.number_or(section, "ground_plate_area_m2", dev.ground_plate_area_m2);
    dev.ground_plate_thickness_m =
        raw.number_or(section, "ground_plate_thickness_m", dev.ground_plate_thickness_m);
    dev.ground_distance_m = raw.number_or(section, "ground_distance_m", dev.ground_distance_m);
    dev.skin_gap_m = raw.number_or(section, "skin_gap_m", dev.skin_gap_m);
    return dev;
}

void append_echo(std::vector<std::pair<std::string, std::string>>& echo, const std::string& key,
                 double value)
{
    echo.emplace_back(key, format_double(value));
}

} // namespace

ScenarioConfig parse_scenario(std::istream& source, const std::string& display_name,
                              const std::string& base_dir)
{
    const RawConfig raw = read_raw(source, display_name);
    ScenarioConfig cfg;

    // Custom tissues first so segment references resolve.
    for (const auto& [section, keys] : raw.sections) {
        if (section.rfind("tissue.", 0) != 0)
            continue;
        const std::string tissue_name = section.substr(7);
        const std::string file = join_path(base_dir, raw.get(section, "file"));
        std::ifstream in(file);
        if (!in)
            throw parse_error(raw.where(section, "file") + ": cannot open '" + file + "'");
        try {
            cfg.channel.tissues.add(load_dispersion_table(in, tissue_name));
        } catch (const std::exception& e) {
            throw parse_error(raw.where(section, "file") + ": " + e.what());
        }
    }

    const auto path_names = split_list(raw.get("body", "path"));
    if (path_names.empty())
        throw parse_error(raw.where("body", "path") + ": needs at least one segment name");
    for (const auto& seg_name : path_names) {
        const std::string section = "segment." + seg_name;
        if (raw.sections.count(section) == 0)
            throw parse_error(display_name + ": [body] path references undefined [" + section + "]");
        cfg.channel.segments.push_back(parse_segment(raw, section));
    }

    cfg.channel.tx_device = parse_device(raw, "tx_device");
    cfg.channel.rx_device = parse_device(raw, "rx_device");

    {
        const std::string r_l = raw.get_or("termination", "r_l_ohm", "inf");
        const std::string c_l = raw.get_or("termination", "c_l_f", "2.3e-12");
        if (r_l != "inf" && r_l != "none")
            cfg.channel.termination.r_l_ohm = parse_double(r_l, raw.where("termination", "r_l_ohm"));
        if (c_l != "none")
            cfg.channel.termination.c_l_f = parse_double(c_l, raw.where("termination", "c_l_f"));
    }

    cfg.channel.ground.c_b_f = raw.number_or("ground_coupling", "c_b_f", cfg.channel.ground.c_b_f);
    {
        const std::string mode = raw.get_or("ground_coupling", "distribution", "distributed");
        if (mode == "distributed")
            cfg.channel.ground.distributed = true;
        else if (mode == "lumped")
            cfg.channel.ground.distributed = false;
        else
            throw parse_error(raw.where("ground_coupling", "distribution") +
                              ": expected 'distributed' or 'lumped', got '" + mode + "'");
    }

    cfg.channel.options.n_segments =
        static_cast<int>(raw.number_or("line", "n_segments", cfg.channel.options.n_segments));
    cfg.channel.options.radiation_factor =
        raw.number_or("line", "radiation_factor", cfg.channel.options.radiation_factor);
    cfg.channel.options.source_resistance_ohm =
        raw.number_or("line", "source_resistance_ohm", cfg.channel.options.source_resistance_ohm);

    cfg.v_in_volts = raw.number_or("excitation", "v_in_volts", cfg.v_in_volts);
    cfg.tx_power_dbm = raw.number_or("excitation", "tx_power_dbm", cfg.tx_power_dbm);

    cfg.sweep.f_start_hz = raw.number_or("sweep", "f_start_hz", cfg.sweep.f_start_hz);
    cfg.sweep.f_stop_hz = raw.number_or("sweep", "f_stop_hz", cfg.sweep.f_stop_hz);
    cfg.sweep.points = static_cast<int>(raw.number_or("sweep", "points", cfg.sweep.points));
    {
        const std::string spacing = raw.get_or("sweep", "spacing", "log");
        if (spacing == "log")
            cfg.sweep.spacing = FrequencySweep::Spacing::log;
        else if (spacing == "linear")
            cfg.sweep.spacing = FrequencySweep::Spacing::linear;
        else
            throw parse_error(raw.where("sweep", "spacing") + ": expected 'log' or 'linear', got '" +
                              spacing + "'");
    }

    cfg.noise.temperature_k = raw.number_or("noise", "temperature_k", cfg.noise.temperature_k);
    cfg.noise.noise_figure_db = raw.number_or("noise", "noise_figure_db", cfg.noise.noise_figure_db);
    {
        const std::string floor = raw.get_or("noise", "extra_floor_dbm_per_hz", "none");
        if (floor != "none")
            cfg.noise.extra_floor_dbm_per_hz =
                parse_double(floor, raw.where("noise", "extra_floor_dbm_per_hz"));
    }

    cfg.eqs_band.lo_hz = raw.number_or("bands", "eqs_lo_hz", cfg.eqs_band.lo_hz);
    cfg.eqs_band.hi_hz = raw.number_or("bands", "eqs_hi_hz", cfg.eqs_band.hi_hz);
    cfg.br_band.lo_hz = raw.number_or("bands", "br_lo_hz", cfg.br_band.lo_hz);
    cfg.br_band.hi_hz = raw.number_or("bands", "br_hi_hz", cfg.br_band.hi_hz);

    cfg.air.enabled = raw.flag_or("air_path", "enabled", cfg.air.enabled);
    cfg.air.params.los_distance_m =
        raw.number_or("air_path", "los_distance_m", cfg.air.params.los_distance_m);
    cfg.air.params.eps_eff = raw.number_or("air_path", "eps_eff", cfg.air.params.eps_eff);
    cfg.air.params.scale = raw.number_or("air_path", "scale", cfg.air.params.scale);

    if (raw.has("safety", "limits_file"))
        cfg.safety.limits_file = join_path(base_dir, raw.get("safety", "limits_file"));
    cfg.safety.sar_limit_w_per_kg =
        raw.number_or("safety", "sar_limit_w_per_kg", cfg.safety.sar_limit_w_per_kg);
    cfg.safety.tissue_density_kg_per_m3 =
        raw.number_or("safety", "tissue_density_kg_per_m3", cfg.safety.tissue_density_kg_per_m3);
    cfg.safety.sense_resistance_ohm =
        raw.number_or("safety", "sense_resistance_ohm", cfg.safety.sense_resistance_ohm);

    if (raw.has("leakage", "distances_m")) {
        cfg.leakage.distances_m.clear();
        for (const auto& item : split_list(raw.get("leakage", "distances_m")))
            cfg.leakage.distances_m.push_back(
                parse_double(item, raw.where("leakage", "distances_m")));
    }
    cfg.leakage.frequency_hz = raw.number_or("leakage", "frequency_hz", cfg.leakage.frequency_hz);

    raw.reject_unknown();

    try {
        cfg.channel.validate();
        cfg.sweep.validate();
        cfg.noise.validate();
        if (cfg.air.enabled)
            cfg.air.params.validate();
    } catch (const std::exception& e) {
        throw parse_error(display_name + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open scenario file '" + path + "'");
    std::string base_dir;
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos)
        base_dir = path.substr(0, slash);
    return parse_scenario(in, path, base_dir);
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::echo() const
{
    std::vector<std::pair<std::string, std::string>> echo;
    for (std::size_t i = 0; i < channel.segments.size(); ++i) {
        const auto& seg = channel.segments[i];
        const std::string prefix = "segment." + std::to_string(i) + ".";
        append_echo(echo, prefix + "length_m", seg.length_m);
        append_echo(echo, prefix + "outer_radius_m", seg.outer_radius_m);
        append_echo(echo, prefix + "skin_thickness_m", seg.skin_thickness_m);
        append_echo(echo, prefix + "height_above_ground_m", seg.height_above_ground_m);
        echo.emplace_back(prefix + "tissue_outer", seg.tissue_outer);
        echo.emplace_back(prefix + "tissue_inner", seg.tissue_inner);
    }
    const auto echo_device = [&](const std::string& prefix, const DeviceGeometry& dev) {
        append_echo(echo, prefix + "signal_plate_radius_m", dev.signal_plate_radius_m);
        append_echo(echo, prefix + "plate_separation_m", dev.plate_separation_m);
        append_echo(echo, prefix + "ground_plate_area_m2", dev.ground_plate_area_m2);
        append_echo(echo, prefix + "ground_plate_thickness_m", dev.ground_plate_thickness_m);
        append_echo(echo, prefix + "ground_distance_m", dev.ground_distance_m);
        append_echo(echo, prefix + "skin_gap_m", dev.skin_gap_m);
    };
    echo_device("tx_device.", channel.tx_device);
    echo_device("rx_device.", channel.rx_device);

    echo.emplace_back("termination.r_l_ohm",
                      channel.termination.r_l_ohm ? format_double(*channel.termination.r_l_ohm) : "inf");
    echo.emplace_back("termination.c_l_f",
                      channel.termination.c_l_f ? format_double(*channel.termination.c_l_f) : "none");
    append_echo(echo, "ground_coupling.c_b_f", channel.ground.c_b_f);
    echo.emplace_back("ground_coupling.distribution",
                      channel.ground.distributed ? "distributed" : "lumped");
    append_echo(echo, "line.n_segments", channel.options.n_segments);
    append_echo(echo, "line.radiation_factor", channel.options.radiation_factor);
    append_echo(echo, "line.source_resistance_ohm", channel.options.source_resistance_ohm);
    append_echo(echo, "excitation.v_in_volts", v_in_volts);
    append_echo(echo, "excitation.tx_power_dbm", tx_power_dbm);
    append_echo(echo, "sweep.f_start_hz", sweep.f_start_hz);
    append_echo(echo, "sweep.f_stop_hz", sweep.f_stop_hz);
    append_echo(echo, "sweep.points", sweep.points);
    echo.emplace_back("sweep.spacing",
                      sweep.spacing == FrequencySweep::Spacing::log ? "log" : "linear");
    append_echo(echo, "noise.temperature_k", noise.temperature_k);
    append_echo(echo, "noise.noise_figure_db", noise.noise_figure_db);
    echo.emplace_back("noise.extra_floor_dbm_per_hz",
                      noise.extra_floor_dbm_per_hz ? format_double(*noise.extra_floor_dbm_per_hz)
                                                   : "none");
    append_echo(echo, "bands.eqs_lo_hz", eqs_band.lo_hz);
    append_echo(echo, "bands.eqs_hi_hz", eqs_band.hi_hz);
    append_echo(echo, "bands.br_lo_hz", br_band.lo_hz);
    append_echo(echo, "bands.br_hi_hz", br_band.hi_hz);
    echo.emplace_back("air_path.enabled", air.enabled ? "true" : "false");
    append_echo(echo, "air_path.los_distance_m", air.params.los_distance_m);
    append_echo(echo, "air_path.eps_eff", air.params.eps_eff);
    append_echo(echo, "air_path.scale", air.params.scale);
    echo.emplace_back("safety.limits_file", safety.limits_file.empty() ? "builtin" : safety.limits_file);
    append_echo(echo, "safety.sar_limit_w_per_kg", safety.sar_limit_w_per_kg);
    append_echo(echo, "safety.tissue_density_kg_per_m3", safety.tissue_density_kg_per_m3);
    append_echo(echo, "safety.sense_resistance_ohm", safety.sense_resistance_ohm);
    {
        std::string joined;
        for (const double d : leakage.distances_m)
            joined += (joined.empty() ? "" : ",") + format_double(d);
        echo.emplace_back("leakage.distances_m", joined);
    }
    append_echo(echo, "leakage.frequency_hz", leakage.frequency_hz);
    return echo;
}

} // namespace brhbc
