// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors
//
// Subprocess contract checks for the command line tool.
// Usage: brhbc_cli_tests <brhbc-cli> <configs-dir> <data-dir>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void check(const std::string& name, bool pass, const std::string& detail = "")
{
    if (!pass)
        ++g_failures;
    std::printf("[%s] %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
}

bool file_exists(const std::string& path)
{
    return std::ifstream(path).good();
}

int run(const std::string& command)
{
    const int rc = std::system(command.c_str());
    return WEXITSTATUS(rc);
}

std::size_t count_lines(const std::string& path)
{
    std::ifstream in(path);
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line))
        ++lines;
    return lines;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 4) {
        std::cerr << "usage: brhbc_cli_tests <brhbc-cli> <configs-dir> <data-dir>\n";
        return 2;
    }
    const std::string cli = std::string("\"") + argv[1] + "\"";
    const std::string configs = argv[2];
    const std::string data = argv[3];
    const std::string reference = "\"" + configs + "/reference_body.cfg\"";

    // Missing config: non-zero exit, no partial output.
    {
        std::remove("cli_missing.csv");
        const int rc = run(cli + " sweep --config /nonexistent.cfg --out cli_missing.csv 2>/dev/null");
        check("missing config exits non-zero", rc != 0, "exit " + std::to_string(rc));
        check("missing config leaves no output", !file_exists("cli_missing.csv"));
    }

    // Low point count: sweep emitted, features skipped with a warning.
    {
        std::remove("cli_small.csv");
        std::remove("cli_small.csv.features.json");
        const int rc = run(cli + " sweep --config " + reference +
                           " --out cli_small.csv --points 16 2> cli_small.err");
        check("16-point sweep succeeds", rc == 0, "exit " + std::to_string(rc));
        check("16-point sweep has 16 rows", count_lines("cli_small.csv") == 17);
        check("features skipped below the minimum", !file_exists("cli_small.csv.features.json"));
        std::ifstream err("cli_small.err");
        std::stringstream buf;
        buf << err.rdbuf();
        check("skip warning mentions the minimum",
              buf.str().find("feature-detection minimum") != std::string::npos);
    }

    // Normal sweep: CSV plus features JSON with the config echo.
    {
        const int rc = run(cli + " sweep --config " + reference +
                           " --out cli_ref.csv --points 256 > /dev/null");
        check("sweep succeeds", rc == 0);
        check("sweep CSV written", file_exists("cli_ref.csv"));
        check("feature JSON written", file_exists("cli_ref.csv.features.json"));
        std::ifstream in("cli_ref.csv.features.json");
        std::stringstream buf;
        buf << in.rdbuf();
        check("feature JSON embeds the config echo",
              buf.str().find("ground_coupling.c_b_f") != std::string::npos);
    }

    // Degenerate capacity band.
    {
        const int rc = run(cli + " capacity --config " + reference +
                           " --out cli_cap.json --points 128 --band 5e7,5e7 2> cli_cap.err");
        std::ifstream err("cli_cap.err");
        std::stringstream buf;
        buf << err.rdbuf();
        check("zero-width band exits non-zero", rc != 0, "exit " + std::to_string(rc));
        check("zero-width band names the problem",
              buf.str().find("empty band") != std::string::npos);
    }

    // Oracle self-test contract.
    {
        const int rc = run(cli + " oracle --quiet");
        check("oracle passes on a clean build", rc == 0, "exit " + std::to_string(rc));
    }

    // Calibration demo fixture: fitted C_B within 10% of 150 pF.
    {
        const int rc = run(cli + " calibrate --config " + reference + " --measurement \"" + data +
                           "/example_measurement.csv\" --rx-correction \"" + data +
                           "/rx_correction.csv\" --buffer-correction \"" + data +
                           "/buffer_correction.csv\" --tx-offset-db 0.7 --out cli_calib.csv "
                           "--fit-out cli_fit.json > cli_calib.out");
        check("calibrate succeeds", rc == 0, "exit " + std::to_string(rc));
        std::ifstream fit("cli_fit.json");
        std::stringstream buf;
        buf << fit.rdbuf();
        const std::string text = buf.str();
        const auto pos = text.find("\"fitted_c_b_f\":");
        double c_b = 0.0;
        if (pos != std::string::npos)
            c_b = std::strtod(text.c_str() + pos + 15, nullptr);
        check("fitted C_B within 10% of 150 pF", c_b > 135e-12 && c_b < 165e-12,
              std::to_string(c_b * 1e12) + " pF");
    }

    // Leakage CSV schema.
    {
        const int rc = run(cli + " leakage --config \"" + configs +
                           "/leakage_confinement.cfg\" --out cli_leak.csv > /dev/null");
        check("leakage succeeds", rc == 0);
        std::ifstream in("cli_leak.csv");
        std::string header;
        std::getline(in, header);
        check("leakage CSV schema", header == "distance_m,v_off_volts,ratio", header);
    }

    std::printf("%s\n", g_failures == 0 ? "all CLI contract checks passed" : "CLI checks FAILED");
    return g_failures == 0 ? 0 : 1;
}
