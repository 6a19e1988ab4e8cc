// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_TEXT_IO_HPP
#define BRHBC_TEXT_IO_HPP

#include <istream>
#include <string>
#include <vector>

namespace brhbc {

/// Shortest round-trip decimal rendering (std::to_chars). All emitted CSV
/// numbers go through this so that repeated runs are byte identical.
std::string format_double(double value);

/// Strict double parser; rejects trailing garbage. Throws parse_error.
double parse_double(const std::string& text, const std::string& context);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a comma-separated numeric table. The first non-comment line must
/// equal `expected_header` exactly; '#' lines and blank lines are ignored.
/// Throws parse_error naming the 1-based line number of any malformed row.
CsvTable read_csv(std::istream& source, const std::vector<std::string>& expected_header);

std::vector<std::string> split_csv_line(const std::string& line);
std::string trim(const std::string& text);

} // namespace brhbc

#endif
