// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/text_io.hpp"

#include "brhbc/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <system_error>

namespace brhbc {

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& context)
{
    const std::string t = trim(text);
    if (t.empty())
        throw parse_error(context + ": empty numeric field");
    double value = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw parse_error(context + ": not a number: '" + t + "'");
    return value;
}

std::string trim(const std::string& text)
{
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

CsvTable read_csv(std::istream& source, const std::vector<std::string>& expected_header)
{
    CsvTable table;
    std::string line;
    long line_no = 0;
    bool header_seen = false;

    while (std::getline(source, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#')
            continue;

        const auto fields = split_csv_line(stripped);
        if (!header_seen) {
            if (fields != expected_header) {
                std::string want;
                for (const auto& h : expected_header)
                    want += (want.empty() ? "" : ",") + h;
                throw parse_error("line " + std::to_string(line_no) + ": expected header '" + want + "'");
            }
            table.header = fields;
            header_seen = true;
            continue;
        }
        if (fields.size() != expected_header.size())
            throw parse_error("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(expected_header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
            row.push_back(parse_double(fields[i], "line " + std::to_string(line_no) +
                                                      ", column '" + expected_header[i] + "'"));
        table.rows.push_back(std::move(row));
    }
    if (!header_seen)
        throw parse_error("empty table: no header line found");
    return table;
}

} // namespace brhbc
