// Copyright 2026 The purcell-t1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "purcell/impedance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace purcell {

namespace {

std::string to_decimal(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

double parse_number(std::string_view token, size_t line_no, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(token) + "'");
    return value;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

void check_table(const ImpedanceTable& table, size_t last_line) {
    if (table.rows.size() < 2)
        throw ParseError(last_line, "at least 2 data rows are required for interpolation");
    for (const auto& row : table.rows) {
        if (!std::isfinite(row.freq) || !std::isfinite(row.z.real()) || !std::isfinite(row.z.imag()))
            throw ParseError(last_line, "non-finite value in table");
    }
}

}  // namespace

Complex z_from_s(Complex s, double z_ref) { return z_ref * (1.0 + s) / (1.0 - s); }

Complex s_from_z(Complex z, double z_ref) { return (z - z_ref) / (z + z_ref); }

ImpedanceTable parse_touchstone_s1p(std::string_view text) {
    ImpedanceTable table;
    table.source = "touchstone";
    table.z_ref = 50.0;
    double unit_scale = 1e9;
    TouchstoneFormat format = TouchstoneFormat::ma;
    bool seen_option_line = false;

    const auto lines = split_lines(text);
    for (size_t i = 0; i < lines.size(); ++i) {
        const size_t line_no = i + 1;
        std::string_view line = lines[i];
        if (auto bang = line.find('!'); bang != std::string_view::npos)
            line = line.substr(0, bang);
        const auto fields = split_fields(line);
        if (fields.empty()) continue;

        if (fields[0].front() == '#') {
            if (seen_option_line) throw ParseError(line_no, "duplicate option line");
            seen_option_line = true;
            // "# <unit> <type> <format> R <zref>", every field optional.
            size_t f = fields[0].size() > 1 ? 0 : 1;
            std::vector<std::string> tokens;
            if (f == 0) tokens.push_back(upper(fields[0].substr(1)));
            for (size_t t = 1; t < fields.size(); ++t) tokens.push_back(upper(fields[t]));
            tokens.erase(std::remove(tokens.begin(), tokens.end(), std::string{}), tokens.end());
            size_t t = 0;
            if (t < tokens.size() &&
                (tokens[t] == "HZ" || tokens[t] == "KHZ" || tokens[t] == "MHZ" || tokens[t] == "GHZ")) {
                if (tokens[t] == "HZ") unit_scale = 1.0;
                else if (tokens[t] == "KHZ") unit_scale = 1e3;
                else if (tokens[t] == "MHZ") unit_scale = 1e6;
                else unit_scale = 1e9;
                ++t;
            }
            if (t < tokens.size() && tokens[t].size() == 1 &&
                std::string("SYZGH").find(tokens[t][0]) != std::string::npos) {
                if (tokens[t] != "S")
                    throw ParseError(line_no, "unsupported parameter type '" + tokens[t] +
                                                  "' (only S is accepted)");
                ++t;
            }
            if (t < tokens.size() && (tokens[t] == "RI" || tokens[t] == "MA" || tokens[t] == "DB")) {
                format = tokens[t] == "RI"   ? TouchstoneFormat::ri
                         : tokens[t] == "MA" ? TouchstoneFormat::ma
                                             : TouchstoneFormat::db;
                ++t;
            }
            if (t < tokens.size()) {
                if (tokens[t] != "R" || t + 1 >= tokens.size())
                    throw ParseError(line_no, "malformed option line");
                table.z_ref = parse_number(tokens[t + 1], line_no, "reference impedance");
                if (table.z_ref <= 0.0)
                    throw ParseError(line_no, "reference impedance must be > 0");
                t += 2;
            }
            if (t != tokens.size()) throw ParseError(line_no, "malformed option line");
            continue;
        }

        if (fields.size() != 3)
            throw ParseError(line_no, "expected 'freq v1 v2', got " +
                                          std::to_string(fields.size()) + " fields");
        const double freq = parse_number(fields[0], line_no, "frequency") * unit_scale;
        const double v1 = parse_number(fields[1], line_no, "value");
        const double v2 = parse_number(fields[2], line_no, "value");

        Complex s;
        switch (format) {
            case TouchstoneFormat::ri: s = {v1, v2}; break;
            case TouchstoneFormat::ma: s = std::polar(v1, v2 * M_PI / 180.0); break;
            case TouchstoneFormat::db:
                s = std::polar(std::pow(10.0, v1 / 20.0), v2 * M_PI / 180.0);
                break;
        }
        if (std::abs(1.0 - s) < 1e-15)
            throw ParseError(line_no, "S too close to 1, impedance conversion is singular");
        if (!table.rows.empty() && freq <= table.rows.back().freq)
            throw ParseError(line_no, "frequencies must be strictly increasing");
        table.rows.push_back({freq, z_from_s(s, table.z_ref)});
    }
    check_table(table, lines.size());
    return table;
}

std::string format_touchstone_s1p(const ImpedanceTable& table, TouchstoneFormat format,
                                  double z_ref) {
    std::ostringstream out;
    out << "! one-port impedance export\n";
    out << "# Hz S "
        << (format == TouchstoneFormat::ri ? "RI" : format == TouchstoneFormat::ma ? "MA" : "DB")
        << " R " << to_decimal(z_ref) << "\n";
    for (const auto& row : table.rows) {
        const Complex s = s_from_z(row.z, z_ref);
        out << to_decimal(row.freq) << " ";
        switch (format) {
            case TouchstoneFormat::ri:
                out << to_decimal(s.real()) << " " << to_decimal(s.imag());
                break;
            case TouchstoneFormat::ma:
                out << to_decimal(std::abs(s)) << " " << to_decimal(std::arg(s) * 180.0 / M_PI);
                break;
            case TouchstoneFormat::db:
                out << to_decimal(20.0 * std::log10(std::abs(s))) << " "
                    << to_decimal(std::arg(s) * 180.0 / M_PI);
                break;
        }
        out << "\n";
    }
    return out.str();
}

ImpedanceTable parse_csv_impedance(std::string_view text) {
    ImpedanceTable table;
    table.source = "csv";
    table.z_ref = 0.0;

    const auto lines = split_lines(text);
    bool seen_header = false;
    for (size_t i = 0; i < lines.size(); ++i) {
        const size_t line_no = i + 1;
        std::string_view line = lines[i];
        if (split_fields(line).empty()) continue;

        std::vector<std::string_view> cells;
        size_t start = 0;
        while (true) {
            size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma == std::string_view::npos ? comma
                                                                               : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (!seen_header) {
            if (cells.size() != 3 || cells[0] != "freq_hz" || cells[1] != "re_z_ohm" ||
                cells[2] != "im_z_ohm")
                throw ParseError(line_no, "expected header 'freq_hz,re_z_ohm,im_z_ohm'");
            seen_header = true;
            continue;
        }
        if (cells.size() != 3)
            throw ParseError(line_no, "expected 3 columns, got " + std::to_string(cells.size()));
        const double freq = parse_number(cells[0], line_no, "freq_hz");
        const double re = parse_number(cells[1], line_no, "re_z_ohm");
        const double im = parse_number(cells[2], line_no, "im_z_ohm");
        if (!table.rows.empty() && freq <= table.rows.back().freq)
            throw ParseError(line_no, "frequencies must be strictly increasing");
        table.rows.push_back({freq, {re, im}});
    }
    if (!seen_header) throw ParseError(1, "missing header 'freq_hz,re_z_ohm,im_z_ohm'");
    check_table(table, lines.size());
    return table;
}

std::string format_csv_impedance(const ImpedanceTable& table) {
    std::string out = "freq_hz,re_z_ohm,im_z_ohm\n";
    for (const auto& row : table.rows) {
        out += to_decimal(row.freq);
        out += ',';
        out += to_decimal(row.z.real());
        out += ',';
        out += to_decimal(row.z.imag());
        out += '\n';
    }
    return out;
}

Complex interpolate_impedance(const ImpedanceTable& table, double freq) {
    if (table.rows.size() < 2) throw std::out_of_range("impedance table has fewer than 2 rows");
    if (freq < table.min_freq() || freq > table.max_freq())
        throw std::out_of_range("frequency outside table range (no extrapolation)");
    const auto it = std::lower_bound(table.rows.begin(), table.rows.end(), freq,
                                     [](const ImpedanceTable::Row& r, double f) { return r.freq < f; });
    if (it->freq == freq) return it->z;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (freq - lo.freq) / (hi.freq - lo.freq);
    return {lo.z.real() + t * (hi.z.real() - lo.z.real()),
            lo.z.imag() + t * (hi.z.imag() - lo.z.imag())};
}

}  // namespace purcell
