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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "purcell/network.hpp"

namespace purcell {

/// Parse failure in an imported data file; carries the 1-based line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    size_t line() const { return line_; }

  private:
    size_t line_;
};

/// Frequency-sorted one-port impedance samples from an external solver.
struct ImpedanceTable {
    struct Row {
        double freq = 0.0;  // Hz
        Complex z;          // ohm
    };

    std::vector<Row> rows;   // strictly increasing frequency, >= 2 rows
    double z_ref = 0.0;      // reference impedance from the source, 0 = n/a
    std::string source;

    double min_freq() const { return rows.front().freq; }
    double max_freq() const { return rows.back().freq; }
};

/// Reflection coefficient -> impedance, Z = z_ref (1 + S)/(1 - S).
Complex z_from_s(Complex s, double z_ref);

/// Impedance -> reflection coefficient, S = (Z - z_ref)/(Z + z_ref).
Complex s_from_z(Complex z, double z_ref);

enum class TouchstoneFormat { ri, ma, db };

/// Parses Touchstone v1 one-port content. Option-line defaults are GHz, S,
/// MA, R 50; only S-parameter files are accepted.
ImpedanceTable parse_touchstone_s1p(std::string_view text);

/// Renders a table as a Touchstone v1 .s1p body in the requested format.
std::string format_touchstone_s1p(const ImpedanceTable& table, TouchstoneFormat format,
                                  double z_ref = 50.0);

/// Parses the CSV interchange schema `freq_hz,re_z_ohm,im_z_ohm`.
ImpedanceTable parse_csv_impedance(std::string_view text);

/// Renders a table in the CSV interchange schema at full (round-trip)
/// precision.
std::string format_csv_impedance(const ImpedanceTable& table);

/// Linear interpolation, independently on Re and Im. No extrapolation:
/// frequencies outside the table range raise std::out_of_range.
Complex interpolate_impedance(const ImpedanceTable& table, double freq);

}  // namespace purcell
