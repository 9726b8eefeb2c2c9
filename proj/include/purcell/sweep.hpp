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

#include <cstdint>
#include <string>
#include <vector>

#include "purcell/devices.hpp"
#include "purcell/impedance_io.hpp"
#include "purcell/network.hpp"

namespace purcell {

enum class EjMode { pinned, fixed };
enum class CSigmaMode { estimated, fixed };

struct SweepOptions {
    double f_start = 0.0;  // Hz
    double f_stop = 0.0;   // Hz, > f_start
    int points = 2;        // >= 2
    int level = 0;         // transition j -> j+1
    EjMode ej_mode = EjMode::pinned;
    double e_j_fixed = 0.0;  // J, used when ej_mode == fixed
    CSigmaMode c_sigma_mode = CSigmaMode::estimated;
    double c_sigma_fixed = 0.0;  // F, used when c_sigma_mode == fixed
};

namespace row_flag {
inline constexpr uint32_t non_capacitive = 1u << 0;     // C_sigma estimate failed
inline constexpr uint32_t resonant_open = 1u << 1;      // Z_in pole at this frequency
inline constexpr uint32_t ej_ec_low = 1u << 2;          // E_J/E_C < 20
inline constexpr uint32_t passivity_clamped = 1u << 3;  // tiny negative Re{Z_in} zeroed
}  // namespace row_flag

/// Per-frequency record of the self-consistent SER pipeline. Quantities
/// that could not be computed (flagged rows) are NaN and serialize as empty
/// CSV cells.
struct SweepRow {
    double freq = 0.0;  // Hz
    Complex z_in;       // ohm
    double c_sigma = 0.0;
    double e_c = 0.0;
    double e_j = 0.0;
    double matrix_element = 0.0;
    double gamma = 0.0;  // 1/s
    double t1 = 0.0;     // s, may be +inf
    uint32_t flags = 0;

    bool has_rate() const;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double f_start = 0.0;  // effective grid bounds (clipped for tables)
    double f_stop = 0.0;
    bool clipped = false;  // requested range exceeded an imported table
};

/// Evaluates the full pipeline at one frequency: Z_in -> C_sigma -> E_C ->
/// E_J -> matrix element -> gamma -> T1.
SweepRow evaluate_sweep_row(const Immittance& z_in, double freq, const SweepOptions& opts);

/// OpenMP-parallel sweep over a uniform frequency grid.
SweepResult run_sweep(const DeviceModel& model, const SweepOptions& opts);
SweepResult run_sweep(const ImpedanceTable& table, const SweepOptions& opts);

/// Serial reference implementation; produces rows identical to run_sweep.
SweepResult run_sweep_serial(const DeviceModel& model, const SweepOptions& opts);
SweepResult run_sweep_serial(const ImpedanceTable& table, const SweepOptions& opts);

/// Pipeline rows for an explicit frequency list (used by the fitter).
std::vector<SweepRow> sweep_at_frequencies(const DeviceModel& model,
                                           const std::vector<double>& freqs,
                                           const SweepOptions& opts);

/// CSV schema:
/// freq_hz,re_zin_ohm,im_zin_ohm,c_sigma_f,e_c_j,e_j_j,matrix_element,gamma_per_s,t1_s,flags
/// Floats use shortest round-trip decimals; infinite T1 prints as `inf`.
std::string write_sweep_csv(const std::vector<SweepRow>& rows);

/// Human-readable names of the set flags, semicolon-joined.
std::string flag_names(uint32_t flags);

}  // namespace purcell
