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

#include "purcell/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "purcell/transmon.hpp"

namespace purcell {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate(const SweepOptions& opts) {
    if (!(opts.f_start > 0.0) || !(opts.f_stop > opts.f_start))
        throw std::invalid_argument("sweep: need 0 < f_start < f_stop");
    if (opts.points < 2) throw std::invalid_argument("sweep: points must be >= 2");
    if (opts.level < 0) throw std::invalid_argument("sweep: level must be >= 0");
    if (opts.ej_mode == EjMode::fixed && opts.e_j_fixed <= 0.0)
        throw std::invalid_argument("sweep: fixed E_J must be > 0");
    if (opts.c_sigma_mode == CSigmaMode::fixed && opts.c_sigma_fixed <= 0.0)
        throw std::invalid_argument("sweep: fixed C_sigma must be > 0");
}

// Grid point i of n. The division happens first so that doubling `points`
// reproduces the shared frequencies bit for bit.
double grid_freq(const SweepOptions& opts, int i) {
    return opts.f_start +
           (opts.f_stop - opts.f_start) * (static_cast<double>(i) / (opts.points - 1));
}

template <typename ZinAt>
SweepResult sweep_grid(ZinAt&& zin_at, const SweepOptions& opts, bool parallel) {
    validate(opts);
    SweepResult result;
    result.f_start = opts.f_start;
    result.f_stop = opts.f_stop;
    result.rows.resize(opts.points);

    if (parallel) {
        // Exceptions must not escape the parallel region; the first one is
        // captured and rethrown afterwards.
        std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(static)
        for (int i = 0; i < opts.points; ++i) {
            try {
                const double f = grid_freq(opts, i);
                result.rows[i] = evaluate_sweep_row(zin_at(f), f, opts);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (int i = 0; i < opts.points; ++i) {
            const double f = grid_freq(opts, i);
            result.rows[i] = evaluate_sweep_row(zin_at(f), f, opts);
        }
    }

    // Rows flagged non-capacitive still carry Z_in data and serialize; the
    // sweep only fails when no frequency produced any impedance at all.
    bool any_data = false;
    for (const SweepRow& row : result.rows)
        any_data |= (row.flags & row_flag::resonant_open) == 0;
    if (!any_data) throw std::runtime_error("sweep produced no usable rows");
    return result;
}

SweepOptions clip_to_table(const ImpedanceTable& table, const SweepOptions& opts, bool* clipped) {
    SweepOptions out = opts;
    *clipped = false;
    if (out.f_start < table.min_freq()) {
        out.f_start = table.min_freq();
        *clipped = true;
    }
    if (out.f_stop > table.max_freq()) {
        out.f_stop = table.max_freq();
        *clipped = true;
    }
    if (!(out.f_start < out.f_stop))
        throw std::out_of_range("sweep range does not overlap the impedance table");
    return out;
}

}  // namespace

bool SweepRow::has_rate() const { return std::isfinite(gamma); }

SweepRow evaluate_sweep_row(const Immittance& z_in, double freq, const SweepOptions& opts) {
    SweepRow row;
    row.freq = freq;
    row.c_sigma = row.e_c = row.e_j = row.matrix_element = row.gamma = row.t1 = kNaN;

    const Immittance z = z_in.as_impedance();
    if (z.resonant_open) {
        row.z_in = {std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
        row.flags |= row_flag::resonant_open;
        return row;
    }
    row.z_in = z.value;

    double re = z.re();
    if (re < 0.0) {
        if (re >= -1e-12 * std::abs(z.value)) {
            re = 0.0;
            row.flags |= row_flag::passivity_clamped;
        } else {
            throw PassivityError("sweep: Re{Z_in} < 0 beyond rounding tolerance at " +
                                 std::to_string(freq) + " Hz");
        }
    }

    if (opts.c_sigma_mode == CSigmaMode::fixed) {
        row.c_sigma = opts.c_sigma_fixed;
    } else if (z.im() < 0.0) {
        row.c_sigma = estimate_c_sigma(freq, z.im());
    } else {
        row.flags |= row_flag::non_capacitive;
        return row;
    }

    row.e_c = charging_energy(row.c_sigma);
    row.e_j = opts.ej_mode == EjMode::pinned ? josephson_energy_for_frequency(freq, row.e_c)
                                             : opts.e_j_fixed;
    if (row.e_j < 20.0 * row.e_c) row.flags |= row_flag::ej_ec_low;
    row.matrix_element = charge_matrix_element(opts.level, row.e_j, row.e_c);
    row.gamma = ser_from_zin(freq, row.matrix_element, re);
    row.t1 = row.gamma > 0.0 ? 1.0 / row.gamma : std::numeric_limits<double>::infinity();
    return row;
}

SweepResult run_sweep(const DeviceModel& model, const SweepOptions& opts) {
    return sweep_grid([&](double f) { return device_zin(model, f); }, opts, true);
}

SweepResult run_sweep_serial(const DeviceModel& model, const SweepOptions& opts) {
    return sweep_grid([&](double f) { return device_zin(model, f); }, opts, false);
}

SweepResult run_sweep(const ImpedanceTable& table, const SweepOptions& opts) {
    bool clipped = false;
    const SweepOptions effective = clip_to_table(table, opts, &clipped);
    SweepResult result = sweep_grid(
        [&](double f) { return Immittance::impedance(interpolate_impedance(table, f)); },
        effective, true);
    result.clipped = clipped;
    return result;
}

SweepResult run_sweep_serial(const ImpedanceTable& table, const SweepOptions& opts) {
    bool clipped = false;
    const SweepOptions effective = clip_to_table(table, opts, &clipped);
    SweepResult result = sweep_grid(
        [&](double f) { return Immittance::impedance(interpolate_impedance(table, f)); },
        effective, false);
    result.clipped = clipped;
    return result;
}

std::vector<SweepRow> sweep_at_frequencies(const DeviceModel& model,
                                           const std::vector<double>& freqs,
                                           const SweepOptions& opts) {
    std::vector<SweepRow> rows(freqs.size());
    std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(freqs.size()); ++i) {
        try {
            rows[i] = evaluate_sweep_row(device_zin(model, freqs[i]), freqs[i], opts);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

std::string flag_names(uint32_t flags) {
    std::string out;
    const auto append = [&out](const char* name) {
        if (!out.empty()) out += ';';
        out += name;
    };
    if (flags & row_flag::non_capacitive) append("non_capacitive");
    if (flags & row_flag::resonant_open) append("resonant_open");
    if (flags & row_flag::ej_ec_low) append("ej_ec_low");
    if (flags & row_flag::passivity_clamped) append("passivity_clamped");
    return out;
}

namespace {

void append_cell(std::string& out, double v) {
    if (std::isnan(v)) return;  // flagged rows leave unknown quantities empty
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

std::string write_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "freq_hz,re_zin_ohm,im_zin_ohm,c_sigma_f,e_c_j,e_j_j,matrix_element,gamma_per_s,t1_s,"
        "flags\n";
    for (const SweepRow& row : rows) {
        append_cell(out, row.freq);
        out += ',';
        append_cell(out, row.z_in.real());
        out += ',';
        append_cell(out, row.z_in.imag());
        out += ',';
        append_cell(out, row.c_sigma);
        out += ',';
        append_cell(out, row.e_c);
        out += ',';
        append_cell(out, row.e_j);
        out += ',';
        append_cell(out, row.matrix_element);
        out += ',';
        append_cell(out, row.gamma);
        out += ',';
        append_cell(out, row.t1);
        out += ',';
        out += flag_names(row.flags);
        out += '\n';
    }
    return out;
}

}  // namespace purcell
