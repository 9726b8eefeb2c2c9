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

#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>

#include "purcell/devices.hpp"

namespace test_support {

using Complex = std::complex<double>;

inline double rel_diff(Complex a, Complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Independent brute-force oracle for the two-line waveguide device: nodal
/// admittance matrix of the three-node circuit (junction, emission-side,
/// control-side), solved by Gaussian elimination. Shares no code with the
/// chain-matrix reduction it checks.
inline Complex waveguide_zin_nodal_oracle(double c_q, double c_g_emit, double c_g_ctrl,
                                          double r_emit, double r_ctrl, double freq) {
    const Complex j{0.0, 1.0};
    const double w = 2.0 * M_PI * freq;
    const Complex y_q = j * w * c_q;
    const Complex y_ge = j * w * c_g_emit;
    const Complex y_gc = j * w * c_g_ctrl;

    std::array<std::array<Complex, 3>, 3> m{{
        {y_q + y_ge + y_gc, -y_ge, -y_gc},
        {-y_ge, y_ge + 1.0 / r_emit, 0.0},
        {-y_gc, 0.0, y_gc + 1.0 / r_ctrl},
    }};
    std::array<Complex, 3> rhs{1.0, 0.0, 0.0};

    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            const Complex factor = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= factor * m[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::array<Complex, 3> v{};
    for (int row = 2; row >= 0; --row) {
        Complex acc = rhs[row];
        for (int c = row + 1; c < 3; ++c) acc -= m[row][c] * v[c];
        v[row] = acc / m[row][row];
    }
    return v[0];
}

/// Closed-form input impedance of the waveguide device (series-RC branches
/// in parallel with the qubit capacitance).
inline Complex waveguide_zin_closed_form(double c_q, double c_g_emit, double c_g_ctrl,
                                         double r_emit, double r_ctrl, double freq) {
    const Complex j{0.0, 1.0};
    const double w = 2.0 * M_PI * freq;
    Complex y = j * w * c_q;
    if (c_g_emit > 0.0) y += 1.0 / (r_emit + 1.0 / (j * w * c_g_emit));
    if (c_g_ctrl > 0.0) y += 1.0 / (r_ctrl + 1.0 / (j * w * c_g_ctrl));
    return 1.0 / y;
}

inline std::filesystem::path source_dir() { return std::filesystem::path(PURCELL_SOURCE_DIR); }

/// Scratch directory for CLI round trips, cleaned up on destruction.
class TempDir {
  public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("purcell_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

  private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

}  // namespace test_support
