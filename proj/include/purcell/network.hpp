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

#include <complex>
#include <span>

namespace purcell {

using Complex = std::complex<double>;

/// A complex impedance (ohm) or admittance (siemens) at a single frequency.
///
/// A pole of the network response ("resonant open", infinite impedance) is a
/// tagged state rather than an exception or a NaN, so frequency sweeps can
/// cross resonator poles without special casing at the call sites.
struct Immittance {
    enum class Kind { impedance, admittance };

    Complex value{0.0, 0.0};
    Kind kind = Kind::impedance;
    bool resonant_open = false;

    static Immittance impedance(Complex z) { return {z, Kind::impedance, false}; }
    static Immittance admittance(Complex y) { return {y, Kind::admittance, false}; }
    static Immittance open() { return {Complex{0.0, 0.0}, Kind::impedance, true}; }

    double re() const { return value.real(); }
    double im() const { return value.imag(); }

    /// Converts to impedance form. A zero admittance maps to resonant open.
    Immittance as_impedance() const;
    /// Converts to admittance form. Resonant open maps to zero admittance.
    Immittance as_admittance() const;
};

/// 2x2 complex chain matrix of a reciprocal two-port. The b entry carries
/// ohm-weighted units and the c entry siemens-weighted units. Port 1 is the
/// junction side; cascading order runs from the junction toward the
/// termination.
struct AbcdMatrix {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
    Complex d{1.0, 0.0};

    Complex determinant() const { return a * d - b * c; }
};

/// Lossless, non-dispersive transmission line section.
struct TlineSpec {
    double z0 = 50.0;      // characteristic impedance, ohm (> 0)
    double eps_eff = 1.0;  // effective relative permittivity (>= 1)
    double length = 0.0;   // physical length, m (>= 0)
};

/// Electrical length beta*l = omega*sqrt(eps_eff)*length/c0 at `freq`.
double electrical_length(const TlineSpec& line, double freq);

AbcdMatrix abcd_identity();

/// Chain-matrix product `first * second`, with `first` nearest the junction.
AbcdMatrix abcd_cascade(const AbcdMatrix& first, const AbcdMatrix& second);

inline AbcdMatrix operator*(const AbcdMatrix& first, const AbcdMatrix& second) {
    return abcd_cascade(first, second);
}

/// Series impedance element: [[1, z], [0, 1]].
AbcdMatrix abcd_series(Complex z);

/// Shunt admittance element: [[1, 0], [y, 1]].
AbcdMatrix abcd_shunt(Complex y);

/// Lossless line section: [[cos bl, j z0 sin bl], [j sin bl / z0, cos bl]].
AbcdMatrix abcd_tline(const TlineSpec& line, double freq);

/// Input impedance (a*ZL + b)/(c*ZL + d) of a two-port terminated in
/// `z_load`; an open load gives a/c. A vanishing denominator yields the
/// resonant-open state.
Immittance abcd_to_zin(const AbcdMatrix& m, const Immittance& z_load);

/// Open-circuited stub: Z = -j z0 cot(beta*l), exactly reactive. At
/// beta*l = n*pi the stub is a resonant open.
Immittance open_stub_impedance(const TlineSpec& line, double freq);

/// Parallel combination: admittances sum; resonant-open members contribute
/// zero admittance. All members resonant open yields a resonant open.
Immittance parallel_combine(std::span<const Immittance> members);

}  // namespace purcell
