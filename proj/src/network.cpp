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

#include "purcell/network.hpp"

#include <cmath>
#include <stdexcept>

#include "purcell/constants.hpp"

namespace purcell {

Immittance Immittance::as_impedance() const {
    if (kind == Kind::impedance) return *this;
    if (resonant_open || value == Complex{0.0, 0.0}) return Immittance::open();
    return Immittance::impedance(1.0 / value);
}

Immittance Immittance::as_admittance() const {
    if (kind == Kind::admittance) {
        if (resonant_open) return Immittance::admittance({0.0, 0.0});
        return *this;
    }
    if (resonant_open) return Immittance::admittance({0.0, 0.0});
    if (value == Complex{0.0, 0.0})
        throw std::domain_error("short circuit has no admittance representation");
    return Immittance::admittance(1.0 / value);
}

double electrical_length(const TlineSpec& line, double freq) {
    if (line.z0 <= 0.0) throw std::invalid_argument("line z0 must be > 0");
    if (line.eps_eff < 1.0) throw std::invalid_argument("line eps_eff must be >= 1");
    if (line.length < 0.0) throw std::invalid_argument("line length must be >= 0");
    const double omega = 2.0 * M_PI * freq;
    return omega * std::sqrt(line.eps_eff) * line.length / constants::speed_of_light;
}

AbcdMatrix abcd_identity() { return AbcdMatrix{}; }

AbcdMatrix abcd_cascade(const AbcdMatrix& first, const AbcdMatrix& second) {
    AbcdMatrix out;
    out.a = first.a * second.a + first.b * second.c;
    out.b = first.a * second.b + first.b * second.d;
    out.c = first.c * second.a + first.d * second.c;
    out.d = first.c * second.b + first.d * second.d;
    return out;
}

AbcdMatrix abcd_series(Complex z) { return AbcdMatrix{{1.0, 0.0}, z, {0.0, 0.0}, {1.0, 0.0}}; }

AbcdMatrix abcd_shunt(Complex y) { return AbcdMatrix{{1.0, 0.0}, {0.0, 0.0}, y, {1.0, 0.0}}; }

AbcdMatrix abcd_tline(const TlineSpec& line, double freq) {
    if (freq <= 0.0) throw std::invalid_argument("frequency must be > 0");
    const double bl = electrical_length(line, freq);
    const double c = std::cos(bl);
    const double s = std::sin(bl);
    AbcdMatrix out;
    out.a = {c, 0.0};
    out.b = {0.0, line.z0 * s};
    out.c = {0.0, s / line.z0};
    out.d = {c, 0.0};
    return out;
}

Immittance abcd_to_zin(const AbcdMatrix& m, const Immittance& z_load) {
    const Immittance zl = z_load.as_impedance();
    Complex num, den;
    if (zl.resonant_open) {
        num = m.a;
        den = m.c;
    } else {
        num = m.a * zl.value + m.b;
        den = m.c * zl.value + m.d;
    }
    if (den == Complex{0.0, 0.0}) return Immittance::open();
    const Complex z = num / den;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return Immittance::open();
    return Immittance::impedance(z);
}

Immittance open_stub_impedance(const TlineSpec& line, double freq) {
    if (freq <= 0.0) throw std::invalid_argument("frequency must be > 0");
    const double bl = electrical_length(line, freq);
    const double s = std::sin(bl);
    if (s == 0.0) return Immittance::open();
    const double cot = std::cos(bl) / s;
    if (!std::isfinite(cot)) return Immittance::open();
    // Constructed with an exactly zero real part: the lossless stub is
    // purely reactive.
    return Immittance::impedance({0.0, -line.z0 * cot});
}

Immittance parallel_combine(std::span<const Immittance> members) {
    if (members.empty()) throw std::invalid_argument("parallel_combine needs at least one member");
    Complex y_total{0.0, 0.0};
    for (const Immittance& m : members) {
        const Immittance z = m.as_impedance();
        if (!z.resonant_open && z.value == Complex{0.0, 0.0})
            return Immittance::impedance({0.0, 0.0});  // a short dominates the node
        y_total += m.as_admittance().value;
    }
    return Immittance::admittance(y_total).as_impedance();
}

}  // namespace purcell
