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

#include "purcell/transmon.hpp"

#include <cmath>
#include <limits>

#include "purcell/constants.hpp"

namespace purcell {

namespace {
constexpr double kE = constants::elementary_charge;
constexpr double kH = constants::planck;
}  // namespace

double charging_energy(double c_sigma) {
    if (c_sigma <= 0.0) throw std::domain_error("charging_energy: c_sigma must be > 0");
    return kE * kE / (2.0 * c_sigma);
}

double josephson_energy_for_frequency(double f0, double e_c) {
    if (f0 <= 0.0) throw std::domain_error("josephson_energy_for_frequency: f0 must be > 0");
    if (e_c <= 0.0) throw std::domain_error("josephson_energy_for_frequency: e_c must be > 0");
    const double hf = kH * f0;
    return hf * hf / (8.0 * e_c);
}

double charge_matrix_element(int level, double e_j, double e_c) {
    if (level < 0) throw std::domain_error("charge_matrix_element: level must be >= 0");
    if (e_j <= 0.0 || e_c <= 0.0)
        throw std::domain_error("charge_matrix_element: energies must be > 0");
    return std::sqrt(0.5 * (level + 1)) * std::pow(e_j / (8.0 * e_c), 0.25);
}

double ser_from_zin(double f0, double matrix_element, double re_zin) {
    if (f0 <= 0.0) throw std::domain_error("ser_from_zin: f0 must be > 0");
    if (re_zin < 0.0) throw PassivityError("ser_from_zin: Re{Z_in} < 0");
    const double omega0 = 2.0 * M_PI * f0;
    const double dipole = 2.0 * kE * matrix_element;
    const double prefactor = 2.0 * omega0 /
        (constants::hbar * constants::mu0 * constants::eps0 *
         constants::speed_of_light * constants::speed_of_light);
    return prefactor * dipole * dipole * re_zin;
}

double t1_classical(double c_q, double re_y_eq) {
    if (c_q <= 0.0) throw std::domain_error("t1_classical: c_q must be > 0");
    if (re_y_eq < 0.0) throw PassivityError("t1_classical: Re{Y_eq} < 0");
    if (re_y_eq == 0.0) return std::numeric_limits<double>::infinity();
    return c_q / re_y_eq;
}

double ser_lumped_waveguide(double f, double z0, double c_g, double c_q) {
    if (f <= 0.0 || z0 <= 0.0 || c_g < 0.0 || c_q <= 0.0)
        throw std::domain_error("ser_lumped_waveguide: parameters out of range");
    const double omega = 2.0 * M_PI * f;
    return omega * omega * z0 * c_g * c_g / c_q;
}

bool lumped_waveguide_valid(double f, double z0, double c_g) {
    const double x = 2.0 * M_PI * f * c_g * z0;
    return x * x <= 0.01;
}

double estimate_c_sigma(double f, double im_zin) {
    if (f <= 0.0) throw std::domain_error("estimate_c_sigma: f must be > 0");
    if (im_zin >= 0.0)
        throw NonCapacitiveError("estimate_c_sigma: Im{Z_in} is not capacitive");
    return -1.0 / (2.0 * M_PI * f * im_zin);
}

}  // namespace purcell
