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

namespace purcell {

/// Raised when a computed or imported quantity implies negative dissipation
/// (Re{Z} or Re{Y} < 0), which signals a bad dataset or a model bug.
class PassivityError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when C_sigma cannot be estimated because Im{Z_in} is not
/// capacitive at the requested frequency.
class NonCapacitiveError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Transmon energy configuration for one transition j -> j+1.
struct TransmonState {
    double c_sigma = 0.0;  // total shunt capacitance, F
    double e_c = 0.0;      // charging energy, J
    double e_j = 0.0;      // Josephson energy, J
    int level = 0;         // transition j -> j+1

    /// The asymptotic transmon results assume E_J/E_C >> 1; below ~20 they
    /// degrade noticeably.
    bool ej_ec_ratio_low() const { return e_j < 20.0 * e_c; }
};

/// Charging energy E_C = e^2 / (2 C_sigma).
double charging_energy(double c_sigma);

/// Josephson energy pinned so that sqrt(8 E_J E_C)/h equals `f0`.
double josephson_energy_for_frequency(double f0, double e_c);

/// Asymptotic charge matrix element |<j|n|j+1>| ~ sqrt((j+1)/2) * (E_J/8E_C)^(1/4).
double charge_matrix_element(int level, double e_j, double e_c);

/// Spontaneous emission rate from the input impedance seen by the junction:
/// gamma = 2*omega0/(hbar*mu0*eps0*c^2) * (2e*|<j|n|j+1>|)^2 * Re{Z_in}.
double ser_from_zin(double f0, double matrix_element, double re_zin);

/// Classical decay estimate T1 = C_q / Re{Y_eq}; infinite for a lossless
/// environment.
double t1_classical(double c_q, double re_y_eq);

/// Lumped waveguide-coupling rate gamma = omega^2 * Z0 * Cg^2 / Cq, valid
/// for (omega*Cg*Z0)^2 << 1.
double ser_lumped_waveguide(double f, double z0, double c_g, double c_q);

/// True when (omega*Cg*Z0)^2 <= 0.01, the regime in which
/// ser_lumped_waveguide is a faithful approximation.
bool lumped_waveguide_valid(double f, double z0, double c_g);

/// Total capacitance estimate C_sigma = -1/(omega * Im{Z_in}); requires a
/// capacitive (negative) reactance.
double estimate_c_sigma(double f, double im_zin);

}  // namespace purcell
