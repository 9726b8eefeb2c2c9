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

#include <optional>
#include <vector>

#include "purcell/network.hpp"

namespace purcell {

/// Two-port element inside a branch, evaluated into a chain matrix per
/// frequency.
struct Element {
    enum class Kind {
        series_resistor,
        series_capacitor,
        series_inductor,
        shunt_resistor,
        shunt_capacitor,
        shunt_inductor,
        line,
    };

    Kind kind = Kind::series_resistor;
    double value = 0.0;  // ohm, farad, or henry depending on kind
    TlineSpec line;      // used when kind == line

    static Element series_r(double r) { return {Kind::series_resistor, r, {}}; }
    static Element series_c(double c) { return {Kind::series_capacitor, c, {}}; }
    static Element series_l(double l) { return {Kind::series_inductor, l, {}}; }
    static Element shunt_r(double r) { return {Kind::shunt_resistor, r, {}}; }
    static Element shunt_c(double c) { return {Kind::shunt_capacitor, c, {}}; }
    static Element shunt_l(double l) { return {Kind::shunt_inductor, l, {}}; }
    static Element tline(const TlineSpec& spec) { return {Kind::line, 0.0, spec}; }

    AbcdMatrix abcd(double freq) const;
};

/// Far-end termination of a branch.
struct Termination {
    enum class Kind { resistor, open, short_circuit, capacitor };

    Kind kind = Kind::open;
    double value = 0.0;  // ohm for resistor, farad for capacitor

    static Termination resistor(double r) { return {Kind::resistor, r}; }
    static Termination open() { return {Kind::open, 0.0}; }
    static Termination short_circuit() { return {Kind::short_circuit, 0.0}; }
    static Termination capacitor(double c) { return {Kind::capacitor, c}; }

    Immittance impedance(double freq) const;
};

/// One shunt branch hanging off a node: a cascade of elements that either
/// reaches a termination or splits into parallel sub-branches.
struct Branch {
    std::vector<Element> elements;
    Termination termination = Termination::open();
    std::vector<Branch> split;  // non-empty: branch ends in a parallel node

    Immittance input_impedance(double freq) const;
    bool dissipative() const;
};

/// One-port network seen by the Josephson junction: a qubit shunt
/// capacitance plus parallel branches at the junction node.
struct DeviceModel {
    double c_q = 0.0;  // junction shunt capacitance, F
    std::vector<Branch> branches;

    /// True when no branch can dissipate power (Re{Z_in} is identically 0).
    bool lossless() const;
};

enum class TapMode { point, split };

struct WaveguideSpsParams {
    double c_q = 0.0;       // F
    double c_g_emit = 0.0;  // F, emission line coupling
    double c_g_ctrl = 0.0;  // F, control line coupling (0 = omitted)
    double z0 = 50.0;       // ohm (line impedance; matched lines collapse to R)
    double r_emit = 50.0;   // ohm
    double r_ctrl = 50.0;   // ohm
};

/// Cavity-coupled source. In `point` tap mode the qubit couples through
/// c_g at the single position x. In `split` mode the finite transmon
/// extent is modeled by two c_g/2 taps at x -+ extent/2, each sampling the
/// resonator independently; this reproduces how distributed couplers smooth
/// the sharp voltage-null features of point-coupled models.
struct CavitySpsParams {
    double c_q = 0.0;  // F
    double c_g = 0.0;  // F, qubit-resonator coupling
    double c1 = 0.0;   // F, input coupler
    double c2 = 0.0;   // F, output coupler (c2 >= c1; asymmetric by design)
    TlineSpec resonator;
    double x = 0.0;  // qubit tap position along the resonator, m, in [0, L]
    double r1 = 50.0;
    double r2 = 50.0;
    TapMode tap_mode = TapMode::point;
    double transmon_extent = 0.0;  // m, split mode only
};

struct PurcellParams {
    CavitySpsParams cavity;
    TlineSpec stub1;
    TlineSpec stub2;
    double stub1_offset = 0.0;  // m along the output line from the C2 coupler
    double stub2_offset = 0.0;
    double c_open = 1e-17;  // F, stub open-end capacitance to ground
};

DeviceModel build_waveguide_sps(const WaveguideSpsParams& p);
DeviceModel build_cavity_sps(const CavitySpsParams& p);
DeviceModel build_purcell_filtered(const PurcellParams& p);

/// Input impedance across the junction terminals, including every shunt
/// element (the C_sigma estimate depends on Cq being part of Z_in).
Immittance device_zin(const DeviceModel& d, double freq);

}  // namespace purcell
