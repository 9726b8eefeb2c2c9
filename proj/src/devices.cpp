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

#include "purcell/devices.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace purcell {

namespace {

Complex capacitor_impedance(double c, double freq) {
    return Complex{0.0, -1.0 / (2.0 * M_PI * freq * c)};
}

Complex inductor_impedance(double l, double freq) {
    return Complex{0.0, 2.0 * M_PI * freq * l};
}

}  // namespace

AbcdMatrix Element::abcd(double freq) const {
    switch (kind) {
        case Kind::series_resistor: return abcd_series({value, 0.0});
        case Kind::series_capacitor: return abcd_series(capacitor_impedance(value, freq));
        case Kind::series_inductor: return abcd_series(inductor_impedance(value, freq));
        case Kind::shunt_resistor: return abcd_shunt({1.0 / value, 0.0});
        case Kind::shunt_capacitor: return abcd_shunt({0.0, 2.0 * M_PI * freq * value});
        case Kind::shunt_inductor: return abcd_shunt({0.0, -1.0 / (2.0 * M_PI * freq * value)});
        case Kind::line: return abcd_tline(line, freq);
    }
    throw std::logic_error("unreachable element kind");
}

Immittance Termination::impedance(double freq) const {
    switch (kind) {
        case Kind::resistor: return Immittance::impedance({value, 0.0});
        case Kind::open: return Immittance::open();
        case Kind::short_circuit: return Immittance::impedance({0.0, 0.0});
        case Kind::capacitor: return Immittance::impedance(capacitor_impedance(value, freq));
    }
    throw std::logic_error("unreachable termination kind");
}

Immittance Branch::input_impedance(double freq) const {
    Immittance load;
    if (split.empty()) {
        load = termination.impedance(freq);
    } else {
        std::vector<Immittance> members;
        members.reserve(split.size());
        for (const Branch& sub : split) members.push_back(sub.input_impedance(freq));
        load = parallel_combine(members);
    }
    AbcdMatrix m = abcd_identity();
    for (const Element& e : elements) m = abcd_cascade(m, e.abcd(freq));
    return abcd_to_zin(m, load);
}

bool Branch::dissipative() const {
    for (const Element& e : elements) {
        if ((e.kind == Element::Kind::series_resistor || e.kind == Element::Kind::shunt_resistor) &&
            e.value > 0.0)
            return true;
    }
    if (!split.empty()) {
        for (const Branch& sub : split)
            if (sub.dissipative()) return true;
        return false;
    }
    return termination.kind == Termination::Kind::resistor && termination.value > 0.0;
}

bool DeviceModel::lossless() const {
    for (const Branch& b : branches)
        if (b.dissipative()) return false;
    return true;
}

DeviceModel build_waveguide_sps(const WaveguideSpsParams& p) {
    if (p.c_q <= 0.0) throw std::invalid_argument("waveguide_sps: c_q must be > 0");
    if (p.c_g_emit < 0.0 || p.c_g_ctrl < 0.0)
        throw std::invalid_argument("waveguide_sps: coupling capacitances must be >= 0");
    if (p.c_g_ctrl > 0.0 && p.c_g_ctrl >= p.c_g_emit)
        throw std::invalid_argument(
            "waveguide_sps: the control coupling must be weaker than the emission coupling");
    if (p.z0 <= 0.0 || p.r_emit <= 0.0 || p.r_ctrl <= 0.0)
        throw std::invalid_argument("waveguide_sps: impedances must be > 0");

    DeviceModel model;
    model.c_q = p.c_q;
    // Matched CPW lines look like their termination resistance from the
    // coupler, so no line sections appear here.
    if (p.c_g_emit > 0.0) {
        Branch emit;
        emit.elements.push_back(Element::series_c(p.c_g_emit));
        emit.termination = Termination::resistor(p.r_emit);
        model.branches.push_back(std::move(emit));
    }
    if (p.c_g_ctrl > 0.0) {
        Branch ctrl;
        ctrl.elements.push_back(Element::series_c(p.c_g_ctrl));
        ctrl.termination = Termination::resistor(p.r_ctrl);
        model.branches.push_back(std::move(ctrl));
    }
    return model;
}

namespace {

void validate_cavity(const CavitySpsParams& p) {
    if (p.c_q <= 0.0 || p.c_g <= 0.0 || p.c1 <= 0.0 || p.c2 <= 0.0)
        throw std::invalid_argument("cavity_sps: capacitances must be > 0");
    if (p.c2 < p.c1)
        throw std::invalid_argument("cavity_sps: c2 must be at least c1 (output-side coupling)");
    if (p.r1 <= 0.0 || p.r2 <= 0.0) throw std::invalid_argument("cavity_sps: r1, r2 must be > 0");
    if (p.x < 0.0 || p.x > p.resonator.length)
        throw std::invalid_argument("cavity_sps: x must lie within [0, resonator length]");
    if (p.tap_mode == TapMode::split) {
        if (p.transmon_extent <= 0.0)
            throw std::invalid_argument("cavity_sps: split tap requires transmon_extent > 0");
        if (p.x < 0.5 * p.transmon_extent || p.x > p.resonator.length - 0.5 * p.transmon_extent)
            throw std::invalid_argument("cavity_sps: split taps must lie within the resonator");
    }
}

// Resonator arm from a tap point outward: line section, coupler, port.
Branch resonator_arm(const TlineSpec& resonator, double length, double coupler, double port_r) {
    Branch arm;
    if (length > 0.0) {
        TlineSpec section = resonator;
        section.length = length;
        arm.elements.push_back(Element::tline(section));
    }
    arm.elements.push_back(Element::series_c(coupler));
    arm.termination = Termination::resistor(port_r);
    return arm;
}

// Output arm with the filter stubs shunted onto the line between the C2
// coupler and the port.
Branch purcell_output_arm(const PurcellParams& p, double line_length) {
    const CavitySpsParams& c = p.cavity;

    Branch stub1;
    stub1.elements.push_back(Element::tline(p.stub1));
    stub1.termination = Termination::capacitor(p.c_open);
    Branch stub2;
    stub2.elements.push_back(Element::tline(p.stub2));
    stub2.termination = Termination::capacitor(p.c_open);

    Branch port;
    port.termination = Termination::resistor(c.r2);

    // Walk the output line in offset order, attaching each stub where it
    // lands; equal offsets collapse onto one node.
    const double o1 = std::min(p.stub1_offset, p.stub2_offset);
    const double o2 = std::max(p.stub1_offset, p.stub2_offset);
    Branch& first_stub = p.stub1_offset <= p.stub2_offset ? stub1 : stub2;
    Branch& second_stub = p.stub1_offset <= p.stub2_offset ? stub2 : stub1;

    Branch after_first;
    if (o2 > o1) {
        TlineSpec between = c.resonator;
        between.length = o2 - o1;
        after_first.elements.push_back(Element::tline(between));
    }
    after_first.split.push_back(std::move(second_stub));
    after_first.split.push_back(std::move(port));

    Branch node1;
    if (o1 > 0.0) {
        TlineSpec lead = c.resonator;
        lead.length = o1;
        node1.elements.push_back(Element::tline(lead));
    }
    node1.split.push_back(std::move(first_stub));
    node1.split.push_back(std::move(after_first));

    Branch arm;
    if (line_length > 0.0) {
        TlineSpec section = c.resonator;
        section.length = line_length;
        arm.elements.push_back(Element::tline(section));
    }
    arm.elements.push_back(Element::series_c(c.c2));
    arm.split.push_back(std::move(node1));
    return arm;
}

// Coupling branch tapping the resonator at `x`: series coupling capacitor
// into the parallel pair of resonator arms.
Branch coupling_branch(double c_g, Branch left_arm, Branch right_arm) {
    Branch coupling;
    coupling.elements.push_back(Element::series_c(c_g));
    coupling.split.push_back(std::move(left_arm));
    coupling.split.push_back(std::move(right_arm));
    return coupling;
}

// Tap positions for the configured mode: one full-strength tap at x, or
// two half-strength taps one transmon length apart.
std::vector<std::pair<double, double>> tap_plan(const CavitySpsParams& p) {
    if (p.tap_mode == TapMode::point) return {{p.x, p.c_g}};
    const double half = 0.5 * p.transmon_extent;
    return {{p.x - half, 0.5 * p.c_g}, {p.x + half, 0.5 * p.c_g}};
}

}  // namespace

DeviceModel build_cavity_sps(const CavitySpsParams& p) {
    validate_cavity(p);
    DeviceModel model;
    model.c_q = p.c_q;
    for (const auto& [x, c_g] : tap_plan(p)) {
        Branch left = resonator_arm(p.resonator, x, p.c1, p.r1);
        Branch right = resonator_arm(p.resonator, p.resonator.length - x, p.c2, p.r2);
        model.branches.push_back(coupling_branch(c_g, std::move(left), std::move(right)));
    }
    return model;
}

DeviceModel build_purcell_filtered(const PurcellParams& p) {
    validate_cavity(p.cavity);
    if (p.c_open <= 0.0) throw std::invalid_argument("purcell_filtered: c_open must be > 0");
    if (p.stub1_offset < 0.0 || p.stub2_offset < 0.0)
        throw std::invalid_argument("purcell_filtered: stub offsets must be >= 0");

    const CavitySpsParams& c = p.cavity;
    DeviceModel model;
    model.c_q = c.c_q;
    for (const auto& [x, c_g] : tap_plan(c)) {
        Branch left = resonator_arm(c.resonator, x, c.c1, c.r1);
        Branch right = purcell_output_arm(p, c.resonator.length - x);
        model.branches.push_back(coupling_branch(c_g, std::move(left), std::move(right)));
    }
    return model;
}

Immittance device_zin(const DeviceModel& d, double freq) {
    if (freq <= 0.0) throw std::invalid_argument("device_zin: frequency must be > 0");
    std::vector<Immittance> members;
    members.reserve(d.branches.size() + 1);
    if (d.c_q > 0.0)
        members.push_back(Immittance::admittance({0.0, 2.0 * M_PI * freq * d.c_q}));
    for (const Branch& b : d.branches) members.push_back(b.input_impedance(freq));
    if (members.empty()) throw std::invalid_argument("device_zin: empty device model");
    return parallel_combine(members);
}

}  // namespace purcell
