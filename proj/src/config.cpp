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

#include "purcell/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace purcell {

namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

const json& require_object(const json& doc, const std::string& path) {
    if (!doc.is_object()) throw ConfigError(path, "must be an object");
    return doc;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) known = true;
        if (!known) throw ConfigError(join(path, it.key()), "unknown key");
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const char* key, const std::string& path) {
    const json* v = find(obj, key);
    if (!v) throw ConfigError(join(path, key), "missing required key");
    return *v;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "must be a number (SI base units, no suffixes)");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
    return x;
}

double req_number(const json& obj, const char* key, const std::string& path) {
    return number(require(obj, key, path), join(path, key));
}

double opt_number(const json& obj, const char* key, const std::string& path, double fallback) {
    const json* v = find(obj, key);
    return v ? number(*v, join(path, key)) : fallback;
}

double positive(double x, const std::string& path) {
    if (!(x > 0.0)) throw ConfigError(path, "must be > 0");
    return x;
}

double non_negative(double x, const std::string& path) {
    if (!(x >= 0.0)) throw ConfigError(path, "must be >= 0");
    return x;
}

std::string req_string(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) throw ConfigError(join(path, key), "must be a string");
    return v.get<std::string>();
}

std::string opt_string(const json& obj, const char* key, const std::string& path,
                       const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(join(path, key), "must be a string");
    return v->get<std::string>();
}

TlineSpec parse_line(const json& v, const std::string& path) {
    require_object(v, path);
    reject_unknown(v, {"z0_ohm", "eps_eff", "length_m"}, path);
    TlineSpec line;
    line.z0 = positive(req_number(v, "z0_ohm", path), join(path, "z0_ohm"));
    line.eps_eff = req_number(v, "eps_eff", path);
    if (line.eps_eff < 1.0) throw ConfigError(join(path, "eps_eff"), "must be >= 1");
    line.length = non_negative(req_number(v, "length_m", path), join(path, "length_m"));
    return line;
}

WaveguideSpsParams parse_waveguide(const json& v, const std::string& path) {
    reject_unknown(v, {"c_q_f", "c_g_emit_f", "c_g_ctrl_f", "z0_ohm", "r_emit_ohm", "r_ctrl_ohm"},
                   path);
    WaveguideSpsParams p;
    p.c_q = positive(req_number(v, "c_q_f", path), join(path, "c_q_f"));
    p.c_g_emit = non_negative(req_number(v, "c_g_emit_f", path), join(path, "c_g_emit_f"));
    p.c_g_ctrl = non_negative(opt_number(v, "c_g_ctrl_f", path, 0.0), join(path, "c_g_ctrl_f"));
    if (p.c_g_ctrl > 0.0 && p.c_g_ctrl >= p.c_g_emit)
        throw ConfigError(join(path, "c_g_ctrl_f"),
                          "control coupling must be weaker than the emission coupling");
    p.z0 = positive(opt_number(v, "z0_ohm", path, 50.0), join(path, "z0_ohm"));
    p.r_emit = positive(opt_number(v, "r_emit_ohm", path, 50.0), join(path, "r_emit_ohm"));
    p.r_ctrl = positive(opt_number(v, "r_ctrl_ohm", path, 50.0), join(path, "r_ctrl_ohm"));
    return p;
}

CavitySpsParams parse_cavity(const json& v, const std::string& path, bool allow_extra = false) {
    if (!allow_extra)
        reject_unknown(v,
                       {"c_q_f", "c_g_f", "c1_f", "c2_f", "resonator", "x_m", "r1_ohm", "r2_ohm",
                        "tap_mode", "transmon_extent_m"},
                       path);
    CavitySpsParams p;
    p.c_q = positive(req_number(v, "c_q_f", path), join(path, "c_q_f"));
    p.c_g = positive(req_number(v, "c_g_f", path), join(path, "c_g_f"));
    p.c1 = positive(req_number(v, "c1_f", path), join(path, "c1_f"));
    p.c2 = positive(req_number(v, "c2_f", path), join(path, "c2_f"));
    if (p.c2 < p.c1)
        throw ConfigError(join(path, "c2_f"), "must be at least c1_f (output-side coupling)");
    p.resonator = parse_line(require(v, "resonator", path), join(path, "resonator"));
    p.x = non_negative(req_number(v, "x_m", path), join(path, "x_m"));
    if (p.x > p.resonator.length)
        throw ConfigError(join(path, "x_m"), "must not exceed the resonator length");
    p.r1 = positive(opt_number(v, "r1_ohm", path, 50.0), join(path, "r1_ohm"));
    p.r2 = positive(opt_number(v, "r2_ohm", path, 50.0), join(path, "r2_ohm"));

    const std::string tap = opt_string(v, "tap_mode", path, "point");
    if (tap == "point") {
        p.tap_mode = TapMode::point;
        if (find(v, "transmon_extent_m"))
            throw ConfigError(join(path, "transmon_extent_m"),
                              "only meaningful with tap_mode 'split'");
    } else if (tap == "split") {
        p.tap_mode = TapMode::split;
        p.transmon_extent =
            positive(req_number(v, "transmon_extent_m", path), join(path, "transmon_extent_m"));
    } else {
        throw ConfigError(join(path, "tap_mode"), "must be 'point' or 'split'");
    }
    return p;
}

PurcellParams parse_purcell(const json& v, const std::string& path) {
    reject_unknown(v,
                   {"c_q_f", "c_g_f", "c1_f", "c2_f", "resonator", "x_m", "r1_ohm", "r2_ohm",
                    "tap_mode", "transmon_extent_m", "stub1", "stub2", "stub1_offset_m",
                    "stub2_offset_m", "c_open_f"},
                   path);
    PurcellParams p;
    p.cavity = parse_cavity(v, path, /*allow_extra=*/true);
    p.stub1 = parse_line(require(v, "stub1", path), join(path, "stub1"));
    p.stub2 = parse_line(require(v, "stub2", path), join(path, "stub2"));
    p.stub1_offset = non_negative(opt_number(v, "stub1_offset_m", path, 0.0),
                                  join(path, "stub1_offset_m"));
    p.stub2_offset = non_negative(opt_number(v, "stub2_offset_m", path, 0.0),
                                  join(path, "stub2_offset_m"));
    p.c_open = positive(opt_number(v, "c_open_f", path, 1e-17), join(path, "c_open_f"));
    return p;
}

Branch parse_branch(const json& v, const std::string& path);

Element parse_element(const json& v, const std::string& path) {
    require_object(v, path);
    const std::string type = req_string(v, "type", path);
    const auto value_key = [&](const char* key) {
        reject_unknown(v, {"type", key}, path);
        return positive(req_number(v, key, path), join(path, key));
    };
    if (type == "series_resistor") return Element::series_r(value_key("r_ohm"));
    if (type == "series_capacitor") return Element::series_c(value_key("c_f"));
    if (type == "series_inductor") return Element::series_l(value_key("l_h"));
    if (type == "shunt_resistor") return Element::shunt_r(value_key("r_ohm"));
    if (type == "shunt_capacitor") return Element::shunt_c(value_key("c_f"));
    if (type == "shunt_inductor") return Element::shunt_l(value_key("l_h"));
    if (type == "line") {
        reject_unknown(v, {"type", "z0_ohm", "eps_eff", "length_m"}, path);
        json line = v;
        line.erase("type");
        return Element::tline(parse_line(line, path));
    }
    throw ConfigError(join(path, "type"), "unknown element type '" + type + "'");
}

Termination parse_termination(const json& v, const std::string& path) {
    require_object(v, path);
    const std::string type = req_string(v, "type", path);
    if (type == "resistor") {
        reject_unknown(v, {"type", "r_ohm"}, path);
        return Termination::resistor(positive(req_number(v, "r_ohm", path), join(path, "r_ohm")));
    }
    if (type == "open") {
        reject_unknown(v, {"type"}, path);
        return Termination::open();
    }
    if (type == "short") {
        reject_unknown(v, {"type"}, path);
        return Termination::short_circuit();
    }
    if (type == "capacitor") {
        reject_unknown(v, {"type", "c_f"}, path);
        return Termination::capacitor(positive(req_number(v, "c_f", path), join(path, "c_f")));
    }
    throw ConfigError(join(path, "type"), "unknown termination type '" + type + "'");
}

Branch parse_branch(const json& v, const std::string& path) {
    require_object(v, path);
    reject_unknown(v, {"elements", "termination", "junction"}, path);
    Branch branch;
    if (const json* elems = find(v, "elements")) {
        if (!elems->is_array()) throw ConfigError(join(path, "elements"), "must be an array");
        for (size_t i = 0; i < elems->size(); ++i)
            branch.elements.push_back(
                parse_element((*elems)[i], join(path, "elements[" + std::to_string(i) + "]")));
    }
    const json* term = find(v, "termination");
    const json* junction = find(v, "junction");
    if ((term != nullptr) == (junction != nullptr))
        throw ConfigError(path, "branch needs exactly one of 'termination' or 'junction'");
    if (term) {
        branch.termination = parse_termination(*term, join(path, "termination"));
    } else {
        if (!junction->is_array() || junction->empty())
            throw ConfigError(join(path, "junction"), "must be a non-empty array of branches");
        for (size_t i = 0; i < junction->size(); ++i)
            branch.split.push_back(
                parse_branch((*junction)[i], join(path, "junction[" + std::to_string(i) + "]")));
    }
    return branch;
}

NetlistSpec parse_netlist(const json& v, const std::string& path) {
    reject_unknown(v, {"c_q_f", "branches"}, path);
    NetlistSpec spec;
    spec.c_q = non_negative(req_number(v, "c_q_f", path), join(path, "c_q_f"));
    const json& branches = require(v, "branches", path);
    if (!branches.is_array() || branches.empty())
        throw ConfigError(join(path, "branches"), "must be a non-empty array");
    for (size_t i = 0; i < branches.size(); ++i)
        spec.branches.push_back(
            parse_branch(branches[i], join(path, "branches[" + std::to_string(i) + "]")));
    return spec;
}

ImportedSpec parse_imported(const json& v, const std::string& path) {
    reject_unknown(v, {"path"}, path);
    ImportedSpec spec;
    spec.path = req_string(v, "path", path);
    return spec;
}

SweepSpec parse_sweep(const json& v, const std::string& path, bool imported) {
    require_object(v, path);
    reject_unknown(v,
                   {"f_start_hz", "f_stop_hz", "points", "level_j", "e_j_mode", "e_j_fixed_j",
                    "c_sigma_mode", "c_sigma_fixed_f"},
                   path);
    SweepSpec spec;
    const json* start = find(v, "f_start_hz");
    const json* stop = find(v, "f_stop_hz");
    if ((start != nullptr) != (stop != nullptr))
        throw ConfigError(path, "f_start_hz and f_stop_hz must be given together");
    if (!start && !imported)
        throw ConfigError(join(path, "f_start_hz"),
                          "required (only imported tables default to their own range)");
    if (start) {
        spec.f_start = positive(number(*start, join(path, "f_start_hz")), join(path, "f_start_hz"));
        spec.f_stop = positive(number(*stop, join(path, "f_stop_hz")), join(path, "f_stop_hz"));
        if (!(*spec.f_start < *spec.f_stop))
            throw ConfigError(join(path, "f_stop_hz"), "must exceed f_start_hz");
    }
    const double points = req_number(v, "points", path);
    if (points < 2.0 || points != std::floor(points) || points > 1e7)
        throw ConfigError(join(path, "points"), "must be an integer >= 2");
    spec.points = static_cast<int>(points);
    const double level = opt_number(v, "level_j", path, 0.0);
    if (level < 0.0 || level != std::floor(level))
        throw ConfigError(join(path, "level_j"), "must be an integer >= 0");
    spec.level = static_cast<int>(level);

    const std::string ej = opt_string(v, "e_j_mode", path, "pinned");
    if (ej == "pinned") {
        spec.ej_mode = EjMode::pinned;
        if (find(v, "e_j_fixed_j"))
            throw ConfigError(join(path, "e_j_fixed_j"), "only meaningful with e_j_mode 'fixed'");
    } else if (ej == "fixed") {
        spec.ej_mode = EjMode::fixed;
        spec.e_j_fixed = positive(req_number(v, "e_j_fixed_j", path), join(path, "e_j_fixed_j"));
    } else {
        throw ConfigError(join(path, "e_j_mode"), "must be 'pinned' or 'fixed'");
    }

    const std::string cs = opt_string(v, "c_sigma_mode", path, "estimated");
    if (cs == "estimated") {
        spec.c_sigma_mode = CSigmaMode::estimated;
        if (find(v, "c_sigma_fixed_f"))
            throw ConfigError(join(path, "c_sigma_fixed_f"),
                              "only meaningful with c_sigma_mode 'fixed'");
    } else if (cs == "fixed") {
        spec.c_sigma_mode = CSigmaMode::fixed;
        spec.c_sigma_fixed =
            positive(req_number(v, "c_sigma_fixed_f", path), join(path, "c_sigma_fixed_f"));
    } else {
        throw ConfigError(join(path, "c_sigma_mode"), "must be 'estimated' or 'fixed'");
    }
    return spec;
}

FitSpec parse_fit(const json& v, const std::string& path) {
    require_object(v, path);
    reject_unknown(v, {"free", "constraints", "max_iterations"}, path);
    FitSpec spec;
    const json& free = require(v, "free", path);
    if (!free.is_array() || free.empty())
        throw ConfigError(join(path, "free"), "must be a non-empty array");
    std::set<std::string> free_paths;
    for (size_t i = 0; i < free.size(); ++i) {
        const std::string ipath = join(path, "free[" + std::to_string(i) + "]");
        const json& f = require_object(free[i], ipath);
        reject_unknown(f, {"path", "min", "max", "init"}, ipath);
        FitFreeParam param;
        param.path = req_string(f, "path", ipath);
        param.min = req_number(f, "min", ipath);
        param.max = req_number(f, "max", ipath);
        param.init = req_number(f, "init", ipath);
        if (!(param.min < param.max))
            throw ConfigError(join(ipath, "max"), "bounds must be finite and ordered (min < max)");
        if (param.init < param.min || param.init > param.max)
            throw ConfigError(join(ipath, "init"), "must lie within [min, max]");
        if (!free_paths.insert(param.path).second)
            throw ConfigError(join(ipath, "path"), "duplicate free parameter");
        spec.free.push_back(param);
    }
    if (const json* constraints = find(v, "constraints")) {
        if (!constraints->is_array())
            throw ConfigError(join(path, "constraints"), "must be an array");
        for (size_t i = 0; i < constraints->size(); ++i) {
            const std::string ipath = join(path, "constraints[" + std::to_string(i) + "]");
            const json& c = require_object((*constraints)[i], ipath);
            reject_unknown(c, {"type", "dependent", "others", "total"}, ipath);
            if (req_string(c, "type", ipath) != "sum")
                throw ConfigError(join(ipath, "type"), "only 'sum' constraints are supported");
            FitSumConstraint constraint;
            constraint.dependent = req_string(c, "dependent", ipath);
            constraint.total = req_number(c, "total", ipath);
            const json& others = require(c, "others", ipath);
            if (!others.is_array() || others.empty())
                throw ConfigError(join(ipath, "others"), "must be a non-empty array of paths");
            for (const json& o : others) {
                if (!o.is_string())
                    throw ConfigError(join(ipath, "others"), "must contain JSON pointer strings");
                constraint.others.push_back(o.get<std::string>());
            }
            if (free_paths.count(constraint.dependent))
                throw ConfigError(join(ipath, "dependent"),
                                  "dependent parameter cannot also be free");
            spec.constraints.push_back(constraint);
        }
    }
    const double max_iter = opt_number(v, "max_iterations", path, 2000.0);
    if (max_iter < 0.0 || max_iter != std::floor(max_iter))
        throw ConfigError(join(path, "max_iterations"), "must be an integer >= 0");
    spec.max_iterations = static_cast<int>(max_iter);
    return spec;
}

}  // namespace

DeviceConfig parse_device_config(const nlohmann::json& doc) {
    require_object(doc, "(root)");
    reject_unknown(doc, {"description", "device", "sweep", "fit"}, "");

    DeviceConfig cfg;
    if (const json* desc = find(doc, "description")) {
        if (!desc->is_string()) throw ConfigError("description", "must be a string");
        cfg.description = desc->get<std::string>();
    }

    const json& device = require_object(require(doc, "device", ""), "device");
    reject_unknown(device, {"kind", "params"}, "device");
    const std::string kind = req_string(device, "kind", "device");
    const json& params = require_object(require(device, "params", "device"), "device.params");

    if (kind == "waveguide_sps") {
        cfg.kind = DeviceKind::waveguide_sps;
        cfg.params = parse_waveguide(params, "device.params");
    } else if (kind == "cavity_sps") {
        cfg.kind = DeviceKind::cavity_sps;
        cfg.params = parse_cavity(params, "device.params");
    } else if (kind == "purcell_filtered") {
        cfg.kind = DeviceKind::purcell_filtered;
        cfg.params = parse_purcell(params, "device.params");
    } else if (kind == "netlist") {
        cfg.kind = DeviceKind::netlist;
        cfg.params = parse_netlist(params, "device.params");
    } else if (kind == "imported") {
        cfg.kind = DeviceKind::imported;
        cfg.params = parse_imported(params, "device.params");
    } else {
        throw ConfigError("device.kind", "unknown device kind '" + kind + "'");
    }

    cfg.sweep = parse_sweep(require(doc, "sweep", ""), "sweep", cfg.kind == DeviceKind::imported);
    if (const json* fit = find(doc, "fit")) cfg.fit = parse_fit(*fit, "fit");
    return cfg;
}

DeviceConfig load_device_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("(file)", "cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("(file)", "invalid JSON in '" + path + "': " + e.what());
    }
    return parse_device_config(doc);
}

DeviceModel build_device(const DeviceConfig& cfg) {
    switch (cfg.kind) {
        case DeviceKind::waveguide_sps:
            return build_waveguide_sps(std::get<WaveguideSpsParams>(cfg.params));
        case DeviceKind::cavity_sps:
            return build_cavity_sps(std::get<CavitySpsParams>(cfg.params));
        case DeviceKind::purcell_filtered:
            return build_purcell_filtered(std::get<PurcellParams>(cfg.params));
        case DeviceKind::netlist: {
            const NetlistSpec& spec = std::get<NetlistSpec>(cfg.params);
            DeviceModel model;
            model.c_q = spec.c_q;
            model.branches = spec.branches;
            return model;
        }
        case DeviceKind::imported:
            throw std::logic_error("imported devices have no circuit model; load the table");
    }
    throw std::logic_error("unreachable device kind");
}

SweepOptions make_sweep_options(const SweepSpec& spec) {
    if (!spec.f_start || !spec.f_stop)
        throw ConfigError("sweep.f_start_hz", "required for this device kind");
    SweepOptions opts;
    opts.f_start = *spec.f_start;
    opts.f_stop = *spec.f_stop;
    opts.points = spec.points;
    opts.level = spec.level;
    opts.ej_mode = spec.ej_mode;
    opts.e_j_fixed = spec.e_j_fixed;
    opts.c_sigma_mode = spec.c_sigma_mode;
    opts.c_sigma_fixed = spec.c_sigma_fixed;
    return opts;
}

SweepOptions make_sweep_options(const SweepSpec& spec, const ImpedanceTable& table) {
    SweepSpec resolved = spec;
    if (!resolved.f_start) {
        resolved.f_start = table.min_freq();
        resolved.f_stop = table.max_freq();
    } else if (*resolved.f_start < table.min_freq() || *resolved.f_stop > table.max_freq()) {
        std::ostringstream msg;
        msg << "requested sweep range [" << *resolved.f_start << ", " << *resolved.f_stop
            << "] Hz exceeds the imported table range [" << table.min_freq() << ", "
            << table.max_freq() << "] Hz";
        throw std::out_of_range(msg.str());
    }
    return make_sweep_options(resolved);
}

}  // namespace purcell
