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
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "purcell/devices.hpp"
#include "purcell/fit.hpp"
#include "purcell/sweep.hpp"

namespace purcell {

/// Schema violation in a device config; the message names the offending key.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("config key '" + key + "': " + what), key_(key) {}

    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

enum class DeviceKind { waveguide_sps, cavity_sps, purcell_filtered, netlist, imported };

struct NetlistSpec {
    double c_q = 0.0;
    std::vector<Branch> branches;
};

struct ImportedSpec {
    std::string path;  // .s1p or .csv impedance file
};

/// Sweep block as written in the config. The frequency range may be omitted
/// for imported sources, in which case the table's own range applies.
struct SweepSpec {
    std::optional<double> f_start;
    std::optional<double> f_stop;
    int points = 2;
    int level = 0;
    EjMode ej_mode = EjMode::pinned;
    double e_j_fixed = 0.0;
    CSigmaMode c_sigma_mode = CSigmaMode::estimated;
    double c_sigma_fixed = 0.0;
};

struct DeviceConfig {
    std::string description;
    DeviceKind kind = DeviceKind::waveguide_sps;
    std::variant<WaveguideSpsParams, CavitySpsParams, PurcellParams, NetlistSpec, ImportedSpec>
        params;
    SweepSpec sweep;
    std::optional<FitSpec> fit;
};

/// Strict parse: unknown keys are rejected, units are SI base units, and
/// conditional keys (fixed-mode values, split-tap extent) must appear exactly
/// when their mode requires them.
DeviceConfig parse_device_config(const nlohmann::json& doc);

DeviceConfig load_device_config(const std::string& path);

/// Builds the one-port model for any non-imported device kind.
DeviceModel build_device(const DeviceConfig& cfg);

/// Resolves the sweep block into runnable options. Non-imported kinds
/// require an explicit frequency range.
SweepOptions make_sweep_options(const SweepSpec& spec);

/// Resolved options for an imported table: a missing range defaults to the
/// table's range; an explicit range that exceeds it raises
/// std::out_of_range.
SweepOptions make_sweep_options(const SweepSpec& spec, const ImpedanceTable& table);

}  // namespace purcell
