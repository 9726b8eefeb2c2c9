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

#include "purcell/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "purcell/config.hpp"
#include "purcell/cpw.hpp"
#include "purcell/fit.hpp"
#include "purcell/impedance_io.hpp"
#include "purcell/sweep.hpp"
#include "purcell/transmon.hpp"

namespace purcell {

namespace {

namespace fs = std::filesystem;

std::string to_decimal(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("PURCELL_T1_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);  // 0 or unset leaves the runtime default
    }
#endif
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ImpedanceTable load_impedance_file(const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const std::string text = read_file(path);
    ImpedanceTable table;
    if (ext == ".s1p") {
        table = parse_touchstone_s1p(text);
    } else if (ext == ".csv") {
        table = parse_csv_impedance(text);
    } else {
        throw std::runtime_error("unsupported impedance file extension '" + ext +
                                 "' (expected .s1p or .csv)");
    }
    table.source = path;
    return table;
}

// Data paths inside a config resolve against the config file's directory.
std::string resolve_against(const std::string& config_path, const std::string& data_path) {
    fs::path p(data_path);
    if (p.is_absolute()) return data_path;
    return (fs::path(config_path).parent_path() / p).string();
}

std::string plot_script(const std::string& csv_path, const std::string& png_path) {
    std::ostringstream py;
    py << "#!/usr/bin/env python3\n"
       << "\"\"\"Plots the T1 column of a sweep CSV on a log axis.\"\"\"\n"
       << "import csv\n"
       << "import matplotlib\n"
       << "matplotlib.use(\"Agg\")\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "CSV_PATH = " << std::quoted(csv_path) << "\n"
       << "PNG_PATH = " << std::quoted(png_path) << "\n\n"
       << "freq_ghz, t1_s = [], []\n"
       << "with open(CSV_PATH, newline=\"\") as fh:\n"
       << "    for row in csv.DictReader(fh):\n"
       << "        cell = row[\"t1_s\"]\n"
       << "        if not cell or cell == \"inf\":\n"
       << "            continue\n"
       << "        freq_ghz.append(float(row[\"freq_hz\"]) / 1e9)\n"
       << "        t1_s.append(float(cell))\n\n"
       << "plt.figure(figsize=(7.0, 4.5))\n"
       << "plt.semilogy(freq_ghz, t1_s)\n"
       << "plt.xlabel(\"frequency (GHz)\")\n"
       << "plt.ylabel(\"T1 (s)\")\n"
       << "plt.grid(True, which=\"both\", alpha=0.3)\n"
       << "plt.tight_layout()\n"
       << "plt.savefig(PNG_PATH, dpi=160)\n"
       << "print(\"wrote\", PNG_PATH)\n";
    return py.str();
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& plot_path, std::ostream& out) {
    const DeviceConfig cfg = load_device_config(config_path);

    SweepResult result;
    if (cfg.kind == DeviceKind::imported) {
        const auto& spec = std::get<ImportedSpec>(cfg.params);
        const ImpedanceTable table =
            load_impedance_file(resolve_against(config_path, spec.path));
        result = run_sweep(table, make_sweep_options(cfg.sweep, table));
    } else {
        result = run_sweep(build_device(cfg), make_sweep_options(cfg.sweep));
    }
    if (result.clipped)
        out << "note: sweep clipped to table range [" << to_decimal(result.f_start) << ", "
            << to_decimal(result.f_stop) << "] Hz\n";

    write_file(out_path, write_sweep_csv(result.rows));
    out << "wrote " << out_path << " (" << result.rows.size() << " rows)\n";

    if (!plot_path.empty()) {
        const std::string png = (fs::path(plot_path).parent_path() /
                                 fs::path(plot_path).stem())
                                    .string() +
                                ".png";
        write_file(plot_path, plot_script(out_path, png));
        out << "wrote " << plot_path << "\n";
    }
    return 0;
}

std::vector<std::pair<double, double>> parse_reference_csv(const std::string& text) {
    std::vector<std::pair<double, double>> reference;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    bool seen_header = false;
    size_t freq_col = 0, t1_col = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (!seen_header) {
            bool found_freq = false, found_t1 = false;
            for (size_t i = 0; i < cells.size(); ++i) {
                if (cells[i] == "freq_hz") {
                    freq_col = i;
                    found_freq = true;
                }
                if (cells[i] == "t1_s") {
                    t1_col = i;
                    found_t1 = true;
                }
            }
            if (!found_freq || !found_t1)
                throw ParseError(line_no, "reference CSV needs freq_hz and t1_s columns");
            seen_header = true;
            continue;
        }
        if (cells.size() <= std::max(freq_col, t1_col))
            throw ParseError(line_no, "too few columns");
        const std::string& t1_cell = cells[t1_col];
        if (t1_cell.empty() || t1_cell == "inf") continue;  // flagged or lossless rows
        try {
            const double f = std::stod(cells[freq_col]);
            const double t1 = std::stod(t1_cell);
            if (!(t1 > 0.0)) throw ParseError(line_no, "t1_s must be > 0");
            reference.emplace_back(f, t1);
        } catch (const std::invalid_argument&) {
            throw ParseError(line_no, "non-numeric cell");
        }
    }
    if (reference.empty()) throw ParseError(line_no, "reference CSV has no usable rows");
    return reference;
}

int cmd_fit(const std::string& config_path, const std::string& reference_path,
            const std::string& out_path, uint64_t seed, std::ostream& out) {
    nlohmann::json doc;
    {
        std::istringstream in(read_file(config_path));
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("(file)", "invalid JSON in '" + config_path + "': " + e.what());
        }
    }
    const DeviceConfig cfg = parse_device_config(doc);
    if (!cfg.fit) throw ConfigError("fit", "missing required key (nothing to fit)");

    FitProblem problem;
    problem.config = doc;
    problem.spec = *cfg.fit;
    problem.reference = parse_reference_csv(read_file(reference_path));

    const FitResult result = fit_parameters(problem, seed);
    write_file(out_path, result.fitted_config.dump(2) + "\n");

    for (size_t i = 0; i < result.values.size(); ++i)
        out << problem.spec.free[i].path << "=" << to_decimal(result.values[i]) << "\n";
    out << "loss=" << to_decimal(result.loss) << "\n";
    out << "iterations=" << result.iterations << "\n";
    out << "converged=" << (result.converged ? "true" : "false") << "\n";
    out << "wrote " << out_path << "\n";
    return 0;
}

int cmd_cpw(double width, double gap, double eps_r, std::ostream& out, std::ostream& err) {
    CpwParams params;
    try {
        params = cpw_params({width, gap, eps_r});
    } catch (const std::invalid_argument& e) {
        // Geometry problems are input errors, not physics failures.
        err << "error: " << e.what() << "\n";
        return 1;
    }
    out << "z0_ohm=" << to_decimal(params.z0) << "\n";
    out << "eps_eff=" << to_decimal(params.eps_eff) << "\n";
    return 0;
}

int cmd_import(const std::string& data_path, const std::string& config_path,
               const std::string& out_path, std::ostream& out) {
    const DeviceConfig cfg = load_device_config(config_path);
    const ImpedanceTable table = load_impedance_file(data_path);
    const SweepResult result = run_sweep(table, make_sweep_options(cfg.sweep, table));
    write_file(out_path, write_sweep_csv(result.rows));
    out << "wrote " << out_path << " (" << result.rows.size() << " rows)\n";
    return 0;
}

int dispatch(const std::function<int()>& command, std::ostream& err) {
    try {
        return command();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const FitInitError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    apply_thread_cap();

    CLI::App app{"Spontaneous emission rate and Purcell-limited T1 of a transmon qubit from "
                 "the input impedance seen by its junction"};
    app.require_subcommand(1);

    std::string config_path, out_path, plot_path, reference_path, data_path;
    uint64_t seed = 1;
    double width = 0.0, gap = 0.0, eps_r = 11.68;

    CLI::App* sweep = app.add_subcommand("sweep", "Run the SER/T1 pipeline over a frequency grid");
    sweep->add_option("config", config_path, "Device config JSON")->required();
    sweep->add_option("--out", out_path, "Output CSV path")->required();
    sweep->add_option("--plot", plot_path, "Also emit a plotting script here");

    CLI::App* fit = app.add_subcommand("fit", "Fit free circuit parameters to a reference T1 curve");
    fit->add_option("config", config_path, "Device config JSON with a fit block")->required();
    fit->add_option("reference", reference_path, "Reference CSV with freq_hz,t1_s columns")
        ->required();
    fit->add_option("--out", out_path, "Fitted config JSON path")->required();
    fit->add_option("--seed", seed, "Simplex initialization seed");

    CLI::App* cpw = app.add_subcommand("cpw", "Coplanar waveguide Z0 and eps_eff");
    cpw->add_option("--width", width, "Trace width in m")->required();
    cpw->add_option("--gap", gap, "Gap width in m")->required();
    cpw->add_option("--eps-r", eps_r, "Substrate relative permittivity (default 11.68)");

    CLI::App* import_cmd =
        app.add_subcommand("import", "Run the SER/T1 pipeline over an imported impedance table");
    import_cmd->add_option("data", data_path, "Impedance file (.s1p or .csv)")->required();
    import_cmd->add_option("config", config_path, "Config JSON providing the transmon settings")
        ->required();
    import_cmd->add_option("--out", out_path, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream usage;
        const int code = app.exit(e, out, usage);
        err << usage.str();
        return code == 0 ? 0 : 1;
    }

    if (sweep->parsed())
        return dispatch([&] { return cmd_sweep(config_path, out_path, plot_path, out); }, err);
    if (fit->parsed())
        return dispatch(
            [&] { return cmd_fit(config_path, reference_path, out_path, seed, out); }, err);
    if (cpw->parsed()) return dispatch([&] { return cmd_cpw(width, gap, eps_r, out, err); }, err);
    if (import_cmd->parsed())
        return dispatch([&] { return cmd_import(data_path, config_path, out_path, out); }, err);
    return 1;
}

}  // namespace purcell
