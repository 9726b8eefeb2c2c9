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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "purcell/config.hpp"
#include "purcell/fit.hpp"
#include "purcell/sweep.hpp"
#include "support.hpp"

using namespace purcell;
using test_support::rel_diff;
using Catch::Approx;

namespace {

nlohmann::json waveguide_fit_config(double c_g_init) {
    nlohmann::json doc = {
        {"device",
         {{"kind", "waveguide_sps"},
          {"params",
           {{"c_q_f", 1e-13 - c_g_init},
            {"c_g_emit_f", c_g_init},
            {"c_g_ctrl_f", 0.0},
            {"z0_ohm", 50.0},
            {"r_emit_ohm", 50.0},
            {"r_ctrl_ohm", 50.0}}}}},
        {"sweep", {{"f_start_hz", 4e9}, {"f_stop_hz", 8e9}, {"points", 41}}},
        {"fit",
         {{"free", nlohmann::json::array({{{"path", "/device/params/c_g_emit_f"},
                                           {"min", 1e-16},
                                           {"max", 9e-14},
                                           {"init", c_g_init}}})},
          {"constraints", nlohmann::json::array({{{"type", "sum"},
                                                  {"dependent", "/device/params/c_q_f"},
                                                  {"others", nlohmann::json::array(
                                                                 {"/device/params/c_g_emit_f"})},
                                                  {"total", 1e-13}}})},
          {"max_iterations", 2000}}}};
    return doc;
}

std::vector<std::pair<double, double>> reference_from(double c_g, int points) {
    const DeviceModel model =
        build_waveguide_sps({1e-13 - c_g, c_g, 0.0, 50.0, 50.0, 50.0});
    SweepOptions opts;
    opts.f_start = 4e9;
    opts.f_stop = 8e9;
    opts.points = points;
    std::vector<std::pair<double, double>> reference;
    for (const SweepRow& row : run_sweep(model, opts).rows)
        reference.emplace_back(row.freq, row.t1);
    return reference;
}

FitProblem waveguide_problem(double c_g_true, double c_g_init, int points = 41) {
    const nlohmann::json doc = waveguide_fit_config(c_g_init);
    FitProblem problem;
    problem.config = doc;
    problem.spec = *parse_device_config(doc).fit;
    problem.reference = reference_from(c_g_true, points);
    return problem;
}

}  // namespace

TEST_CASE("reflection keeps proposals inside the bounds") {
    CHECK(reflect_into_bounds(0.5, 0.0, 1.0) == 0.5);
    CHECK(reflect_into_bounds(1.25, 0.0, 1.0) == Approx(0.75));
    CHECK(reflect_into_bounds(-0.25, 0.0, 1.0) == Approx(0.25));
    CHECK(reflect_into_bounds(2.5, 0.0, 1.0) == Approx(0.5));
    CHECK(reflect_into_bounds(-7.3, 0.0, 1.0) >= 0.0);
    CHECK(reflect_into_bounds(-7.3, 0.0, 1.0) <= 1.0);
}

TEST_CASE("simplex minimizes simple objectives") {
    const auto quadratic = [](const std::vector<double>& x) {
        return (x[0] - 3.0) * (x[0] - 3.0);
    };
    const NelderMeadResult r =
        nelder_mead(quadratic, {0.0}, {-10.0}, {10.0}, NelderMeadOptions{}, 1);
    CHECK(r.converged);
    CHECK(r.x[0] == Approx(3.0).margin(1e-6));

    const auto rosenbrock = [](const std::vector<double>& x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    NelderMeadOptions opts;
    opts.max_iterations = 5000;
    const NelderMeadResult r2 =
        nelder_mead(rosenbrock, {-1.0, 2.0}, {-5.0, -5.0}, {5.0, 5.0}, opts, 1);
    CHECK(r2.loss < 1e-10);
}

TEST_CASE("simplex respects bounds when the optimum lies outside") {
    const auto objective = [](const std::vector<double>& x) {
        return (x[0] - 10.0) * (x[0] - 10.0);
    };
    const NelderMeadResult r =
        nelder_mead(objective, {0.5}, {0.0}, {1.0}, NelderMeadOptions{}, 3);
    CHECK(r.x[0] >= 0.0);
    CHECK(r.x[0] <= 1.0);
    CHECK(r.x[0] == Approx(1.0).margin(1e-6));
}

TEST_CASE("synthetic self-fit recovers the coupling capacitance") {
    const FitProblem problem = waveguide_problem(5e-15, 5e-14);
    const FitResult result = fit_parameters(problem, 1);
    CHECK(result.converged);
    CHECK(result.iterations <= 2000);
    CHECK(rel_diff(result.values[0], 5e-15) < 0.01);

    // The constraint substitution keeps the total capacitance fixed.
    const double c_q = result.fitted_config["/device/params/c_q_f"_json_pointer].get<double>();
    CHECK(c_q + result.values[0] == Approx(1e-13).epsilon(1e-12));

    // Deterministic across runs for a fixed seed.
    const FitResult again = fit_parameters(problem, 1);
    CHECK(again.values[0] == result.values[0]);
    CHECK(again.loss == result.loss);
    CHECK(again.iterations == result.iterations);
}

TEST_CASE("reference generated at the initial guess stays put") {
    const FitProblem problem = waveguide_problem(5e-14, 5e-14);
    const FitResult result = fit_parameters(problem, 1);
    CHECK(result.loss <= 1e-20);
    CHECK(rel_diff(result.values[0], 5e-14) < 1e-6);
}

TEST_CASE("loss is invariant under reference reordering") {
    FitProblem problem = waveguide_problem(5e-15, 5e-14);
    const std::vector<double> at{2e-14};
    const double loss_sorted = fit_loss(problem, at);
    std::mt19937 rng(4);
    std::shuffle(problem.reference.begin(), problem.reference.end(), rng);
    const double loss_shuffled = fit_loss(problem, at);
    CHECK(loss_sorted == Approx(loss_shuffled).epsilon(1e-12));
}

TEST_CASE("loss evaluation failures are infinite, not fatal") {
    FitProblem problem = waveguide_problem(5e-15, 5e-14);
    // The constraint drives c_q_f to 1e-13 - 9.5e-14 > 0, but a value beyond
    // the total makes c_q_f negative and the device invalid.
    problem.spec.free[0].max = 2e-13;
    CHECK(fit_loss(problem, {1.5e-13}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("non-finite initial loss raises an initialization error") {
    FitProblem problem = waveguide_problem(5e-15, 5e-14);
    for (auto& [f, t1] : problem.reference) t1 = -1.0;  // log10 undefined
    CHECK_THROWS_AS(fit_parameters(problem, 1), FitInitError);
}

TEST_CASE("single-row reference is degenerate but defined") {
    const FitProblem problem = waveguide_problem(5e-15, 5e-14, /*points=*/2);
    FitProblem single = problem;
    single.reference.resize(1);
    const FitResult result = fit_parameters(single, 1);
    CHECK(std::isfinite(result.loss));
    CHECK(result.values[0] >= 1e-16);
    CHECK(result.values[0] <= 9e-14);
}

TEST_CASE("fitter never leaves the declared bounds") {
    const FitProblem problem = waveguide_problem(5e-15, 5e-14);
    for (uint64_t seed : {1ull, 7ull, 99ull}) {
        const FitResult result = fit_parameters(problem, seed);
        CHECK(result.values[0] >= problem.spec.free[0].min);
        CHECK(result.values[0] <= problem.spec.free[0].max);
    }
}
