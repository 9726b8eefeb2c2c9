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

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace purcell {

/// Raised when the loss is non-finite over the whole initial simplex.
class FitInitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct NelderMeadOptions {
    int max_iterations = 2000;
    double loss_spread_tolerance = 1e-12;
    double param_spread_tolerance = 1e-9;  // relative
};

struct NelderMeadResult {
    std::vector<double> x;
    double loss = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Folds `x` into [lo, hi] by reflection at the bounds (triangle wave).
double reflect_into_bounds(double x, double lo, double hi);

/// Downhill simplex minimizer with bounds enforced by reflection. The seed
/// only jitters the initial simplex scale; results are deterministic for a
/// fixed seed and tolerances.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& x0, const std::vector<double>& lower,
                             const std::vector<double>& upper, const NelderMeadOptions& opts,
                             uint64_t seed);

/// One free scalar inside a device config document.
struct FitFreeParam {
    std::string path;  // JSON pointer, e.g. "/device/params/c_g_emit_f"
    double min = 0.0;
    double max = 0.0;
    double init = 0.0;
};

/// Equality constraint eliminated by substitution:
/// value(dependent) = total - sum(value(other) for other in others).
struct FitSumConstraint {
    std::string dependent;
    std::vector<std::string> others;
    double total = 0.0;
};

struct FitSpec {
    std::vector<FitFreeParam> free;
    std::vector<FitSumConstraint> constraints;
    int max_iterations = 2000;
};

/// Curve-fit problem: a config template with free parameters against a
/// reference T1 curve. The loss is the mean squared error of log10(T1).
struct FitProblem {
    nlohmann::json config;  // full device config document
    FitSpec spec;
    std::vector<std::pair<double, double>> reference;  // (freq_hz, t1_s)
};

struct FitResult {
    std::vector<double> values;  // fitted free parameters, FitSpec order
    double loss = 0.0;
    int iterations = 0;
    bool converged = false;
    nlohmann::json fitted_config;
};

/// Config document with the given free-parameter values and the sum
/// constraints substituted in.
nlohmann::json apply_fit_values(const FitProblem& problem, const std::vector<double>& values);

/// Loss at an explicit parameter vector (exposed for testing). Evaluation
/// failures (invalid device, flagged rows) yield +inf.
double fit_loss(const FitProblem& problem, const std::vector<double>& values);

FitResult fit_parameters(const FitProblem& problem, uint64_t seed);

}  // namespace purcell
