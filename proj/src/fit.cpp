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

#include "purcell/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "purcell/config.hpp"

namespace purcell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double loss_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

}  // namespace

double reflect_into_bounds(double x, double lo, double hi) {
    if (!(lo < hi)) return lo;
    const double width = hi - lo;
    double t = std::fmod(x - lo, 2.0 * width);
    if (t < 0.0) t += 2.0 * width;
    return lo + (t <= width ? t : 2.0 * width - t);
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& x0, const std::vector<double>& lower,
                             const std::vector<double>& upper, const NelderMeadOptions& opts,
                             uint64_t seed) {
    const size_t n = x0.size();
    if (n == 0 || lower.size() != n || upper.size() != n)
        throw std::invalid_argument("nelder_mead: inconsistent dimensions");

    const auto clamp = [&](std::vector<double> x) {
        for (size_t i = 0; i < n; ++i) x[i] = reflect_into_bounds(x[i], lower[i], upper[i]);
        return x;
    };
    const auto eval = [&](const std::vector<double>& x) { return loss_or_inf(objective(x)); };

    // Initial simplex: perturb each coordinate by a few percent of its bound
    // range; the seed only jitters those steps.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.9, 1.1);
    std::vector<std::vector<double>> xs(n + 1, clamp(x0));
    for (size_t i = 0; i < n; ++i) {
        const double step = 0.05 * (upper[i] - lower[i]) * jitter(rng);
        xs[i + 1][i] = reflect_into_bounds(xs[i + 1][i] + step, lower[i], upper[i]);
    }
    std::vector<double> fs(n + 1);
    for (size_t i = 0; i <= n; ++i) fs[i] = eval(xs[i]);
    if (std::all_of(fs.begin(), fs.end(), [](double f) { return f == kInf; }))
        throw FitInitError("loss is non-finite over the whole initial simplex");

    std::vector<size_t> order(n + 1);
    NelderMeadResult result;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return fs[a] < fs[b]; });
        const size_t best = order.front(), worst = order.back();
        const size_t second_worst = order[n - 1];

        const double spread = fs[worst] - fs[best];
        double param_spread = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double scale = std::max(std::abs(xs[best][i]), upper[i] - lower[i]);
            for (size_t v = 0; v <= n; ++v)
                param_spread = std::max(param_spread, std::abs(xs[v][i] - xs[best][i]) / scale);
        }
        if (spread < opts.loss_spread_tolerance || param_spread < opts.param_spread_tolerance) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (size_t v = 0; v <= n; ++v) {
            if (v == worst) continue;
            for (size_t i = 0; i < n; ++i) centroid[i] += xs[v][i];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const auto blend = [&](const std::vector<double>& from, double coeff) {
            std::vector<double> x(n);
            for (size_t i = 0; i < n; ++i) x[i] = centroid[i] + coeff * (from[i] - centroid[i]);
            return clamp(std::move(x));
        };

        const std::vector<double> reflected = blend(xs[worst], -1.0);
        const double f_reflected = eval(reflected);
        if (f_reflected < fs[best]) {
            const std::vector<double> expanded = blend(xs[worst], -2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                xs[worst] = expanded;
                fs[worst] = f_expanded;
            } else {
                xs[worst] = reflected;
                fs[worst] = f_reflected;
            }
        } else if (f_reflected < fs[second_worst]) {
            xs[worst] = reflected;
            fs[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fs[worst];
            const std::vector<double> contracted = blend(outside ? reflected : xs[worst], 0.5);
            const double f_contracted = eval(contracted);
            if (f_contracted < (outside ? f_reflected : fs[worst])) {
                xs[worst] = contracted;
                fs[worst] = f_contracted;
            } else {
                for (size_t v = 0; v <= n; ++v) {
                    if (v == best) continue;
                    for (size_t i = 0; i < n; ++i)
                        xs[v][i] = xs[best][i] + 0.5 * (xs[v][i] - xs[best][i]);
                    fs[v] = eval(xs[v]);
                }
            }
        }
    }

    const size_t best = static_cast<size_t>(
        std::min_element(fs.begin(), fs.end()) - fs.begin());
    result.x = xs[best];
    result.loss = fs[best];
    result.iterations = iter;
    return result;
}

nlohmann::json apply_fit_values(const FitProblem& problem, const std::vector<double>& values) {
    if (values.size() != problem.spec.free.size())
        throw std::invalid_argument("apply_fit_values: wrong number of values");
    nlohmann::json doc = problem.config;
    for (size_t i = 0; i < values.size(); ++i)
        doc[nlohmann::json::json_pointer(problem.spec.free[i].path)] = values[i];
    for (const FitSumConstraint& c : problem.spec.constraints) {
        double sum = 0.0;
        for (const std::string& other : c.others)
            sum += doc.at(nlohmann::json::json_pointer(other)).get<double>();
        doc[nlohmann::json::json_pointer(c.dependent)] = c.total - sum;
    }
    return doc;
}

double fit_loss(const FitProblem& problem, const std::vector<double>& values) {
    if (problem.reference.empty()) throw std::invalid_argument("fit_loss: empty reference curve");
    try {
        const nlohmann::json doc = apply_fit_values(problem, values);
        const DeviceConfig cfg = parse_device_config(doc);
        const DeviceModel model = build_device(cfg);

        SweepOptions opts;
        opts.f_start = 1.0;  // grid unused by sweep_at_frequencies
        opts.f_stop = 2.0;
        opts.level = cfg.sweep.level;
        opts.ej_mode = cfg.sweep.ej_mode;
        opts.e_j_fixed = cfg.sweep.e_j_fixed;
        opts.c_sigma_mode = cfg.sweep.c_sigma_mode;
        opts.c_sigma_fixed = cfg.sweep.c_sigma_fixed;

        std::vector<double> freqs;
        freqs.reserve(problem.reference.size());
        for (const auto& [f, t1] : problem.reference) freqs.push_back(f);
        const std::vector<SweepRow> rows = sweep_at_frequencies(model, freqs, opts);

        double acc = 0.0;
        for (size_t i = 0; i < rows.size(); ++i) {
            const double t1_model = rows[i].t1;
            const double t1_ref = problem.reference[i].second;
            if (!(t1_model > 0.0) || !std::isfinite(t1_model) || !(t1_ref > 0.0) ||
                !std::isfinite(t1_ref))
                return kInf;
            const double d = std::log10(t1_model) - std::log10(t1_ref);
            acc += d * d;
        }
        return acc / static_cast<double>(rows.size());
    } catch (const std::exception&) {
        return kInf;
    }
}

FitResult fit_parameters(const FitProblem& problem, uint64_t seed) {
    const size_t n = problem.spec.free.size();
    if (n == 0) throw std::invalid_argument("fit_parameters: no free parameters");
    std::vector<double> x0(n), lower(n), upper(n);
    for (size_t i = 0; i < n; ++i) {
        x0[i] = problem.spec.free[i].init;
        lower[i] = problem.spec.free[i].min;
        upper[i] = problem.spec.free[i].max;
    }
    NelderMeadOptions opts;
    opts.max_iterations = problem.spec.max_iterations;
    const NelderMeadResult nm = nelder_mead(
        [&](const std::vector<double>& x) { return fit_loss(problem, x); }, x0, lower, upper,
        opts, seed);

    FitResult result;
    result.values = nm.x;
    result.loss = nm.loss;
    result.iterations = nm.iterations;
    result.converged = nm.converged;
    result.fitted_config = apply_fit_values(problem, nm.x);
    return result;
}

}  // namespace purcell
