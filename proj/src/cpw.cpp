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

#include "purcell/cpw.hpp"

#include <cmath>
#include <stdexcept>

namespace purcell {

double complete_elliptic_k(double modulus) {
    if (modulus < 0.0 || modulus >= 1.0)
        throw std::domain_error("complete_elliptic_k: modulus must satisfy 0 <= k < 1");
    // K(k) = pi / (2 * agm(1, sqrt(1 - k^2))); quadratic convergence.
    double a = 1.0;
    double b = std::sqrt((1.0 - modulus) * (1.0 + modulus));
    while (std::abs(a - b) > 1e-15 * a) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (a + b);
}

CpwParams cpw_params(const CpwGeometry& geom) {
    if (geom.trace_width <= 0.0) throw std::invalid_argument("cpw trace_width must be > 0");
    if (geom.gap <= 0.0) throw std::invalid_argument("cpw gap must be > 0");
    if (geom.substrate_eps_r < 1.0) throw std::invalid_argument("cpw substrate_eps_r must be >= 1");

    const double k = geom.trace_width / (geom.trace_width + 2.0 * geom.gap);
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));

    CpwParams out;
    out.eps_eff = 0.5 * (geom.substrate_eps_r + 1.0);
    out.z0 = 30.0 * M_PI / std::sqrt(out.eps_eff) * complete_elliptic_k(kp) / complete_elliptic_k(k);
    return out;
}

}  // namespace purcell
