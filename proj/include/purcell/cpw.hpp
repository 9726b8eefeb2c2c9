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

namespace purcell {

/// Coplanar waveguide cross-section on an infinitely thick substrate with
/// infinitely thin conductors.
struct CpwGeometry {
    double trace_width = 0.0;      // m, > 0
    double gap = 0.0;              // m, > 0
    double substrate_eps_r = 1.0;  // dimensionless, >= 1
};

struct CpwParams {
    double z0 = 0.0;       // ohm
    double eps_eff = 1.0;  // dimensionless
};

/// Complete elliptic integral of the first kind K(k), modulus convention,
/// by arithmetic-geometric mean iteration. Valid for 0 <= k < 1.
double complete_elliptic_k(double modulus);

/// Conformal-mapping CPW parameters for the infinite-substrate model:
/// eps_eff = (eps_r + 1)/2 and Z0 = 30*pi/sqrt(eps_eff) * K(k')/K(k) with
/// k = w/(w + 2s).
CpwParams cpw_params(const CpwGeometry& geom);

}  // namespace purcell
