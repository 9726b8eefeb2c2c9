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

namespace purcell::constants {

// CODATA 2018. eps0 is derived from mu0 and c0 so that mu0*eps0*c0^2 == 1
// holds to machine precision; the quoted CODATA digits are a truncation of
// this quotient.
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double planck = 6.62607015e-34;              // J s
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double speed_of_light = 299792458.0;         // m/s
inline constexpr double mu0 = 1.25663706212e-6;               // N/A^2
inline constexpr double eps0 = 1.0 / (mu0 * speed_of_light * speed_of_light);

}  // namespace purcell::constants
