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

#include <cmath>
#include <random>
#include <vector>

#include "purcell/constants.hpp"
#include "purcell/network.hpp"
#include "support.hpp"

using namespace purcell;
using test_support::rel_diff;
using Catch::Approx;

namespace {

// Quarter-wave line at `freq`: spec with beta*l = pi/2.
TlineSpec quarter_wave(double z0, double freq) {
    return {z0, 1.0, constants::speed_of_light / (4.0 * freq)};
}

// Element values at ordinary circuit scale (tens of ohms, millisiemens)
// keep hundred-deep cascade products numerically representable, so the
// unimodularity check stays meaningful.
AbcdMatrix random_reciprocal_element(std::mt19937& rng, double freq) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (static_cast<int>(u(rng) * 3.0)) {
        case 0: return abcd_series({15.0 * u(rng), 30.0 * (u(rng) - 0.5)});
        case 1: return abcd_shunt({1e-3 * u(rng), 2e-3 * (u(rng) - 0.5)});
        default: {
            TlineSpec line{40.0 + 20.0 * u(rng), 1.0 + 10.0 * u(rng), 0.03 * u(rng)};
            return abcd_tline(line, freq);
        }
    }
}

}  // namespace

TEST_CASE("identity matrix and its laws") {
    const AbcdMatrix id = abcd_identity();
    CHECK(id.a == Complex{1.0, 0.0});
    CHECK(id.b == Complex{0.0, 0.0});
    CHECK(id.c == Complex{0.0, 0.0});
    CHECK(id.d == Complex{1.0, 0.0});

    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        const AbcdMatrix m = random_reciprocal_element(rng, 5e9);
        const AbcdMatrix left = abcd_cascade(id, m);
        const AbcdMatrix right = abcd_cascade(m, id);
        CHECK(left.a == m.a);
        CHECK(left.b == m.b);
        CHECK(right.c == m.c);
        CHECK(right.d == m.d);
    }

    const Immittance zin = abcd_to_zin(id, Immittance::impedance({50.0, 0.0}));
    CHECK(zin.value == Complex{50.0, 0.0});
}

TEST_CASE("cascade of series impedances sums the b entry") {
    // Hand matrix product: [[1, z1],[0,1]] * [[1, z2],[0,1]] = [[1, z1+z2],[0,1]].
    const AbcdMatrix m = abcd_cascade(abcd_series({0.0, 10.0}), abcd_series({0.0, 20.0}));
    CHECK(m.a == Complex{1.0, 0.0});
    CHECK(m.b == Complex{0.0, 30.0});
    CHECK(m.c == Complex{0.0, 0.0});
    CHECK(m.d == Complex{1.0, 0.0});
}

TEST_CASE("two quarter-wave lines make a half-wave line") {
    const double freq = 2e9;
    const AbcdMatrix q = abcd_tline(quarter_wave(50.0, freq), freq);
    const AbcdMatrix half = abcd_cascade(q, q);
    CHECK(half.a.real() == Approx(-1.0).epsilon(1e-12));
    CHECK(half.d.real() == Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(half.b) < 1e-9);
    CHECK(std::abs(half.c) < 1e-12);
}

TEST_CASE("series element examples") {
    CHECK(abcd_series({0.0, 0.0}).b == Complex{0.0, 0.0});

    // 10 fF series capacitor at 5 GHz: 1/(omega C) = 3183.0989 ohm.
    const double omega = 2.0 * M_PI * 5e9;
    const AbcdMatrix m = abcd_series({0.0, -1.0 / (omega * 1e-14)});
    CHECK(m.b.imag() == Approx(-3183.098861837907).epsilon(1e-12));
    CHECK(m.determinant() == Complex{1.0, 0.0});
}

TEST_CASE("shunt element examples") {
    CHECK(abcd_shunt({0.0, 0.0}).c == Complex{0.0, 0.0});

    const double omega = 2.0 * M_PI * 5e9;
    const AbcdMatrix m = abcd_shunt({0.0, omega * 1e-13});
    CHECK(m.c.imag() == Approx(3.141592653589793e-3).epsilon(1e-12));

    // Zin of a shunt over a load is the parallel combination 1/(y + 1/ZL).
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Complex y{0.05 * std::abs(u(rng)), 0.05 * u(rng)};
        const Complex zl{10.0 + 90.0 * std::abs(u(rng)), 50.0 * u(rng)};
        const Immittance zin = abcd_to_zin(abcd_shunt(y), Immittance::impedance(zl));
        const Complex expected = 1.0 / (y + 1.0 / zl);
        CHECK(rel_diff(zin.value, expected) < 1e-12);
    }
}

TEST_CASE("transmission line examples") {
    TlineSpec line{50.0, 2.0, 0.0};
    const AbcdMatrix id = abcd_tline(line, 5e9);
    CHECK(id.a == Complex{1.0, 0.0});
    CHECK(id.b == Complex{0.0, 0.0});

    // Quarter-wave transformer: Zin = Z0^2 / ZL.
    const double freq = 5e9;
    const Immittance zin = abcd_to_zin(abcd_tline(quarter_wave(50.0, freq), freq),
                                       Immittance::impedance({100.0, 0.0}));
    CHECK(zin.value.real() == Approx(25.0).epsilon(1e-9));
    CHECK(std::abs(zin.value.imag()) < 1e-6);

    // 11.93 mm of eps_eff = 6.325 line is half a wavelength at 5.00 GHz
    // within 0.1%.
    TlineSpec resonator{44.0, 6.325, 0.01193};
    const double f_half =
        constants::speed_of_light / (2.0 * resonator.length * std::sqrt(resonator.eps_eff));
    CHECK(std::abs(f_half - 5e9) / 5e9 < 1e-3);
    CHECK(electrical_length(resonator, f_half) == Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("input impedance reduction") {
    CHECK(abcd_to_zin(abcd_identity(), Immittance::impedance({50.0, 0.0})).value ==
          Complex{50.0, 0.0});

    // Textbook limit: ideal quarter-wave line over a short is a resonant open.
    const AbcdMatrix ideal_quarter{{0.0, 0.0}, {0.0, 50.0}, {0.0, 0.02}, {0.0, 0.0}};
    const Immittance pole = abcd_to_zin(ideal_quarter, Immittance::impedance({0.0, 0.0}));
    CHECK(pole.resonant_open);

    const Immittance through =
        abcd_to_zin(abcd_series({0.0, 10.0}), Immittance::impedance({50.0, 0.0}));
    CHECK(through.value == Complex{50.0, 10.0});

    // Open load uses a/c.
    const double freq = 3e9;
    const Immittance stub_via_abcd =
        abcd_to_zin(abcd_tline(quarter_wave(50.0, freq * 0.5), freq), Immittance::open());
    const Immittance stub_direct = open_stub_impedance(quarter_wave(50.0, freq * 0.5), freq);
    CHECK(rel_diff(stub_via_abcd.value, stub_direct.value) < 1e-12);
}

TEST_CASE("open stub impedance") {
    const double freq = 4e9;

    // beta*l = pi/2: the stub shorts out the node.
    const Immittance shorted = open_stub_impedance(quarter_wave(50.0, freq), freq);
    CHECK_FALSE(shorted.resonant_open);
    CHECK(std::abs(shorted.value) < 1e-9);

    // beta*l = pi/4: Z = -j Z0 cot(pi/4) = -50j.
    TlineSpec eighth{50.0, 1.0, constants::speed_of_light / (8.0 * freq)};
    const Immittance reactive = open_stub_impedance(eighth, freq);
    CHECK(reactive.re() == 0.0);
    CHECK(reactive.im() == Approx(-50.0).epsilon(1e-12));

    // Spec'd stub geometry: Im{Z} crosses zero at 6.58 GHz within 0.5%.
    TlineSpec stub{44.0, 6.325, 4.532e-3};
    double lo = 6.3e9, hi = 6.9e9;
    REQUIRE(open_stub_impedance(stub, lo).im() < 0.0);
    REQUIRE(open_stub_impedance(stub, hi).im() > 0.0);
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (open_stub_impedance(stub, mid).im() < 0.0 ? lo : hi) = mid;
    }
    CHECK(std::abs(lo - 6.58e9) / 6.58e9 < 5e-3);

    // Zero length is an ideal open.
    CHECK(open_stub_impedance({50.0, 1.0, 0.0}, freq).resonant_open);
}

TEST_CASE("lossless stubs have an exactly zero real part") {
    TlineSpec stub{44.0, 6.325, 4.532e-3};
    for (int i = 0; i < 200; ++i) {
        const double f = 1e9 + i * 5e7;
        const Immittance z = open_stub_impedance(stub, f);
        if (!z.resonant_open) CHECK(z.re() == 0.0);
    }
}

TEST_CASE("parallel combination") {
    const auto z = [](double re, double im) { return Immittance::impedance({re, im}); };

    std::vector<Immittance> with_open{z(50.0, 0.0), Immittance::open()};
    CHECK(parallel_combine(with_open).value == Complex{50.0, 0.0});

    std::vector<Immittance> equal{z(100.0, 0.0), z(100.0, 0.0)};
    CHECK(parallel_combine(equal).value == Complex{50.0, 0.0});

    std::vector<Immittance> mixed{z(50.0, 0.0), z(0.0, 50.0)};
    CHECK(rel_diff(parallel_combine(mixed).value, Complex{25.0, 25.0}) < 1e-12);

    std::vector<Immittance> all_open{Immittance::open(), Immittance::open()};
    CHECK(parallel_combine(all_open).resonant_open);

    // Oracle: result admittance equals the sum of member admittances.
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        std::vector<Immittance> members;
        Complex y_sum{0.0, 0.0};
        for (int m = 0; m < 4; ++m) {
            const Complex zi{5.0 + 200.0 * std::abs(u(rng)), 300.0 * u(rng)};
            members.push_back(z(zi.real(), zi.imag()));
            y_sum += 1.0 / zi;
        }
        CHECK(rel_diff(parallel_combine(members).value, 1.0 / y_sum) < 1e-12);
    }
}

TEST_CASE("determinant stays unimodular through long cascades") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        AbcdMatrix m = abcd_identity();
        for (int i = 0; i < 100; ++i) m = abcd_cascade(m, random_reciprocal_element(rng, 5e9));
        CHECK(std::abs(m.determinant() - Complex{1.0, 0.0}) < 1e-9);
    }
}

TEST_CASE("cascade associativity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto random_matrix = [&] {
        return AbcdMatrix{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    };
    for (int trial = 0; trial < 200; ++trial) {
        const AbcdMatrix a = random_matrix(), b = random_matrix(), c = random_matrix();
        const AbcdMatrix left = abcd_cascade(abcd_cascade(a, b), c);
        const AbcdMatrix right = abcd_cascade(a, abcd_cascade(b, c));
        CHECK(rel_diff(left.a, right.a) < 1e-12);
        CHECK(rel_diff(left.b, right.b) < 1e-12);
        CHECK(rel_diff(left.c, right.c) < 1e-12);
        CHECK(rel_diff(left.d, right.d) < 1e-12);
    }
}

TEST_CASE("passivity of lossless-line, capacitor and resistor networks") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        AbcdMatrix m = abcd_identity();
        const int n = 1 + static_cast<int>(u(rng) * 5.0);
        const double freq = 1e9 + 9e9 * u(rng);
        for (int i = 0; i < n; ++i) {
            switch (static_cast<int>(u(rng) * 4.0)) {
                case 0: m = abcd_cascade(m, abcd_series({100.0 * u(rng), 0.0})); break;
                case 1:
                    m = abcd_cascade(m, abcd_series({0.0, -1.0 / (2.0 * M_PI * freq *
                                                                  (1e-15 + 1e-13 * u(rng)))}));
                    break;
                case 2:
                    m = abcd_cascade(
                        m, abcd_shunt({0.0, 2.0 * M_PI * freq * (1e-15 + 1e-13 * u(rng))}));
                    break;
                default: {
                    TlineSpec line{20.0 + 80.0 * u(rng), 1.0 + 9.0 * u(rng), 0.02 * u(rng)};
                    m = abcd_cascade(m, abcd_tline(line, freq));
                }
            }
        }
        const double r_term = u(rng) < 0.3 ? 0.0 : 100.0 * u(rng);
        const Immittance zin = abcd_to_zin(m, Immittance::impedance({r_term, 0.0}));
        if (!zin.resonant_open) CHECK(zin.re() >= -1e-12 * std::abs(zin.value));
    }
}

TEST_CASE("half-wave line leaves the load invariant") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double freq = 1e9 + 9e9 * u(rng);
        const double eps = 1.0 + 9.0 * u(rng);
        TlineSpec line{20.0 + 80.0 * u(rng), eps,
                       constants::speed_of_light / (2.0 * freq * std::sqrt(eps))};
        const Complex zl{5.0 + 195.0 * u(rng), 400.0 * (u(rng) - 0.5)};
        const Immittance zin = abcd_to_zin(abcd_tline(line, freq), Immittance::impedance(zl));
        CHECK(rel_diff(zin.value, zl) < 1e-9);
    }
}
