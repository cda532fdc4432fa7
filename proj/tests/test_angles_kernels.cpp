// SPDX-License-Identifier: Apache-2.0
//
// holoris: beam-pattern synthesis and closed-loop channel estimation for
// RIS-aided wideband MIMO simulation
// Copyright (C) 2026 The holoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include "holoris/angles.hpp"
#include "holoris/channel.hpp"
#include "holoris/kernels.hpp"
#include "holoris/rng.hpp"

using namespace holoris;

TEST_CASE("physical_to_spatial maps reference directions", "[angles]") {
    const double lambda = 2e-3;
    const AngularPair grazing = physical_to_spatial({0.0, pi / 2.0}, lambda);
    CHECK(grazing.azi == Catch::Approx(two_pi / lambda).epsilon(1e-14));
    CHECK(std::abs(grazing.ele) < 1e-9);

    const AngularPair broadside = physical_to_spatial({pi / 2.0, 0.0}, 0.01);
    CHECK(std::abs(broadside.azi) < 1e-12);
    CHECK(std::abs(broadside.ele) < 1e-12);

    const AngularPair diag = physical_to_spatial({pi / 4.0, pi / 4.0}, lambda);
    const double expect = (two_pi / lambda) * std::cos(pi / 4.0) * std::sin(pi / 4.0);
    CHECK(diag.azi == Catch::Approx(expect).epsilon(1e-13));
    CHECK(diag.ele == Catch::Approx(expect).epsilon(1e-13));
}

TEST_CASE("physical_to_spatial rejects out-of-range angles", "[angles]") {
    CHECK_THROWS_AS(physical_to_spatial({-0.1, 0.3}, 1e-3), domain_error);
    CHECK_THROWS_AS(physical_to_spatial({two_pi, 0.3}, 1e-3), domain_error);
    CHECK_THROWS_AS(physical_to_spatial({0.5, pi / 2.0 + 0.01}, 1e-3), domain_error);
    CHECK_THROWS_AS(physical_to_spatial({0.5, -0.01}, 1e-3), domain_error);
}

TEST_CASE("spatial frequencies stay inside the wavenumber ball", "[angles]") {
    const double lambda = 2e-3;
    Rng rng(12345);
    for (int i = 0; i < 1000; ++i) {
        const PhysicalAngle theta{rng.uniform(0.0, two_pi), rng.uniform(0.0, pi / 2.0)};
        const AngularPair psi = physical_to_spatial(theta, lambda);
        CHECK(std::abs(psi.azi) <= two_pi / lambda + 1e-9);
        CHECK(std::abs(psi.ele) <= two_pi / lambda + 1e-9);
    }
}

TEST_CASE("steering_phase reference values", "[angles]") {
    const double lambda = 2e-3;
    CHECK(steering_phase(0.0, 0.0, {123.0, -77.0}) == cd{1.0, 0.0});
    CHECK(steering_phase(0.4, -0.2, {0.0, 0.0}) == cd{1.0, 0.0});
    const cd v = steering_phase(lambda / 2.0, 0.0, {two_pi / lambda, 0.0});
    CHECK(v.real() == Catch::Approx(-1.0).margin(1e-12));
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK(std::abs(v) == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dirichlet kernel reference values", "[kernels]") {
    for (int n : {1, 2, 3, 8, 64})
        CHECK(dirichlet(n, 0.0) == 1.0);
    CHECK(dirichlet(4, two_pi) == Catch::Approx(-1.0));
    CHECK(dirichlet(3, pi) == Catch::Approx(-1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("dirichlet kernel magnitude is 2*pi periodic", "[kernels]") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const int n = 1 + static_cast<int>(rng.below(40));
        const double x = rng.uniform(-20.0, 20.0);
        CHECK(std::abs(dirichlet(n, x + two_pi)) == Catch::Approx(std::abs(dirichlet(n, x))).margin(1e-10));
    }
}

TEST_CASE("dirichlet kernel is continuous at multiples of 2*pi", "[kernels]") {
    for (int n : {2, 3, 4, 9, 32}) {
        for (int k : {-2, -1, 0, 1, 3}) {
            const double target = dirichlet(n, two_pi * k);
            const double sign = ((static_cast<long long>(k) * (n - 1)) % 2 == 0) ? 1.0 : -1.0;
            CHECK(target == Catch::Approx(sign));
            CHECK(dirichlet(n, two_pi * k + 1e-8) == Catch::Approx(target).margin(1e-6));
            CHECK(dirichlet(n, two_pi * k - 1e-8) == Catch::Approx(target).margin(1e-6));
        }
    }
}

TEST_CASE("sinc reference values", "[kernels]") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(std::abs(sinc(pi)) < 1e-15);
    CHECK(sinc(pi / 2.0) == Catch::Approx(2.0 / pi).epsilon(1e-14));
}

TEST_CASE("raised cosine pulse", "[kernels]") {
    const PulseShape shape{0.8, 2e-9};
    CHECK(raised_cosine(0.0, shape) == 1.0);
    for (int k = 1; k <= 5; ++k) {
        CHECK(std::abs(raised_cosine(k * shape.ts, shape)) < 1e-14);
        CHECK(std::abs(raised_cosine(-k * shape.ts, shape)) < 1e-14);
    }

    // removable singularity at |tau| = T_s / (2 rolloff)
    const double tau0 = shape.ts / (2.0 * shape.rolloff);
    const double at_singularity = raised_cosine(tau0, shape);
    const double analytic = (pi / 4.0) * sinc(pi / (2.0 * shape.rolloff));
    CHECK(at_singularity == Catch::Approx(analytic).epsilon(1e-12));
    CHECK(raised_cosine(tau0 * (1.0 + 1e-8), shape) == Catch::Approx(at_singularity).margin(1e-6));
    CHECK(raised_cosine(tau0 * (1.0 - 1e-8), shape) == Catch::Approx(at_singularity).margin(1e-6));
}
