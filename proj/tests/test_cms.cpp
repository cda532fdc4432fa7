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

#include "holoris/beampattern.hpp"
#include "holoris/rng.hpp"

using namespace holoris;

TEST_CASE("continuous-aperture steering pattern basics", "[cms]") {
    const double lambda = 2e-3;
    const double a = 8.0 * lambda;
    const AngularPair psi_in{0.0, 0.0};
    const AngularPair psi_opt = from_normalized(0.3, -0.1, lambda);

    CHECK(std::abs(cms_nbs_pattern(a, a, psi_opt, psi_in, psi_opt)) == Catch::Approx(1.0).epsilon(1e-14));

    // first null one aperture-resolution cell away
    const double null_offset = two_pi / a;
    CHECK(std::abs(cms_nbs_pattern(a, a, psi_opt + AngularPair{null_offset, 0.0}, psi_in, psi_opt)) < 1e-12);
    CHECK(std::abs(cms_nbs_pattern(a, a, psi_opt + AngularPair{0.0, -null_offset}, psi_in, psi_opt)) < 1e-12);
}

TEST_CASE("dense arrays converge to the continuous steering pattern", "[cms]") {
    const double lambda = 2e-3;
    const double aperture = 8.0 * lambda;
    const AngularPair psi_in{0.0, 0.0};
    const AngularPair psi_opt = from_normalized(0.2, 0.1, lambda);

    PatternGrid cms_grid = PatternGrid::make(lambda, 101);
    evaluate_grid(cms_grid, [&](const AngularPair &out) {
        return cms_nbs_pattern(aperture, aperture, out, psi_in, psi_opt);
    });

    double last_dev = std::numeric_limits<double>::infinity();
    for (double div : {2.0, 4.0, 8.0, 16.0}) {
        const double d = lambda / div;
        const int n = static_cast<int>(std::lround(aperture / d));
        const SurfaceGeometry geom = SurfaceGeometry::dpa(n, n, d, lambda);
        const double peak = static_cast<double>(geom.nx) * geom.ny;
        double dev = 0.0;
        for (int ia = 0; ia < cms_grid.n; ++ia)
            for (int ie = 0; ie < cms_grid.n; ++ie) {
                const AngularPair out = cms_grid.psi_at(ia, ie);
                const double dpa_mag = std::abs(nbs_pattern_closed_form(geom, out, psi_in, psi_opt)) / peak;
                dev = std::max(dev, std::abs(dpa_mag - std::abs(cms_grid.values(ia, ie))));
            }
        CHECK(dev < last_dev);
        last_dev = dev;
        if (div == 16.0)
            CHECK(dev < 0.01); // lambda/16 matches within 1% of the unit peak
    }
}

TEST_CASE("continuous bandpass coefficients", "[cms]") {
    const double lambda = 2e-3;
    const double a = 8.0 * lambda;
    const AngularPair psi_in = from_normalized(0.1, -0.05, lambda);
    const AngularPair psi_min = from_normalized(-0.3, 0.1, lambda);
    const AngularPair psi_max = from_normalized(0.2, 0.5, lambda);

    // zero-width band vanishes identically (no error for the continuous form)
    CHECK(std::abs(cms_sbf_coefficients(a, a, 0.3 * a, 0.7 * a, psi_min, psi_min, psi_in)) == 0.0);

    // aperture-center value is the product of the band widths
    const cd center = cms_sbf_coefficients(a, a, a / 2.0, a / 2.0, psi_min, psi_max, psi_in);
    const double wx = psi_max.azi - psi_min.azi;
    const double wy = psi_max.ele - psi_min.ele;
    CHECK(center.real() == Catch::Approx(wx * wy).epsilon(1e-12));
    CHECK(std::abs(center.imag()) < 1e-9 * std::abs(wx * wy));

    CHECK_THROWS_AS(cms_sbf_coefficients(a, a, -0.01 * a, 0.5 * a, psi_min, psi_max, psi_in), domain_error);
    CHECK_THROWS_AS(cms_sbf_coefficients(a, a, 0.5 * a, 1.01 * a, psi_min, psi_max, psi_in), domain_error);
}

TEST_CASE("discrete bandpass coefficients converge to the continuous form", "[cms]") {
    const double lambda = 2e-3;
    const double a = 4.0 * lambda;
    const AngularPair psi_in{0.0, 0.0};
    const AngularPair psi_min = from_normalized(-0.15, -0.1, lambda);
    const AngularPair psi_max = from_normalized(0.15, 0.1, lambda);

    // identifying element centers with centered aperture coordinates, the
    // lambda/64 grid reproduces the continuous coefficients
    {
        const double d = lambda / 64.0;
        const int n = static_cast<int>(std::lround(a / d));
        const SurfaceGeometry geom = SurfaceGeometry::dpa(n, n, d, lambda);
        const SeparableMap raw = sbf_factors(geom, psi_min, psi_max, psi_in);
        Rng rng(100);
        const double scale = std::abs((psi_max.azi - psi_min.azi) * (psi_max.ele - psi_min.ele));
        for (int s = 0; s < 10; ++s) {
            const int m = 1 + static_cast<int>(rng.below(n));
            const int k = 1 + static_cast<int>(rng.below(n));
            const double x = d * (m - 0.5 * (n + 1)) + 0.5 * a;
            const double y = d * (k - 0.5 * (n + 1)) + 0.5 * a;
            const cd continuous = cms_sbf_coefficients(a, a, x, y, psi_min, psi_max, psi_in);
            const cd discrete = raw.fx[m - 1] * raw.fy[k - 1];
            CHECK(std::abs(discrete - continuous) <= 1e-3 * scale);
        }
    }

    // with the raw x = d m identification the residual shrinks with d
    double last = std::numeric_limits<double>::infinity();
    for (double div : {16.0, 32.0, 64.0}) {
        const double d = lambda / div;
        const int n = static_cast<int>(std::lround(a / d));
        const SurfaceGeometry geom = SurfaceGeometry::dpa(n, n, d, lambda);
        const SeparableMap raw = sbf_factors(geom, psi_min, psi_max, psi_in);
        double dev = 0.0;
        for (int m = 1; m <= n; ++m) {
            const double x = std::min(d * m, a);
            const cd continuous = cms_sbf_coefficients(a, a, x, a / 2.0, psi_min, psi_max, psi_in);
            const cd discrete = raw.fx[m - 1] * raw.fy[(n + 1) / 2 - 1];
            dev = std::max(dev, std::abs(discrete - continuous));
        }
        CHECK(dev < last);
        last = dev;
    }
}

TEST_CASE("continuous bandpass pattern agrees with a dense surrogate", "[cms]") {
    const double lambda = 2e-3;
    const double a = 8.0 * lambda;
    const AngularPair psi_in{0.0, 0.0};
    const AngularPair psi_min = from_normalized(-0.2, 0.1, lambda);
    const AngularPair psi_max = from_normalized(0.2, 0.5, lambda);

    const double d = lambda / 32.0;
    const int n = static_cast<int>(std::lround(a / d));
    const SurfaceGeometry geom = SurfaceGeometry::dpa(n, n, d, lambda);

    const int grid_n = 41;
    Eigen::MatrixXd quad_mag(grid_n, grid_n), surr_mag(grid_n, grid_n);
    PatternGrid grid = PatternGrid::make(lambda, grid_n);
    for (int ia = 0; ia < grid_n; ++ia)
        for (int ie = 0; ie < grid_n; ++ie) {
            const AngularPair out = grid.psi_at(ia, ie);
            quad_mag(ia, ie) = std::abs(cms_sbf_pattern(a, a, out, psi_in, psi_min, psi_max, 128));
            surr_mag(ia, ie) = std::abs(sbf_pattern(geom, out, psi_in, psi_min, psi_max));
        }
    quad_mag /= quad_mag.maxCoeff();
    surr_mag /= surr_mag.maxCoeff();
    CHECK((quad_mag - surr_mag).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("continuous bandpass pattern symmetry and quadrature convergence", "[cms]") {
    const double lambda = 2e-3;
    const double a = 8.0 * lambda;
    const AngularPair psi_in = from_normalized(0.1, -0.2, lambda);
    // band symmetric around the incidence direction
    const AngularPair psi_min = psi_in - from_normalized(0.2, 0.15, lambda);
    const AngularPair psi_max = psi_in + from_normalized(0.2, 0.15, lambda);

    Rng rng(2024);
    for (int rep = 0; rep < 20; ++rep) {
        const AngularPair delta{rng.uniform(-0.5, 0.5) * two_pi / lambda, rng.uniform(-0.5, 0.5) * two_pi / lambda};
        const cd plus = cms_sbf_pattern(a, a, psi_in + delta, psi_in, psi_min, psi_max, 128);
        const cd minus = cms_sbf_pattern(a, a, psi_in - delta, psi_in, psi_min, psi_max, 128);
        CHECK(std::abs(std::abs(plus) - std::abs(minus)) < 1e-12 * std::max(1.0, std::abs(plus)));

        const cd fine = cms_sbf_pattern(a, a, psi_in + delta, psi_in, psi_min, psi_max, 256);
        if (std::abs(fine) > 1e-6)
            CHECK(std::abs(plus - fine) / std::abs(fine) < 1e-3);
    }

    CHECK_THROWS_AS(cms_sbf_pattern(a, a, psi_in, psi_in, psi_min, psi_max, 32), domain_error);
}
