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
#include "holoris/surface.hpp"

using namespace holoris;

TEST_CASE("surface geometry invariants", "[surface]") {
    const double lambda = 2e-3;
    const SurfaceGeometry g = SurfaceGeometry::dpa(64, 32, lambda / 2.0, lambda);
    CHECK(g.ax == Catch::Approx(64 * lambda / 2.0));
    CHECK(g.ay == Catch::Approx(32 * lambda / 2.0));

    SurfaceGeometry bad = g;
    bad.ax *= 1.01; // N_x d no longer matches A_x
    CHECK_THROWS_AS(bad.validate(), domain_error);

    CHECK_THROWS_AS(SurfaceGeometry::dpa(8, 8, 0.6 * lambda, lambda), domain_error);
    CHECK_NOTHROW(SurfaceGeometry::cms(0.2, 0.2, lambda));
}

TEST_CASE("quantizer phase sets", "[surface]") {
    const QuantizerConfig b1 = QuantizerConfig::with_bits(1);
    REQUIRE(b1.phase_set.size() == 2);
    CHECK(b1.phase_set[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(b1.phase_set[1] == Catch::Approx(pi));

    const QuantizerConfig b2 = QuantizerConfig::with_bits(2);
    REQUIRE(b2.phase_set.size() == 4);
    CHECK(b2.phase_set[0] == Catch::Approx(-pi / 2.0));
    CHECK(b2.phase_set[1] == Catch::Approx(0.0).margin(1e-15));
    CHECK(b2.phase_set[2] == Catch::Approx(pi / 2.0));
    CHECK(b2.phase_set[3] == Catch::Approx(pi));
}

TEST_CASE("quantize_phases identity, ties, magnitudes", "[surface]") {
    ReflectionMap map;
    map.coeffs.resize(2, 2);
    map.coeffs << cd(0.5, 0.5), cd(0.0, 0.9), cd(-0.3, 0.0), cd(0.1, -0.1);

    // no-quantization sentinel returns the input untouched
    const ReflectionMap same = quantize_phases(map, QuantizerConfig::unquantized());
    CHECK((same.coeffs - map.coeffs).cwiseAbs().maxCoeff() == 0.0);

    // B = 1: phase pi/2 ties between 0 and pi; the smaller phase wins
    ReflectionMap tie;
    tie.coeffs.resize(1, 1);
    tie.coeffs(0, 0) = cd(0.0, 1.0);
    const ReflectionMap q = quantize_phases(tie, QuantizerConfig::with_bits(1));
    CHECK(q.coeffs(0, 0).real() == Catch::Approx(1.0));
    CHECK(std::abs(q.coeffs(0, 0).imag()) < 1e-12);

    // magnitudes survive quantization
    const ReflectionMap q3 = quantize_phases(map, QuantizerConfig::with_bits(3));
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            CHECK(std::abs(q3.coeffs(i, k)) == Catch::Approx(std::abs(map.coeffs(i, k))).margin(1e-15));
}

TEST_CASE("three-bit quantization keeps the steering peak within 5 percent", "[surface]") {
    const double lambda = 2e-3;
    const SurfaceGeometry geom = SurfaceGeometry::dpa(64, 64, lambda / 4.0, lambda);
    const AngularPair psi_in{0.0, 0.0};
    const AngularPair psi_opt = from_normalized(0.37, -0.22, lambda);
    const ReflectionMap map = nbs_coefficients(geom, psi_opt, psi_in);
    const ReflectionMap q = quantize_phases(map, QuantizerConfig::with_bits(3));
    const double peak = std::abs(beam_pattern_dpa(map, geom, psi_opt, psi_in));
    const double peak_q = std::abs(beam_pattern_dpa(q, geom, psi_opt, psi_in));
    CHECK(peak == Catch::Approx(64.0 * 64.0).epsilon(1e-12));
    CHECK(peak_q >= 0.95 * peak);
}

TEST_CASE("pattern deviation shrinks as quantization bits grow", "[surface]") {
    const double lambda = 2e-3;
    const SurfaceGeometry geom = SurfaceGeometry::dpa(64, 64, lambda / 4.0, lambda);
    const AngularPair psi_in{0.0, 0.0};
    const AngularPair psi_opt = from_normalized(0.31, 0.12, lambda);
    const ReflectionMap map = nbs_coefficients(geom, psi_opt, psi_in);

    PatternGrid ref = PatternGrid::make(lambda, 41);
    evaluate_map_grid(ref, map, geom.d, psi_in);
    const double peak = ref.values.cwiseAbs().maxCoeff();

    double last = std::numeric_limits<double>::infinity();
    for (int bits : {1, 2, 3, 4}) {
        const ReflectionMap q = quantize_phases(map, QuantizerConfig::with_bits(bits));
        PatternGrid grid = PatternGrid::make(lambda, 41);
        evaluate_map_grid(grid, q, geom.d, psi_in);
        const double dev = (grid.values.cwiseAbs() - ref.values.cwiseAbs()).cwiseAbs().maxCoeff() / peak;
        CHECK(dev < last);
        last = dev;
    }
}

TEST_CASE("effective reflection area", "[surface]") {
    const double lambda = 2e-3;
    const SurfaceGeometry cms = SurfaceGeometry::cms(0.2, 0.2, lambda);
    CHECK(effective_reflection_area(cms, 123.0) == Catch::Approx(0.04));

    const SurfaceGeometry dpa = SurfaceGeometry::dpa(200, 200, 1e-3, lambda);
    const double s_ele = 200e-6 * 200e-6;
    CHECK(effective_reflection_area(dpa, s_ele) == Catch::Approx(0.04 / 1e-6 * s_ele));
    CHECK(effective_reflection_area(dpa, s_ele) == Catch::Approx(1.6e-3));

    // full fill factor reproduces the continuous aperture
    CHECK(effective_reflection_area(dpa, dpa.d * dpa.d) == Catch::Approx(effective_reflection_area(cms, 0.0)));

    CHECK_THROWS_AS(effective_reflection_area(dpa, 2.0 * dpa.d * dpa.d), domain_error);
}
