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

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "common.hpp"

namespace holoris {

enum class SurfaceKind { DPA, CMS };

/// Aperture description. For a discrete planar array (DPA) the element grid
/// is N_x x N_y with spacing d and A_x = N_x d, A_y = N_y d. For the
/// continuous-aperture limit (CMS) only the aperture sides are meaningful.
struct SurfaceGeometry {
    double ax = 0.0;     // aperture side along azimuth axis, m
    double ay = 0.0;     // aperture side along elevation axis, m
    double d = 0.0;      // element spacing, m (DPA only)
    int nx = 0;          // element count along x (DPA only)
    int ny = 0;          // element count along y (DPA only)
    double lambda = 0.0; // wavelength, m
    SurfaceKind kind = SurfaceKind::DPA;

    static SurfaceGeometry dpa(int nx, int ny, double d, double lambda) {
        SurfaceGeometry g;
        g.nx = nx;
        g.ny = ny;
        g.d = d;
        g.lambda = lambda;
        g.ax = nx * d;
        g.ay = ny * d;
        g.kind = SurfaceKind::DPA;
        g.validate();
        return g;
    }

    static SurfaceGeometry cms(double ax, double ay, double lambda) {
        SurfaceGeometry g;
        g.ax = ax;
        g.ay = ay;
        g.lambda = lambda;
        g.kind = SurfaceKind::CMS;
        g.validate();
        return g;
    }

    void validate() const {
        require(lambda > 0.0, "SurfaceGeometry: lambda must be positive");
        require(ax > 0.0 && ay > 0.0, "SurfaceGeometry: aperture sides must be positive");
        if (kind == SurfaceKind::DPA) {
            require(nx >= 1 && ny >= 1, "SurfaceGeometry: element counts must be >= 1");
            require(d > 0.0 && d <= lambda / 2.0 + 1e-15, "SurfaceGeometry: need 0 < d <= lambda/2");
            require(std::abs(nx * d - ax) <= 1e-12 * std::abs(ax), "SurfaceGeometry: N_x * d must equal A_x");
            require(std::abs(ny * d - ay) <= 1e-12 * std::abs(ay), "SurfaceGeometry: N_y * d must equal A_y");
        }
    }
};

/// Complex reflection-coefficient grid of a DPA surface, |coeffs(m,n)| <= 1.
/// Row index m runs along the azimuth axis, column index n along elevation.
struct ReflectionMap {
    Eigen::MatrixXcd coeffs;

    int nx() const { return static_cast<int>(coeffs.rows()); }
    int ny() const { return static_cast<int>(coeffs.cols()); }

    double max_abs() const { return coeffs.cwiseAbs().maxCoeff(); }
};

/// Scale a map so that max |coeff| = 1 (passive-element normalization).
inline ReflectionMap normalize_to_unit_max(ReflectionMap map) {
    const double peak = map.max_abs();
    require(peak > 0.0, "normalize_to_unit_max: all-zero reflection map");
    map.coeffs /= peak;
    return map;
}

/// Phase quantizer over the set { 2*pi*(i - 2^(B-1)) / 2^B : i = 1..2^B }.
/// bits == 0 is the no-quantization sentinel (identity).
struct QuantizerConfig {
    int bits = 0;
    std::vector<double> phase_set;

    static QuantizerConfig with_bits(int b) {
        require(b >= 1 && b <= 24, "QuantizerConfig: bits must be in [1, 24]");
        QuantizerConfig q;
        q.bits = b;
        const int levels = 1 << b;
        const int half = 1 << (b - 1);
        q.phase_set.resize(levels);
        for (int i = 1; i <= levels; ++i)
            q.phase_set[i - 1] = two_pi * static_cast<double>(i - half) / levels;
        return q;
    }

    static QuantizerConfig unquantized() { return QuantizerConfig{}; }

    bool is_identity() const { return bits == 0; }
};

/// Distance on the phase circle, in [0, pi].
inline double circular_distance(double a, double b) {
    double diff = std::fmod(a - b, two_pi);
    if (diff < -pi)
        diff += two_pi;
    else if (diff > pi)
        diff -= two_pi;
    return std::abs(diff);
}

/// Snap each coefficient phase to the nearest quantizer level, keeping the
/// magnitude. Ties on the circle resolve to the smaller phase value.
inline ReflectionMap quantize_phases(const ReflectionMap &map, const QuantizerConfig &q) {
    if (q.is_identity())
        return map;
    ReflectionMap out = map;
    for (int n = 0; n < map.ny(); ++n) {
        for (int m = 0; m < map.nx(); ++m) {
            const cd v = map.coeffs(m, n);
            const double phase = std::arg(v);
            // phase_set is ascending, so keeping the first minimum resolves
            // ties to the smaller phase
            double best = q.phase_set.front();
            double best_dist = circular_distance(phase, best);
            for (std::size_t i = 1; i < q.phase_set.size(); ++i) {
                const double dist = circular_distance(phase, q.phase_set[i]);
                if (dist < best_dist) {
                    best = q.phase_set[i];
                    best_dist = dist;
                }
            }
            out.coeffs(m, n) = std::abs(v) * cis(best);
        }
    }
    return out;
}

/// Effective reflection area: the full aperture for a CMS, the filled
/// fraction (A_x A_y / d^2) * S_ele for a DPA with element size S_ele.
inline double effective_reflection_area(const SurfaceGeometry &geom, double s_ele) {
    if (geom.kind == SurfaceKind::CMS)
        return geom.ax * geom.ay;
    require(s_ele > 0.0, "effective_reflection_area: S_ele must be positive");
    require(s_ele <= geom.d * geom.d + 1e-18, "effective_reflection_area: S_ele must not exceed d^2");
    return (geom.ax * geom.ay / (geom.d * geom.d)) * s_ele;
}

} // namespace holoris
