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
//
// Simulation-facing RIS description. Patterns returned here are
// peak-normalized (peak magnitude 1), so the link budget counts the aperture
// exactly once, through the effective reflection area: raw element sums grow
// like 1/d^2 for a fixed aperture, which would let the spacing enter the
// budget twice. The raw (unnormalized) pattern operations remain available
// in beampattern.hpp.

#pragma once

#include <cmath>

#include "beampattern.hpp"

namespace holoris {

/// Band-limited (SBF) pattern evaluator for one cut-off rectangle,
/// peak-normalized over a fixed probe grid spanning the band. The pattern is
/// separable, so the probe maximum factors into per-axis maxima.
class SbfBandPattern {
  public:
    SbfBandPattern(const SurfaceGeometry &geom, const AngularPair &psi_min, const AngularPair &psi_max,
                   const AngularPair &psi_in)
        : map_(sbf_factors(geom, psi_min, psi_max, psi_in).unit_max()) {
        constexpr int probes = 33;
        double peak_x = 0.0, peak_y = 0.0;
        for (int i = 0; i < probes; ++i) {
            const double t = i / (probes - 1.0);
            const double ka = psi_min.azi + (psi_max.azi - psi_min.azi) * t;
            const double ke = psi_min.ele + (psi_max.ele - psi_min.ele) * t;
            peak_x = std::max(peak_x, std::abs(axis_sum(map_.fx, map_.d, ka - psi_in.azi)));
            peak_y = std::max(peak_y, std::abs(axis_sum(map_.fy, map_.d, ke - psi_in.ele)));
        }
        require(peak_x > 0.0 && peak_y > 0.0, "SbfBandPattern: zero pattern over the band");
        peak_ = peak_x * peak_y;
    }

    cd eval(const AngularPair &psi_out, const AngularPair &psi_in) const {
        return separable_pattern(map_, psi_out, psi_in) / peak_;
    }

  private:
    SeparableMap map_;
    double peak_;
};

/// A reflecting surface as seen by the channel-estimation simulators:
/// either a discrete planar array at its true spacing, or the
/// continuous-aperture limit. CMS narrow beams use the sinc closed form;
/// CMS bandpass patterns use a fine-spacing DPA surrogate
/// (spacing = lambda / surrogate_divisor).
struct RisModel {
    SurfaceKind kind = SurfaceKind::DPA;
    SurfaceGeometry geom; // DPA: the array itself; CMS: the surrogate grid
    double ax = 0.0, ay = 0.0, lambda = 0.0;

    static RisModel dpa(const SurfaceGeometry &g) {
        require(g.kind == SurfaceKind::DPA, "RisModel::dpa: geometry must be a DPA");
        RisModel r;
        r.kind = SurfaceKind::DPA;
        r.geom = g;
        r.ax = g.ax;
        r.ay = g.ay;
        r.lambda = g.lambda;
        return r;
    }

    static RisModel cms(double ax, double ay, double lambda, int surrogate_divisor = 4) {
        require(surrogate_divisor >= 2, "RisModel::cms: surrogate divisor must be >= 2");
        const double d = lambda / surrogate_divisor;
        const int nx = static_cast<int>(std::llround(ax / d));
        const int ny = static_cast<int>(std::llround(ay / d));
        require(std::abs(nx * d - ax) <= 1e-9 * ax && std::abs(ny * d - ay) <= 1e-9 * ay,
                "RisModel::cms: aperture sides must be integer multiples of lambda/divisor");
        RisModel r;
        r.kind = SurfaceKind::CMS;
        r.geom = SurfaceGeometry::dpa(nx, ny, d, lambda);
        r.ax = ax;
        r.ay = ay;
        r.lambda = lambda;
        return r;
    }

    /// Narrow-beam pattern toward psi_opt, peak magnitude 1.
    cd nbs_pattern(const AngularPair &psi_out, const AngularPair &psi_in, const AngularPair &psi_opt) const {
        if (kind == SurfaceKind::CMS)
            return cms_nbs_pattern(ax, ay, psi_out, psi_in, psi_opt);
        return nbs_pattern_closed_form(geom, psi_out, psi_in, psi_opt) / (static_cast<double>(geom.nx) * geom.ny);
    }

    /// Bandpass pattern evaluator for one group's cut-offs.
    SbfBandPattern sbf_band(const AngularPair &psi_min, const AngularPair &psi_max, const AngularPair &psi_in) const {
        return SbfBandPattern(geom, psi_min, psi_max, psi_in);
    }

    /// Effective reflection area entering the link budget.
    double s_eff(double s_ele) const {
        if (kind == SurfaceKind::CMS)
            return ax * ay;
        return effective_reflection_area(geom, s_ele);
    }
};

} // namespace holoris
