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

#include <cmath>

#include "common.hpp"

namespace holoris {

/// Physical direction: azimuth in [0, 2*pi), elevation (polar angle measured
/// from the surface normal) in [0, pi/2].
struct PhysicalAngle {
    double theta_azi = 0.0; // rad
    double theta_ele = 0.0; // rad

    void validate() const {
        require(theta_azi >= 0.0 && theta_azi < two_pi, "PhysicalAngle: azimuth must be in [0, 2*pi)");
        require(theta_ele >= 0.0 && theta_ele <= pi / 2.0, "PhysicalAngle: elevation must be in [0, pi/2]");
    }
};

/// 2-tuple spatial frequency [rad/m] encoding a propagation direction.
/// Differences of two AngularPairs are also carried in this type.
struct AngularPair {
    double azi = 0.0; // rad/m
    double ele = 0.0; // rad/m

    friend AngularPair operator-(const AngularPair &a, const AngularPair &b) {
        return {a.azi - b.azi, a.ele - b.ele};
    }
    friend AngularPair operator+(const AngularPair &a, const AngularPair &b) {
        return {a.azi + b.azi, a.ele + b.ele};
    }
    friend bool operator==(const AngularPair &a, const AngularPair &b) {
        return a.azi == b.azi && a.ele == b.ele;
    }
};

/// Spatial frequency of a physical direction:
///   azi = (2*pi/lambda) cos(theta_azi) sin(theta_ele)
///   ele = (2*pi/lambda) sin(theta_azi) sin(theta_ele)
inline AngularPair physical_to_spatial(const PhysicalAngle &theta, double lambda) {
    theta.validate();
    require(lambda > 0.0, "physical_to_spatial: lambda must be positive");
    const double k = two_pi / lambda;
    const double s = std::sin(theta.theta_ele);
    return {k * std::cos(theta.theta_azi) * s, k * std::sin(theta.theta_azi) * s};
}

/// Normalized direction pair (lambda/(2*pi)) * psi, the unit used on plot axes.
inline AngularPair normalized(const AngularPair &psi, double lambda) {
    const double s = lambda / two_pi;
    return {psi.azi * s, psi.ele * s};
}

inline AngularPair from_normalized(double azi_norm, double ele_norm, double lambda) {
    const double k = two_pi / lambda;
    return {k * azi_norm, k * ele_norm};
}

/// Element phase factor e^{j(x*psi_azi + y*psi_ele)} of a plane wave with
/// spatial frequency psi at surface coordinate (x, y), relative to (0, 0).
inline cd steering_phase(double x, double y, const AngularPair &psi) {
    return cis(x * psi.azi + y * psi.ele);
}

} // namespace holoris
