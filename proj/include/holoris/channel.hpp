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
// Frequency-selective effective baseband channel of the BS -> RIS -> UE
// link: one LoS path plus L NLoS paths between RIS and UE (Rician), a fixed
// LoS between BS and RIS, raised-cosine pulse shaping, and the delay /
// frequency domain transforms. All randomness flows through an explicit Rng
// with a documented draw order, so realizations are reproducible from
// (seed, config) alone.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "beampattern.hpp"
#include "rng.hpp"

namespace holoris {

// ---------------------------------------------------------------------------
// configuration types

/// BS / RIS / UE deployment: the UEs live in a ground sector of radius
/// sector_radius and central angle 120 degrees in front of the RIS, whose
/// normal points into the sector. BS and RIS face each other, so the BS-RIS
/// LoS is broadside on both (psi_B = psi_R = [0, 0]).
struct DeploymentGeometry {
    double sector_radius = 20.0; // m
    double h_ris = 10.0;         // BS / RIS mounting height, m
    double h_ue = 1.5;           // UE height, m
};

struct SystemConfig {
    double fc = 0.0;     // carrier, Hz
    double lambda = 0.0; // wavelength, m  (= c / fc)
    double ts = 0.0;     // sampling period, s
    int n_cp = 0;        // taps / pilot subcarriers per UW
    int k_sub = 0;       // payload subcarriers
    int mb_x = 0, mb_y = 0; // BS array
    int mu_x = 0, mu_y = 0; // UE array
    int n_rf = 1;
    double p_tx_dl = 0.0;   // W
    double p_tx_ul = 0.0;   // W
    double sigma_n2 = 0.0;  // noise power, W
    DeploymentGeometry geometry;

    static SystemConfig from_fc(double fc) {
        SystemConfig s;
        s.fc = fc;
        s.lambda = speed_of_light / fc;
        return s;
    }
    static SystemConfig from_lambda(double lambda) {
        SystemConfig s;
        s.lambda = lambda;
        s.fc = speed_of_light / lambda;
        return s;
    }

    void validate() const {
        require(fc > 0.0 && lambda > 0.0, "SystemConfig: carrier and wavelength must be positive");
        require(std::abs(lambda - speed_of_light / fc) <= 1e-9 * lambda,
                "SystemConfig: lambda must equal c / f_c");
        require(ts > 0.0, "SystemConfig: sampling period must be positive");
        require(n_cp >= 1 && k_sub >= 1, "SystemConfig: subcarrier counts must be >= 1");
        require(k_sub % n_cp == 0, "SystemConfig: N_CP must divide K");
        require(mb_x >= 1 && mb_y >= 1 && mu_x >= 1 && mu_y >= 1 && n_rf >= 1,
                "SystemConfig: array sizes must be >= 1");
        require(sigma_n2 >= 0.0, "SystemConfig: noise power must be non-negative");
    }

    SurfaceGeometry bs_upa() const { return SurfaceGeometry::dpa(mb_x, mb_y, lambda / 2.0, lambda); }
    SurfaceGeometry ue_upa() const { return SurfaceGeometry::dpa(mu_x, mu_y, lambda / 2.0, lambda); }
};

/// Large-scale link-budget inputs.
struct PathLossParams {
    double g_tx = 1.0;            // BS element gain
    double g_ris = 1.0;           // RIS element gain
    double g_rx = 1.0;            // UE element gain
    double s_eff = 0.0;           // effective reflection area, m^2
    double s_ele = 0.0;           // single-element area, m^2 (DPA)
    double absorption_coeff = 0.0; // 1/m, exponential molecular-absorption stand-in
    double d_ris_ue = 0.0;        // m

    void validate() const {
        require(g_tx > 0.0 && g_ris > 0.0 && g_rx > 0.0, "PathLossParams: gains must be positive");
        require(s_eff > 0.0, "PathLossParams: effective area must be positive");
        require(absorption_coeff >= 0.0, "PathLossParams: absorption coefficient must be non-negative");
    }
};

/// Raised-cosine pulse, normalized to p(0) = 1.
struct PulseShape {
    double rolloff = 0.8;
    double ts = 0.0;

    void validate() const {
        require(rolloff >= 0.0 && rolloff <= 1.0, "PulseShape: roll-off must be in [0, 1]");
        require(ts > 0.0, "PulseShape: sampling period must be positive");
    }
};

/// Geometry, delays and complex coefficients of one RIS-UE channel
/// realization (angles of the BS-RIS LoS included for completeness).
struct RicianChannelParams {
    int n_nlos = 0;      // L
    double k_factor = 0; // K_f, linear; +inf disables the NLoS part
    AngularPair mu_los, nu_los;
    std::vector<AngularPair> mu_nlos, nu_nlos;
    double tau_los = 0.0;
    std::vector<double> tau_nlos;
    cd alpha{0.0, 0.0};
    cd beta_los{0.0, 0.0};
    std::vector<cd> beta_nlos;
    AngularPair psi_b, psi_r;
    double theta_alpha = 0.0, theta_beta = 0.0;

    void validate(const SystemConfig &sys) const {
        const double horizon = (sys.n_cp - 1) * sys.ts;
        require(n_nlos >= 0, "RicianChannelParams: L must be >= 0");
        require(tau_los >= 0.0 && tau_los <= horizon, "RicianChannelParams: LoS delay outside the CP window");
        require(mu_nlos.size() == static_cast<std::size_t>(n_nlos) && nu_nlos.size() == mu_nlos.size() &&
                    tau_nlos.size() == mu_nlos.size() && beta_nlos.size() == mu_nlos.size(),
                "RicianChannelParams: NLoS vectors must all have length L");
        for (double t : tau_nlos) {
            require(t >= 0.0 && t <= horizon, "RicianChannelParams: NLoS delay outside the CP window");
            require(tau_los < t, "RicianChannelParams: LoS delay must precede every NLoS delay");
        }
    }
};

/// Effective channel after beamforming, sampled on the CP delay grid.
struct EffectiveDelayChannel {
    Eigen::VectorXcd taps; // taps[d] = h(d T_s), d = 0 .. N_CP-1
    cd g_b{0.0, 0.0};      // BS beam-pattern factor
};

// ---------------------------------------------------------------------------
// pulse shaping and path loss

/// Time-domain raised cosine p(tau); the |tau| = T_s/(2 rolloff) singularity
/// evaluates to its limit (pi/4) sinc(pi / (2 rolloff)).
inline double raised_cosine(double tau, const PulseShape &shape) {
    shape.validate();
    const double t = tau / shape.ts;
    const double beta = shape.rolloff;
    const double first = sinc(pi * t);
    if (beta == 0.0)
        return first;
    const double denom = 1.0 - (2.0 * beta * t) * (2.0 * beta * t);
    if (std::abs(denom) < 1e-9)
        return (pi / 4.0) * sinc(pi / (2.0 * beta));
    return first * std::cos(pi * beta * t) / denom;
}

/// Exponential stand-in for molecular absorption, >= 1.
inline double molecular_absorption(double /*fc*/, double dist, double coeff) {
    require(dist >= 0.0, "molecular_absorption: distance must be non-negative");
    require(coeff >= 0.0, "molecular_absorption: coefficient must be non-negative");
    return std::exp(coeff * dist);
}

/// Large-scale coefficients of the BS->RIS (alpha) and RIS->UE LoS (beta)
/// links; phases are uniform over [0, 2*pi). Draw order: theta_alpha,
/// theta_beta.
inline std::pair<cd, cd> channel_coefficients(const PathLossParams &pl, const SystemConfig &sys, Rng &rng) {
    pl.validate();
    const double r = sys.geometry.sector_radius;
    require(r > 0.0 && pl.d_ris_ue > 0.0, "channel_coefficients: distances must be positive");
    const double abs_bs = molecular_absorption(sys.fc, r, pl.absorption_coeff);
    const double abs_ue = molecular_absorption(sys.fc, pl.d_ris_ue, pl.absorption_coeff);
    const double mag_alpha = std::sqrt(pl.g_tx * pl.s_eff / (4.0 * pi * r * r * abs_bs));
    const double mag_beta = std::sqrt(pl.g_ris * pl.g_rx / abs_ue) * sys.lambda / (4.0 * pi * pl.d_ris_ue);
    const double theta_alpha = rng.phase();
    const double theta_beta = rng.phase();
    return {mag_alpha * cis(theta_alpha), mag_beta * cis(theta_beta)};
}

// ---------------------------------------------------------------------------
// deployment geometry and channel sampling

/// UE location inside the service sector: ground distance rho from the foot
/// of the RIS and bearing phi (rad) off the RIS normal, |phi| <= 60 degrees.
struct UePosition {
    double rho = 0.0;
    double phi = 0.0;

    void validate(const DeploymentGeometry &geo) const {
        require(rho > 0.0 && rho <= geo.sector_radius, "UePosition: rho outside the sector radius");
        require(std::abs(phi) <= pi / 3.0, "UePosition: bearing outside the 120-degree sector");
    }
};

/// Uniform position over the sector area. Draw order: radial, bearing.
inline UePosition random_ue_position(const DeploymentGeometry &geo, Rng &rng) {
    const double rho = geo.sector_radius * std::sqrt(rng.uniform());
    const double phi = rng.uniform(-pi / 3.0, pi / 3.0);
    return {std::max(rho, 1e-6 * geo.sector_radius), phi};
}

/// LoS direction from the RIS to the UE, as a spatial-frequency pair in the
/// RIS surface frame (x axis horizontal, y axis vertical, normal into the
/// sector), together with the RIS-UE distance.
inline std::pair<AngularPair, double> los_direction(const DeploymentGeometry &geo, const UePosition &pos,
                                                    double lambda) {
    pos.validate(geo);
    const double dz = geo.h_ue - geo.h_ris;
    const double dist = std::sqrt(pos.rho * pos.rho + dz * dz);
    const double k = two_pi / lambda;
    return {AngularPair{k * pos.rho * std::sin(pos.phi) / dist, k * dz / dist}, dist};
}

/// Uniform random direction over the outgoing hemisphere in physical-angle
/// space, mapped to spatial frequency. Draw order: azimuth, elevation.
inline AngularPair random_direction(double lambda, Rng &rng) {
    const double azi = rng.uniform(0.0, two_pi);
    const double ele = rng.uniform(0.0, pi / 2.0);
    return physical_to_spatial(PhysicalAngle{azi, ele}, lambda);
}

/// Sample one RIS-UE channel realization for a UE at the given position.
///
/// mu_los follows from geometry; nu_los and all NLoS angles are uniform over
/// the hemisphere; delays are uniform over [0, (N_CP-1) T_s] with the LoS
/// strictly first (NLoS delays resampled until later); NLoS coefficients are
/// |beta_los| * CN(0,1), so the 1/sqrt(L K_f) weighting alone sets the
/// LoS/NLoS energy ratio to K_f.
///
/// Draw order: theta_alpha, theta_beta, nu_los, then per NLoS path
/// (mu_l, nu_l, beta_l), then tau_los, then each tau_l (with resampling).
inline RicianChannelParams sample_rician(const SystemConfig &sys, const PathLossParams &pl, int n_nlos,
                                         double k_factor, Rng &rng, const UePosition &pos) {
    sys.validate();
    require(n_nlos >= 0, "sample_rician: L must be >= 0");
    require(k_factor > 0.0, "sample_rician: K_f must be positive");
    auto [mu_los, dist] = los_direction(sys.geometry, pos, sys.lambda);

    PathLossParams pl_here = pl;
    pl_here.d_ris_ue = dist;

    RicianChannelParams p;
    p.n_nlos = n_nlos;
    p.k_factor = k_factor;
    p.mu_los = mu_los;
    p.psi_b = AngularPair{0.0, 0.0};
    p.psi_r = AngularPair{0.0, 0.0};
    auto [alpha, beta_los] = channel_coefficients(pl_here, sys, rng);
    p.alpha = alpha;
    p.beta_los = beta_los;
    p.theta_alpha = std::arg(alpha);
    p.theta_beta = std::arg(beta_los);
    p.nu_los = random_direction(sys.lambda, rng);

    const double mag_beta = std::abs(beta_los);
    p.mu_nlos.resize(n_nlos);
    p.nu_nlos.resize(n_nlos);
    p.beta_nlos.resize(n_nlos);
    p.tau_nlos.resize(n_nlos);
    for (int l = 0; l < n_nlos; ++l) {
        p.mu_nlos[l] = random_direction(sys.lambda, rng);
        p.nu_nlos[l] = random_direction(sys.lambda, rng);
        p.beta_nlos[l] = mag_beta * rng.cnormal();
    }
    const double horizon = (sys.n_cp - 1) * sys.ts;
    p.tau_los = rng.uniform(0.0, horizon);
    for (int l = 0; l < n_nlos; ++l) {
        double t = rng.uniform(0.0, horizon);
        while (t <= p.tau_los)
            t = rng.uniform(0.0, horizon);
        p.tau_nlos[l] = t;
    }
    p.validate(sys);
    return p;
}

/// TDD reciprocity: the uplink channel reuses every downlink parameter.
inline RicianChannelParams reciprocal_uplink(const RicianChannelParams &dl) { return dl; }

// ---------------------------------------------------------------------------
// effective channels

/// Pattern factor of one link end as a function of the probe direction.
using PatternFn = std::function<cd(const AngularPair &)>;

/// Combining gain of a UPA using the coefficient grid w: w^H a(nu), which is
/// the conjugate of the grid's transmit pattern at broadside incidence.
inline cd ue_combining_gain(const SeparableMap &w, const AngularPair &nu) {
    return std::conj(separable_pattern(w, nu, AngularPair{0.0, 0.0}));
}

/// Effective delay-domain channel after beamforming at all three ends:
///   taps[d] = alpha G_B [ beta_los g(mu_los) gU(nu_los) p(dTs - tau_los)
///             + (L K_f)^{-1/2} sum_l beta_l g(mu_l) gU(nu_l) p(dTs - tau_l) ]
/// where g is the RIS pattern factor versus the RIS-side direction and gU
/// the UE combining gain versus the UE-side direction.
inline EffectiveDelayChannel effective_delay_channel(const RicianChannelParams &params, const PatternFn &ris_gain,
                                                     const PatternFn &ue_gain, cd bs_gain, const PulseShape &shape,
                                                     const SystemConfig &sys) {
    params.validate(sys);
    EffectiveDelayChannel ch;
    ch.g_b = bs_gain;
    ch.taps.setZero(sys.n_cp);

    const cd los_weight = params.beta_los * ris_gain(params.mu_los) * ue_gain(params.nu_los);
    const double nlos_scale =
        (params.n_nlos > 0 && std::isfinite(params.k_factor)) ? 1.0 / std::sqrt(params.n_nlos * params.k_factor) : 0.0;
    std::vector<cd> nlos_weight(params.n_nlos);
    for (int l = 0; l < params.n_nlos; ++l)
        nlos_weight[l] = params.beta_nlos[l] * ris_gain(params.mu_nlos[l]) * ue_gain(params.nu_nlos[l]);

    for (int d = 0; d < sys.n_cp; ++d) {
        cd acc = los_weight * raised_cosine(d * sys.ts - params.tau_los, shape);
        if (nlos_scale > 0.0) {
            cd nl{0.0, 0.0};
            for (int l = 0; l < params.n_nlos; ++l)
                nl += nlos_weight[l] * raised_cosine(d * sys.ts - params.tau_nlos[l], shape);
            acc += nlos_scale * nl;
        }
        ch.taps[d] = params.alpha * bs_gain * acc;
    }
    return ch;
}

/// Convenience overload: RIS and UE described by coefficient grids.
inline EffectiveDelayChannel effective_delay_channel(const RicianChannelParams &params, const ReflectionMap &ris_map,
                                                     const SurfaceGeometry &ris_geom, const ReflectionMap &ue_map,
                                                     const SurfaceGeometry &ue_geom, cd bs_gain,
                                                     const PulseShape &shape, const SystemConfig &sys) {
    PatternFn ris = [&](const AngularPair &mu) { return beam_pattern_dpa(ris_map, ris_geom, mu, params.psi_r); };
    PatternFn ue = [&](const AngularPair &nu) {
        return std::conj(beam_pattern_dpa(ue_map, ue_geom, nu, AngularPair{0.0, 0.0}));
    };
    return effective_delay_channel(params, ris, ue, bs_gain, shape, sys);
}

/// Unitary DFT of the tap vector at subcarrier k, 1 <= k <= N_CP.
inline cd frequency_domain_channel(const EffectiveDelayChannel &ch, int k) {
    const int n = static_cast<int>(ch.taps.size());
    require(k >= 1 && k <= n, "frequency_domain_channel: subcarrier index out of range");
    cd acc{0.0, 0.0};
    for (int d = 0; d < n; ++d)
        acc += ch.taps[d] * cis(-two_pi * d * k / n);
    return acc / std::sqrt(static_cast<double>(n));
}

/// Reconstruct all K subcarriers from the N_CP delay taps by zero-padding in
/// the delay domain and taking the unitary K-point DFT.
inline Eigen::VectorXcd interpolate_to_k(const Eigen::VectorXcd &taps, const SystemConfig &sys) {
    require(taps.size() == sys.n_cp, "interpolate_to_k: expected N_CP taps");
    Eigen::VectorXcd out(sys.k_sub);
    const double scale = 1.0 / std::sqrt(static_cast<double>(sys.k_sub));
    for (int k = 1; k <= sys.k_sub; ++k) {
        cd acc{0.0, 0.0};
        for (int d = 0; d < sys.n_cp; ++d)
            acc += taps[d] * cis(-two_pi * d * k / sys.k_sub);
        out[k - 1] = scale * acc;
    }
    return out;
}

} // namespace holoris
