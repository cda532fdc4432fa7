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
// Uplink finer-grained channel estimation, measurement side: the search grid
// inside the downlink-selected group (spaced at the aperture resolution
// 2*pi/A per axis), the overlapped narrow-beam RIS configuration with
// per-slot random phases, dedicated-subcarrier (DSC) allocation across UEs,
// and the assembly of the sensing matrices W, F_u and observations Y_u.
// Linear index i = (t-1) B_x B_y + b addresses entry (b, t) of the
// angular/delay channel matrix throughout; direction index b runs with b_y
// fastest, b = (b_x - 1) B_y + b_y.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ce_downlink.hpp"
#include "channel.hpp"
#include "ris.hpp"
#include "rng.hpp"
#include "sparse_recovery.hpp"

namespace holoris {

// ---------------------------------------------------------------------------
// search space

/// Angular search grid of one group: B points per axis starting at the
/// group's psi_min, spaced at 2*pi/A (one aperture resolution cell).
struct UplinkSearchSpace {
    std::vector<double> zeta_azi; // B_x points
    std::vector<double> zeta_ele; // B_y points

    int b_x() const { return static_cast<int>(zeta_azi.size()); }
    int b_y() const { return static_cast<int>(zeta_ele.size()); }
    int size() const { return b_x() * b_y(); }

    /// 1-based (b_x, b_y); linear index b = (b_x - 1) B_y + b_y.
    AngularPair direction(int bx, int by) const { return {zeta_azi[bx - 1], zeta_ele[by - 1]}; }
    AngularPair direction_linear(int b) const {
        const int bx = (b - 1) / b_y() + 1;
        const int by = (b - 1) % b_y() + 1;
        return direction(bx, by);
    }
};

inline UplinkSearchSpace build_search_space(const GroupIndex &group, const GroupingGrid &grid) {
    require(group.g_x >= 1 && group.g_x <= grid.g_x && group.g_y >= 1 && group.g_y <= grid.g_y,
            "build_search_space: group index out of range");
    UplinkSearchSpace space;
    const AngularPair start = grid.psi_min(group.g_x, group.g_y);
    space.zeta_azi.resize(grid.b_x);
    space.zeta_ele.resize(grid.b_y);
    for (int bx = 0; bx < grid.b_x; ++bx)
        space.zeta_azi[bx] = start.azi + bx * two_pi / grid.ax;
    for (int by = 0; by < grid.b_y; ++by)
        space.zeta_ele[by] = start.ele + by * two_pi / grid.ay;
    return space;
}

// ---------------------------------------------------------------------------
// overlapped narrow beams

/// Superposition of narrow beams toward every search direction with the
/// given phases (one per direction, b_y fastest), weighted 1/sqrt(B_x B_y)
/// and renormalized to max |Phi| = 1 so the map stays passive; the global
/// scale folds into the estimated channel.
inline ReflectionMap overlapped_nbs(const UplinkSearchSpace &space, const std::vector<double> &theta,
                                    const SurfaceGeometry &geom) {
    require(theta.size() == static_cast<std::size_t>(space.size()),
            "overlapped_nbs: need one phase per search direction");
    const AngularPair psi_in{0.0, 0.0};
    ReflectionMap map;
    map.coeffs.setZero(geom.nx, geom.ny);
    const double scale = 1.0 / std::sqrt(static_cast<double>(space.size()));
    for (int bx = 1; bx <= space.b_x(); ++bx)
        for (int by = 1; by <= space.b_y(); ++by) {
            const std::size_t b = static_cast<std::size_t>(bx - 1) * space.b_y() + (by - 1);
            const SeparableMap beam = nbs_factors(geom, space.direction(bx, by), psi_in);
            map.coeffs += (scale * cis(theta[b])) * (beam.fx * beam.fy.transpose());
        }
    return normalize_to_unit_max(map);
}

// ---------------------------------------------------------------------------
// dedicated subcarriers

enum class DscScheme { Block, Uniform, Random };

/// Disjoint equal-size subcarrier sets, one per UE, covering {1..N_CP}.
struct DscAllocation {
    DscScheme scheme = DscScheme::Block;
    int n_cp = 0, n_ue = 0, n_used = 0;
    std::vector<std::vector<int>> sets; // sets[u], ascending, 1-based subcarriers
};

inline DscAllocation allocate_dsc(DscScheme scheme, int n_cp, int n_ue, Rng &rng) {
    require(n_cp >= 1 && n_ue >= 1, "allocate_dsc: counts must be >= 1");
    require(n_cp % n_ue == 0, "allocate_dsc: N_UE must divide N_CP");
    DscAllocation alloc;
    alloc.scheme = scheme;
    alloc.n_cp = n_cp;
    alloc.n_ue = n_ue;
    alloc.n_used = n_cp / n_ue;
    alloc.sets.assign(n_ue, {});
    switch (scheme) {
    case DscScheme::Block:
        for (int u = 0; u < n_ue; ++u)
            for (int n = 1; n <= alloc.n_used; ++n)
                alloc.sets[u].push_back(u * alloc.n_used + n);
        break;
    case DscScheme::Uniform:
        for (int u = 0; u < n_ue; ++u)
            for (int n = 0; n < alloc.n_used; ++n)
                alloc.sets[u].push_back(u + 1 + n * n_ue);
        break;
    case DscScheme::Random: {
        std::vector<int> perm(n_cp);
        std::iota(perm.begin(), perm.end(), 1);
        shuffle(perm, rng);
        for (int u = 0; u < n_ue; ++u) {
            alloc.sets[u].assign(perm.begin() + u * alloc.n_used, perm.begin() + (u + 1) * alloc.n_used);
            std::sort(alloc.sets[u].begin(), alloc.sets[u].end());
        }
        break;
    }
    }
    return alloc;
}

/// Columns of the N_CP-point unitary DFT matrix selected by the (1-based)
/// subcarrier set.
inline Eigen::MatrixXcd partial_dft(int n_cp, const std::vector<int> &subcarriers) {
    Eigen::MatrixXcd f(n_cp, subcarriers.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_cp));
    for (std::size_t c = 0; c < subcarriers.size(); ++c) {
        const int k = subcarriers[c];
        require(k >= 1 && k <= n_cp, "partial_dft: subcarrier index out of range");
        for (int m = 0; m < n_cp; ++m)
            f(m, c) = scale * cis(-two_pi * m * (k - 1) / n_cp);
    }
    return f;
}

// ---------------------------------------------------------------------------
// angular/delay-domain channel

/// Effective angular/delay channel of one UE: row b holds the channel seen
/// through a narrow beam toward search direction b, column t samples the
/// pulse at delay (t-1) T_s.
struct AdDdChannel {
    Eigen::MatrixXcd h; // B_x B_y x N_CP
};

/// Assemble the AdDd channel from uplink parameters. The per-direction LoS
/// vector is
///   h[b] = alpha beta_los G_B gU(nu_los) g_nbs(mu_los; zeta_b)
/// and likewise per NLoS path with the 1/sqrt(L K_f) weight applied when the
/// columns are formed.
inline AdDdChannel build_addd_channel(const RicianChannelParams &params, const UplinkSearchSpace &space,
                                      const RisModel &ris, const SeparableMap &ue_codeword, cd bs_gain,
                                      const PulseShape &shape, const SystemConfig &sys) {
    params.validate(sys);
    const int b_total = space.size();
    const int paths = 1 + params.n_nlos;
    const double nlos_scale = (params.n_nlos > 0 && std::isfinite(params.k_factor))
                                  ? 1.0 / std::sqrt(params.n_nlos * params.k_factor)
                                  : 0.0;

    // per-path angular vectors over the search grid
    Eigen::MatrixXcd ang(b_total, paths);
    for (int p = 0; p < paths; ++p) {
        const AngularPair &mu = (p == 0) ? params.mu_los : params.mu_nlos[p - 1];
        const AngularPair &nu = (p == 0) ? params.nu_los : params.nu_nlos[p - 1];
        const cd beta = (p == 0) ? params.beta_los : params.beta_nlos[p - 1];
        const cd common = params.alpha * beta * bs_gain * ue_combining_gain(ue_codeword, nu);
        for (int b = 1; b <= b_total; ++b)
            ang(b - 1, p) = common * ris.nbs_pattern(mu, params.psi_r, space.direction_linear(b));
    }

    AdDdChannel ch;
    ch.h.setZero(b_total, sys.n_cp);
    for (int t = 1; t <= sys.n_cp; ++t) {
        const double sample = (t - 1) * sys.ts;
        ch.h.col(t - 1) = ang.col(0) * raised_cosine(sample - params.tau_los, shape);
        if (nlos_scale > 0.0)
            for (int p = 1; p < paths; ++p)
                ch.h.col(t - 1) += nlos_scale * ang.col(p) * raised_cosine(sample - params.tau_nlos[p - 1], shape);
    }
    return ch;
}

// ---------------------------------------------------------------------------
// measurements

/// Sensing side of the uplink: W rows are the per-slot random-phase
/// combiners scaled by sqrt(P/N_used), F_u the partial DFT of the UE's DSCs.
struct SensingMatrices {
    Eigen::MatrixXcd w;           // N_P x B_x B_y
    Eigen::MatrixXcd f_u;         // N_CP x N_used
    Eigen::MatrixXd theta;        // N_P x B_x B_y, slot phases
    double p_tx_ul = 0.0;
    int n_used = 0;
};

struct MeasurementSet {
    Eigen::MatrixXcd y;     // N_P x N_used
    Eigen::MatrixXcd noise; // same shape
};

/// Random-phase sensing matrix for N_P slots. Draw order: slots outer,
/// directions inner (b_y fastest).
inline SensingMatrices make_sensing_matrix(int n_p, int b_total, double p_tx_ul, int n_used, Rng &rng) {
    require(n_p >= 1 && b_total >= 1, "make_sensing_matrix: counts must be >= 1");
    require(p_tx_ul > 0.0 && n_used >= 1, "make_sensing_matrix: power and N_used must be positive");
    SensingMatrices s;
    s.p_tx_ul = p_tx_ul;
    s.n_used = n_used;
    s.theta.resize(n_p, b_total);
    s.w.resize(n_p, b_total);
    const double amp = std::sqrt(p_tx_ul / n_used) / std::sqrt(static_cast<double>(b_total));
    for (int i = 0; i < n_p; ++i)
        for (int b = 0; b < b_total; ++b) {
            s.theta(i, b) = rng.phase();
            s.w(i, b) = amp * cis(s.theta(i, b));
        }
    return s;
}

/// Y = W H F_u + N with i.i.d. complex Gaussian noise of power sigma_n2.
/// Noise draw order: slots outer, subcarriers inner.
inline MeasurementSet measure(const SensingMatrices &s, const AdDdChannel &h, double sigma_n2, Rng &rng) {
    require(s.w.cols() == h.h.rows(), "measure: W and H disagree on the direction count");
    require(s.f_u.rows() == h.h.cols(), "measure: F_u and H disagree on N_CP");
    MeasurementSet m;
    m.noise.resize(s.w.rows(), s.f_u.cols());
    for (Eigen::Index i = 0; i < m.noise.rows(); ++i)
        for (Eigen::Index n = 0; n < m.noise.cols(); ++n)
            m.noise(i, n) = rng.awgn(sigma_n2);
    m.y = s.w * h.h * s.f_u + m.noise;
    return m;
}

/// One-call form: random phases, the UE's partial DFT, and the noisy
/// observation for a single UE.
inline std::pair<SensingMatrices, MeasurementSet> build_measurements(const AdDdChannel &h,
                                                                     const std::vector<int> &dsc_set, int n_p,
                                                                     double p_tx_ul, double sigma_n2, int n_cp,
                                                                     Rng &rng) {
    SensingMatrices s = make_sensing_matrix(n_p, static_cast<int>(h.h.rows()), p_tx_ul,
                                            static_cast<int>(dsc_set.size()), rng);
    s.f_u = partial_dft(n_cp, dsc_set);
    MeasurementSet m = measure(s, h, sigma_n2, rng);
    return {std::move(s), std::move(m)};
}

/// Sensing operator of a UE's measurement set.
inline KroneckerOperator sensing_operator(const SensingMatrices &s) {
    return KroneckerOperator(s.f_u.transpose(), s.w);
}

// ---------------------------------------------------------------------------
// least-squares baseline

/// Well-determined least-squares estimate of the AdDd channel. Requires
/// every subcarrier to be sounded (N_used = N_CP) and at least B_x B_y
/// slots; the minimum-norm solution is W^+ Y F^H via the Kronecker
/// pseudoinverse identity. Under-determined inputs are rejected; a
/// rank-deficient W raises a numeric error with its condition estimate.
inline AdDdChannel ls_baseline(const SensingMatrices &s, const MeasurementSet &m) {
    const Eigen::Index n_p = s.w.rows();
    const Eigen::Index b_total = s.w.cols();
    const Eigen::Index n_cp = s.f_u.rows();
    const Eigen::Index n_used = s.f_u.cols();
    if (n_used < n_cp || n_p < b_total)
        throw domain_error("ls_baseline: under-determined system (need N_used = N_CP and N_P >= B_x B_y)");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(s.w);
    if (qr.rank() < b_total) {
        std::ostringstream msg;
        msg << "ls_baseline: rank-deficient sensing matrix, rank " << qr.rank() << " of " << b_total;
        throw numeric_error(msg.str());
    }
    AdDdChannel est;
    est.h = qr.solve(m.y) * s.f_u.adjoint();
    return est;
}

} // namespace holoris
