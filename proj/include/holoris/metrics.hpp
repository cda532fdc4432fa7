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
#include <cstdint>
#include <vector>

#include "common.hpp"

namespace holoris {

/// Airtime spent on pilots plus the search/recovery work they imply.
struct OverheadReport {
    double t_dl = 0.0;    // s
    double t_ul = 0.0;    // s
    double t_total = 0.0; // s
    std::uint64_t downlink_search_ops = 0;
    std::uint64_t uplink_mult_count = 0;
};

/// Pilot-overhead accounting: one UW lasts 2 N_CP T_s; the downlink sweep
/// spends G_x G_y M^U_x M^U_y of them and the uplink stage N_P.
inline OverheadReport pilot_overhead(int g_x, int g_y, int m_u_x, int m_u_y, int n_p, int n_cp, double ts,
                                     std::uint64_t uplink_mult_count = 0) {
    require(g_x >= 1 && g_y >= 1 && m_u_x >= 1 && m_u_y >= 1, "pilot_overhead: counts must be >= 1");
    require(n_p >= 0 && n_cp >= 1 && ts > 0.0, "pilot_overhead: invalid pilot parameters");
    OverheadReport rep;
    const double uw = 2.0 * n_cp * ts;
    const std::uint64_t cells =
        static_cast<std::uint64_t>(g_x) * g_y * static_cast<std::uint64_t>(m_u_x) * m_u_y;
    rep.t_dl = uw * static_cast<double>(cells);
    rep.t_ul = uw * n_p;
    rep.t_total = rep.t_dl + rep.t_ul;
    rep.downlink_search_ops = cells;
    rep.uplink_mult_count = uplink_mult_count;
    return rep;
}

/// ||H_hat - H||_F^2 / ||H||_F^2 for one trial.
inline double nmse(const Eigen::MatrixXcd &h_hat, const Eigen::MatrixXcd &h) {
    require(h_hat.rows() == h.rows() && h_hat.cols() == h.cols(), "nmse: shape mismatch");
    const double denom = h.squaredNorm();
    require(denom > 0.0, "nmse: zero-norm reference channel");
    return (h_hat - h).squaredNorm() / denom;
}

/// Per-subcarrier channels and link constants entering the rate computation.
struct AseInput {
    double t_coh = 0.0;      // s
    Eigen::VectorXcd h_fd;   // K per-subcarrier effective channels
    double p_tx_ul = 0.0;    // W
    double sigma_n2 = 0.0;   // W
};

/// Average spectral efficiency with the pilot-airtime penalty:
///   (1 - (T_DL + T_UL)/T_coh) * (1/K) sum_k log2(1 + P |h_k|^2 / (K sigma^2)).
inline double ase(const AseInput &inp, const OverheadReport &overhead) {
    const int k_sub = static_cast<int>(inp.h_fd.size());
    require(k_sub >= 1, "ase: need at least one subcarrier");
    require(inp.t_coh > 0.0 && inp.sigma_n2 > 0.0, "ase: coherence time and noise power must be positive");
    const double airtime = 1.0 - (overhead.t_dl + overhead.t_ul) / inp.t_coh;
    require(airtime > 0.0, "ase: pilot overhead consumes the whole coherence block");
    double acc = 0.0;
    for (int k = 0; k < k_sub; ++k)
        acc += std::log2(1.0 + inp.p_tx_ul * std::norm(inp.h_fd[k]) / (k_sub * inp.sigma_n2));
    return airtime * acc / k_sub;
}

/// Fraction of failed trials.
inline double grouping_failure_prob(const std::vector<bool> &trial_failed) {
    require(!trial_failed.empty(), "grouping_failure_prob: no trials");
    std::size_t failures = 0;
    for (bool f : trial_failed)
        failures += f ? 1 : 0;
    return static_cast<double>(failures) / static_cast<double>(trial_failed.size());
}

/// Sample mean and the 95% normal-approximation confidence half-width.
struct MeanCi {
    double mean = 0.0;
    double ci_halfwidth = 0.0;
};

inline MeanCi mean_ci(const std::vector<double> &samples) {
    require(!samples.empty(), "mean_ci: no samples");
    double mean = 0.0;
    for (double s : samples)
        mean += s;
    mean /= static_cast<double>(samples.size());
    if (samples.size() == 1)
        return {mean, 0.0};
    double var = 0.0;
    for (double s : samples)
        var += (s - mean) * (s - mean);
    var /= static_cast<double>(samples.size() - 1);
    return {mean, 1.96 * std::sqrt(var / static_cast<double>(samples.size()))};
}

} // namespace holoris
