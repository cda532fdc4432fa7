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
// Beam patterns of planar reflecting apertures.
//
// Conventions (used consistently across the library):
//  * element (m, n), 1 <= m <= N_x, 1 <= n <= N_y, sits at
//    x_m = (m-1) d, y_n = (n-1) d;
//  * an incident plane wave with spatial frequency psi contributes the
//    element phase e^{j(x psi_azi + y psi_ele)} (see steering_phase);
//  * the pattern of a coefficient grid Phi toward psi_out for incidence
//    psi_in is   g = sum_{m,n} Phi(m,n) e^{-j(x_m Dx + y_n Dy)}   with
//    Dx = psi_out.azi - psi_in.azi, Dy = psi_out.ele - psi_in.ele.
//
// Narrow beam steering (NBS) uses Phi(m,n) = e^{j d (m k_opt + n l_opt)},
// k_opt = psi_opt.azi - psi_in.azi (note the m, not m-1, index), whose
// pattern is a product of Dirichlet kernels. Spatial bandpass filtering
// (SBF) uses the band-limited inverse transform of an indicator weighting,
// whose per-axis factor is a shifted sinc. Both are separable in x/y, which
// every evaluator here exploits.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "angles.hpp"
#include "kernels.hpp"
#include "surface.hpp"

namespace holoris {

// ---------------------------------------------------------------------------
// separable maps

/// Rank-1 reflection map Phi(m,n) = fx(m) * fy(n) with element spacing d.
struct SeparableMap {
    Eigen::VectorXcd fx;
    Eigen::VectorXcd fy;
    double d = 0.0;

    ReflectionMap full() const {
        ReflectionMap map;
        map.coeffs = fx * fy.transpose();
        return map;
    }

    /// Scale so the assembled grid has max |Phi| = 1.
    SeparableMap unit_max() const {
        SeparableMap out = *this;
        const double px = fx.cwiseAbs().maxCoeff();
        const double py = fy.cwiseAbs().maxCoeff();
        require(px > 0.0 && py > 0.0, "SeparableMap: all-zero factor");
        out.fx /= px;
        out.fy /= py;
        return out;
    }
};

/// sum_{i=0}^{N-1} c_i e^{-j i d delta}
inline cd axis_sum(const Eigen::VectorXcd &c, double d, double delta) {
    cd acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < c.size(); ++i)
        acc += c[i] * cis(-static_cast<double>(i) * d * delta);
    return acc;
}

/// Pattern of a separable map, O(N_x + N_y) per direction.
inline cd separable_pattern(const SeparableMap &map, const AngularPair &psi_out, const AngularPair &psi_in) {
    const AngularPair delta = psi_out - psi_in;
    return axis_sum(map.fx, map.d, delta.azi) * axis_sum(map.fy, map.d, delta.ele);
}

// ---------------------------------------------------------------------------
// direct element summation

/// Beam pattern of an arbitrary coefficient grid by direct summation.
inline cd beam_pattern_dpa(const ReflectionMap &phi, const SurfaceGeometry &geom, const AngularPair &psi_out,
                           const AngularPair &psi_in) {
    require(geom.kind == SurfaceKind::DPA, "beam_pattern_dpa: geometry must be a DPA");
    if (phi.nx() != geom.nx || phi.ny() != geom.ny)
        throw config_error("beam_pattern_dpa: reflection map does not match geometry");
    const AngularPair delta = psi_out - psi_in;
    cd acc{0.0, 0.0};
    for (int n = 0; n < geom.ny; ++n) {
        cd row{0.0, 0.0};
        for (int m = 0; m < geom.nx; ++m)
            row += phi.coeffs(m, n) * cis(-static_cast<double>(m) * geom.d * delta.azi);
        acc += row * cis(-static_cast<double>(n) * geom.d * delta.ele);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// narrow beam steering

/// NBS factors fx(m) = e^{j d m k_opt}, fy(n) = e^{j d n l_opt} (1-based m, n).
inline SeparableMap nbs_factors(const SurfaceGeometry &geom, const AngularPair &psi_opt, const AngularPair &psi_in) {
    require(geom.kind == SurfaceKind::DPA, "nbs_factors: geometry must be a DPA");
    const double k_opt = psi_opt.azi - psi_in.azi;
    const double l_opt = psi_opt.ele - psi_in.ele;
    SeparableMap map;
    map.d = geom.d;
    map.fx.resize(geom.nx);
    map.fy.resize(geom.ny);
    for (int m = 1; m <= geom.nx; ++m)
        map.fx[m - 1] = cis(geom.d * m * k_opt);
    for (int n = 1; n <= geom.ny; ++n)
        map.fy[n - 1] = cis(geom.d * n * l_opt);
    return map;
}

/// Unit-modulus steering coefficients concentrating the pattern at psi_opt.
inline ReflectionMap nbs_coefficients(const SurfaceGeometry &geom, const AngularPair &psi_opt,
                                      const AngularPair &psi_in) {
    return nbs_factors(geom, psi_opt, psi_in).full();
}

/// Closed-form NBS pattern. Identical (not merely proportional) to the
/// element sum over nbs_coefficients: the leading constant
/// N_x N_y e^{j d[(N_x+1)k_opt + (N_y+1)l_opt]/2} makes both routes agree to
/// rounding, and the peak magnitude equals the element-sum peak N_x N_y.
inline cd nbs_pattern_closed_form(const SurfaceGeometry &geom, const AngularPair &psi_out, const AngularPair &psi_in,
                                  const AngularPair &psi_opt) {
    require(geom.kind == SurfaceKind::DPA, "nbs_pattern_closed_form: geometry must be a DPA");
    const double k_opt = psi_opt.azi - psi_in.azi;
    const double l_opt = psi_opt.ele - psi_in.ele;
    const AngularPair delta = psi_out - psi_in;
    const double scale = static_cast<double>(geom.nx) * geom.ny;
    const cd constant = cis(0.5 * geom.d * ((geom.nx + 1) * k_opt + (geom.ny + 1) * l_opt));
    const cd tilt = cis(0.5 * (geom.d - geom.ax) * delta.azi + 0.5 * (geom.d - geom.ay) * delta.ele);
    return scale * constant * tilt * dirichlet(geom.nx, geom.d * (k_opt - delta.azi)) *
           dirichlet(geom.ny, geom.d * (l_opt - delta.ele));
}

// ---------------------------------------------------------------------------
// spatial bandpass filtering

/// Raw per-axis SBF factor: the band integral
///   X(mbar) = int_{k_min}^{k_max} e^{j d k mbar} dk
///           = W sinc(d mbar W / 2) e^{j d mbar (k_c)}
/// with k_min/max = psi_min/max - psi_in, W the band width, k_c its center,
/// and mbar = m - (N+1)/2. The mbar = 0 point is the sinc limit.
inline Eigen::VectorXcd sbf_axis_factor(int n_elems, double d, double psi_min, double psi_max, double psi_in) {
    const double width = psi_max - psi_min;
    const double center = 0.5 * (psi_max + psi_min) - psi_in;
    Eigen::VectorXcd f(n_elems);
    for (int m = 1; m <= n_elems; ++m) {
        const double mbar = m - 0.5 * (n_elems + 1);
        f[m - 1] = width * sinc(0.5 * d * mbar * width) * cis(d * mbar * center);
    }
    return f;
}

/// SBF factors before normalization. Throws on inverted or zero-width bands.
inline SeparableMap sbf_factors(const SurfaceGeometry &geom, const AngularPair &psi_min, const AngularPair &psi_max,
                                const AngularPair &psi_in) {
    require(geom.kind == SurfaceKind::DPA, "sbf_factors: geometry must be a DPA");
    require(psi_min.azi <= psi_max.azi && psi_min.ele <= psi_max.ele,
            "sbf_factors: psi_min must not exceed psi_max");
    require(psi_max.azi - psi_min.azi < two_pi / geom.d + 1e-12 && psi_max.ele - psi_min.ele < two_pi / geom.d + 1e-12,
            "sbf_factors: band must fit within one spatial period 2*pi/d");
    if (psi_max.azi - psi_min.azi <= 0.0 || psi_max.ele - psi_min.ele <= 0.0)
        throw domain_error("sbf_factors: degenerate zero-width band");
    SeparableMap map;
    map.d = geom.d;
    map.fx = sbf_axis_factor(geom.nx, geom.d, psi_min.azi, psi_max.azi, psi_in.azi);
    map.fy = sbf_axis_factor(geom.ny, geom.d, psi_min.ele, psi_max.ele, psi_in.ele);
    return map;
}

/// Bandpass reflection coefficients, normalized to max |Phi| = 1.
inline ReflectionMap sbf_coefficients(const SurfaceGeometry &geom, const AngularPair &psi_min,
                                      const AngularPair &psi_max, const AngularPair &psi_in) {
    return sbf_factors(geom, psi_min, psi_max, psi_in).unit_max().full();
}

/// Bandpass pattern, evaluated exactly as the element sum over the
/// normalized SBF coefficients (no quadrature involved).
inline cd sbf_pattern(const SurfaceGeometry &geom, const AngularPair &psi_out, const AngularPair &psi_in,
                      const AngularPair &psi_min, const AngularPair &psi_max) {
    const SeparableMap map = sbf_factors(geom, psi_min, psi_max, psi_in).unit_max();
    return separable_pattern(map, psi_out, psi_in);
}

// ---------------------------------------------------------------------------
// angular-domain weighting descriptors

/// Period anchors and band bounds of the angular-domain weighting that a
/// coefficient design realizes. NbsCombs describes the impulse-comb
/// weighting of NBS; SbfIndicator the band indicator of SBF, with anchors
/// (a, b) centering the band inside one spatial period.
struct AngularWeighting {
    enum class Kind { NbsCombs, SbfIndicator } kind = Kind::NbsCombs;
    double k_opt = 0.0, l_opt = 0.0;                           // NbsCombs
    double k_min = 0.0, k_max = 0.0, l_min = 0.0, l_max = 0.0; // SbfIndicator
    double a = 0.0, b = 0.0;                                   // period anchors
};

inline AngularWeighting nbs_weighting(const AngularPair &psi_opt, const AngularPair &psi_in) {
    AngularWeighting w;
    w.kind = AngularWeighting::Kind::NbsCombs;
    w.k_opt = psi_opt.azi - psi_in.azi;
    w.l_opt = psi_opt.ele - psi_in.ele;
    return w;
}

inline AngularWeighting sbf_weighting(const SurfaceGeometry &geom, const AngularPair &psi_min,
                                      const AngularPair &psi_max, const AngularPair &psi_in) {
    AngularWeighting w;
    w.kind = AngularWeighting::Kind::SbfIndicator;
    w.k_min = psi_min.azi - psi_in.azi;
    w.k_max = psi_max.azi - psi_in.azi;
    w.l_min = psi_min.ele - psi_in.ele;
    w.l_max = psi_max.ele - psi_in.ele;
    const double period = two_pi / geom.d;
    w.a = w.k_min - 0.5 * (period - (w.k_max - w.k_min));
    w.b = w.l_min - 0.5 * (period - (w.l_max - w.l_min));
    require(w.a < w.k_min && w.k_min <= w.k_max && w.k_max < w.a + period,
            "sbf_weighting: azimuth band does not fit one period");
    require(w.b < w.l_min && w.l_min <= w.l_max && w.l_max < w.b + period,
            "sbf_weighting: elevation band does not fit one period");
    return w;
}

// ---------------------------------------------------------------------------
// continuous-aperture (CMS) limits

/// Continuous-aperture NBS pattern, peak magnitude 1 at psi_out = psi_opt.
inline cd cms_nbs_pattern(double ax, double ay, const AngularPair &psi_out, const AngularPair &psi_in,
                          const AngularPair &psi_opt) {
    require(ax > 0.0 && ay > 0.0, "cms_nbs_pattern: aperture sides must be positive");
    const double k_opt = psi_opt.azi - psi_in.azi;
    const double l_opt = psi_opt.ele - psi_in.ele;
    const AngularPair delta = psi_out - psi_in;
    return cis(-0.5 * ax * delta.azi - 0.5 * ay * delta.ele) * sinc(0.5 * ax * (k_opt - delta.azi)) *
           sinc(0.5 * ay * (l_opt - delta.ele));
}

/// Continuous-aperture SBF coefficient at surface point (x, y):
///   Phi(x, y) = X(xbar) Y(ybar), xbar = x - A_x/2, ybar = y - A_y/2,
/// where each factor is the band integral with the sinc limit at 0.
inline cd cms_sbf_coefficients(double ax, double ay, double x, double y, const AngularPair &psi_min,
                               const AngularPair &psi_max, const AngularPair &psi_in) {
    require(ax > 0.0 && ay > 0.0, "cms_sbf_coefficients: aperture sides must be positive");
    require(x >= 0.0 && x <= ax && y >= 0.0 && y <= ay, "cms_sbf_coefficients: point outside the aperture");
    require(psi_min.azi <= psi_max.azi && psi_min.ele <= psi_max.ele,
            "cms_sbf_coefficients: psi_min must not exceed psi_max");
    const double xbar = x - 0.5 * ax;
    const double ybar = y - 0.5 * ay;
    const double wx = psi_max.azi - psi_min.azi;
    const double wy = psi_max.ele - psi_min.ele;
    const cd fx = wx * sinc(0.5 * xbar * wx) * cis(xbar * (0.5 * (psi_max.azi + psi_min.azi) - psi_in.azi));
    const cd fy = wy * sinc(0.5 * ybar * wy) * cis(ybar * (0.5 * (psi_max.ele + psi_min.ele) - psi_in.ele));
    return fx * fy;
}

/// 1-D composite Simpson over [lo, hi] with n intervals (n made even).
template <typename F>
double simpson(F &&f, double lo, double hi, int n) {
    if (n % 2 != 0)
        ++n;
    const double h = (hi - lo) / n;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < n; ++i)
        acc += f(lo + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Continuous-aperture SBF pattern: the sinc-kernel band integral
///   e^{-j A_x Dx/2} e^{-j A_y Dy/2}
///     int_{band} sinc[(A_x/2)(k - Dx)] sinc[(A_y/2)(l - Dy)] dk dl
/// evaluated by per-axis Simpson quadrature with quad_points intervals.
/// A fine-spacing DPA surrogate (sbf_pattern at d = lambda/32) evaluates the
/// same pattern; both routes agree within the documented tolerance.
inline cd cms_sbf_pattern(double ax, double ay, const AngularPair &psi_out, const AngularPair &psi_in,
                          const AngularPair &psi_min, const AngularPair &psi_max, int quad_points) {
    require(quad_points >= 64, "cms_sbf_pattern: need at least 64 quadrature points per axis");
    require(psi_min.azi <= psi_max.azi && psi_min.ele <= psi_max.ele,
            "cms_sbf_pattern: psi_min must not exceed psi_max");
    const AngularPair delta = psi_out - psi_in;
    const double k_min = psi_min.azi - psi_in.azi;
    const double k_max = psi_max.azi - psi_in.azi;
    const double l_min = psi_min.ele - psi_in.ele;
    const double l_max = psi_max.ele - psi_in.ele;
    const double ix = simpson([&](double k) { return sinc(0.5 * ax * (k - delta.azi)); }, k_min, k_max, quad_points);
    const double iy = simpson([&](double l) { return sinc(0.5 * ay * (l - delta.ele)); }, l_min, l_max, quad_points);
    return cis(-0.5 * ax * delta.azi - 0.5 * ay * delta.ele) * ix * iy;
}

// ---------------------------------------------------------------------------
// hemisphere gain

/// Array gain 4*pi / oint |g|^2 dOmega over the outgoing hemisphere, with the
/// pattern peak-normalized over the quadrature nodes.
inline double array_gain(const std::function<cd(const PhysicalAngle &)> &pattern, int quad_points) {
    require(quad_points >= 8, "array_gain: need at least 8 quadrature points per axis");
    int n = quad_points + (quad_points % 2);
    const double h_azi = two_pi / n;
    const double h_ele = (pi / 2.0) / n;
    // cache |g|^2 on the tensor grid, find the peak
    std::vector<std::vector<double>> mag2(n + 1, std::vector<double>(n + 1));
    double peak2 = 0.0;
    for (int ia = 0; ia <= n; ++ia) {
        // wrap the periodic azimuth endpoint
        const double azi = (ia == n) ? 0.0 : ia * h_azi;
        for (int ie = 0; ie <= n; ++ie) {
            const cd g = pattern(PhysicalAngle{azi, ie * h_ele});
            const double m2 = std::norm(g);
            if (!std::isfinite(m2))
                throw numeric_error("array_gain: pattern evaluated to a non-finite value");
            mag2[ia][ie] = m2;
            peak2 = std::max(peak2, m2);
        }
    }
    require(peak2 > 0.0, "array_gain: identically zero pattern");
    auto simpson_w = [n](int i) { return (i == 0 || i == n) ? 1.0 : ((i % 2 == 1) ? 4.0 : 2.0); };
    double integral = 0.0;
    for (int ia = 0; ia <= n; ++ia)
        for (int ie = 0; ie <= n; ++ie)
            integral += simpson_w(ia) * simpson_w(ie) * (mag2[ia][ie] / peak2) * std::sin(ie * h_ele);
    integral *= (h_azi / 3.0) * (h_ele / 3.0);
    return 4.0 * pi / integral;
}

// ---------------------------------------------------------------------------
// pattern grids

/// Uniform evaluation grid over normalized directions
/// (lambda/(2*pi)) * psi in [-1, 1]^2, n points per axis (default 256).
struct PatternGrid {
    int n = 256;
    double lambda = 0.0;
    std::vector<double> axis_norm;           // shared by both axes
    Eigen::MatrixXcd values;                 // (azi index, ele index)

    static PatternGrid make(double lambda, int n = 256) {
        require(n >= 2, "PatternGrid: need at least 2 points per axis");
        PatternGrid g;
        g.n = n;
        g.lambda = lambda;
        g.axis_norm.resize(n);
        for (int i = 0; i < n; ++i)
            g.axis_norm[i] = -1.0 + 2.0 * i / (n - 1.0);
        g.values.setZero(n, n);
        return g;
    }

    AngularPair psi_at(int ia, int ie) const {
        return from_normalized(axis_norm[ia], axis_norm[ie], lambda);
    }

    /// Indices of the largest |value|; ties resolve to the lowest (ia, ie).
    std::pair<int, int> argmax_abs() const {
        int best_a = 0, best_e = 0;
        double best = -1.0;
        for (int ia = 0; ia < n; ++ia)
            for (int ie = 0; ie < n; ++ie)
                if (std::abs(values(ia, ie)) > best) {
                    best = std::abs(values(ia, ie));
                    best_a = ia;
                    best_e = ie;
                }
        return {best_a, best_e};
    }

    void normalize_peak() {
        const double peak = values.cwiseAbs().maxCoeff();
        if (peak > 0.0)
            values /= peak;
    }
};

/// Evaluate an arbitrary point evaluator over the grid.
template <typename F>
void evaluate_grid(PatternGrid &grid, F &&pattern) {
    for (int ia = 0; ia < grid.n; ++ia)
        for (int ie = 0; ie < grid.n; ++ie)
            grid.values(ia, ie) = pattern(grid.psi_at(ia, ie));
}

/// Evaluate a dense coefficient grid over the pattern grid using the
/// row-factorized sums: O(N_x N_y G + N_x G^2) instead of O(N_x N_y G^2).
inline void evaluate_map_grid(PatternGrid &grid, const ReflectionMap &map, double d, const AngularPair &psi_in) {
    const int nx = map.nx(), ny = map.ny(), g = grid.n;
    const double k0 = two_pi / grid.lambda;
    // row sums over n for every (m, ele grid index)
    Eigen::MatrixXcd rows(nx, g);
    for (int ie = 0; ie < g; ++ie) {
        const double dy = k0 * grid.axis_norm[ie] - psi_in.ele;
        for (int m = 0; m < nx; ++m) {
            cd acc{0.0, 0.0};
            for (int n = 0; n < ny; ++n)
                acc += map.coeffs(m, n) * cis(-static_cast<double>(n) * d * dy);
            rows(m, ie) = acc;
        }
    }
    for (int ia = 0; ia < g; ++ia) {
        const double dx = k0 * grid.axis_norm[ia] - psi_in.azi;
        Eigen::VectorXcd phasors(nx);
        for (int m = 0; m < nx; ++m)
            phasors[m] = cis(-static_cast<double>(m) * d * dx);
        for (int ie = 0; ie < g; ++ie)
            grid.values(ia, ie) = (phasors.array() * rows.col(ie).array()).sum();
    }
}

} // namespace holoris
