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
// Orthogonal matching pursuit over the implicit operator F^T (x) W (the
// Kronecker product is never materialized): forward and adjoint applications
// use the two-sided identities
//   (F^T (x) W) vec(H) = vec(W H F)
//   (F^T (x) W)^H vec(R) = vec(W^H R F^H)
// and the column with linear index i = (t-1) B + b is the Kronecker product
// of column t of F^T with column b of W.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "common.hpp"

namespace holoris {

/// Implicit sensing operator A = left (x) right with left = F_u^T
/// (N_used x N_CP) and right = W (N_P x B), acting on vec(H) for H of shape
/// B x N_CP. Multiplication counts are accumulated so callers can report the
/// arithmetic cost of a recovery run.
class KroneckerOperator {
  public:
    KroneckerOperator(Eigen::MatrixXcd left, Eigen::MatrixXcd right)
        : left_(std::move(left)), right_(std::move(right)) {
        require(left_.size() > 0 && right_.size() > 0, "KroneckerOperator: empty factor");
    }

    Eigen::Index rows() const { return left_.rows() * right_.rows(); } // measurements
    Eigen::Index cols() const { return left_.cols() * right_.cols(); } // unknowns
    Eigen::Index n_used() const { return left_.rows(); }
    Eigen::Index n_cp() const { return left_.cols(); }
    Eigen::Index n_p() const { return right_.rows(); }
    Eigen::Index b_total() const { return right_.cols(); }
    const Eigen::MatrixXcd &left() const { return left_; }
    const Eigen::MatrixXcd &right() const { return right_; }

    /// vec(W H F) for h = vec(H).
    Eigen::VectorXcd apply(const Eigen::VectorXcd &h) const {
        require(h.size() == cols(), "KroneckerOperator::apply: size mismatch");
        const Eigen::MatrixXcd hm = Eigen::Map<const Eigen::MatrixXcd>(h.data(), b_total(), n_cp());
        const Eigen::MatrixXcd y = right_ * hm * left_.transpose();
        mults_ += static_cast<std::uint64_t>(n_p()) * b_total() * n_cp() +
                  static_cast<std::uint64_t>(n_p()) * n_cp() * n_used();
        return Eigen::Map<const Eigen::VectorXcd>(y.data(), y.size());
    }

    /// vec(W^H R F^H) for r = vec(R).
    Eigen::VectorXcd adjoint_apply(const Eigen::VectorXcd &r) const {
        require(r.size() == rows(), "KroneckerOperator::adjoint_apply: size mismatch");
        const Eigen::MatrixXcd rm = Eigen::Map<const Eigen::MatrixXcd>(r.data(), n_p(), n_used());
        const Eigen::MatrixXcd c = right_.adjoint() * rm * left_.conjugate();
        mults_ += static_cast<std::uint64_t>(b_total()) * n_p() * n_used() +
                  static_cast<std::uint64_t>(b_total()) * n_used() * n_cp();
        return Eigen::Map<const Eigen::VectorXcd>(c.data(), c.size());
    }

    /// Column i (1-based linear index) of the implied matrix.
    Eigen::VectorXcd column(Eigen::Index i) const {
        require(i >= 1 && i <= cols(), "KroneckerOperator::column: index out of range");
        const Eigen::Index b = (i - 1) % b_total();
        const Eigen::Index t = (i - 1) / b_total();
        Eigen::VectorXcd col(rows());
        for (Eigen::Index q = 0; q < n_used(); ++q)
            col.segment(q * n_p(), n_p()) = left_(q, t) * right_.col(b);
        return col;
    }

    /// Materialized A, for small-shape oracle checks only.
    Eigen::MatrixXcd materialize() const {
        Eigen::MatrixXcd a(rows(), cols());
        for (Eigen::Index i = 1; i <= cols(); ++i)
            a.col(i - 1) = column(i);
        return a;
    }

    std::uint64_t multiplication_count() const { return mults_; }
    void reset_multiplication_count() const { mults_ = 0; }

  private:
    Eigen::MatrixXcd left_;
    Eigen::MatrixXcd right_;
    mutable std::uint64_t mults_ = 0;
};

struct OmpConfig {
    int max_iters = 20;
    double residual_tol = 0.0; // 0 disables the early stop

    void validate() const {
        require(max_iters >= 1, "OmpConfig: max_iters must be >= 1");
        require(residual_tol >= 0.0, "OmpConfig: residual_tol must be >= 0");
    }
};

struct SparseEstimate {
    std::vector<Eigen::Index> support;  // 1-based linear indices, selection order
    Eigen::VectorXcd values;            // coefficients on the support
    Eigen::MatrixXcd h_hat;             // B x N_CP estimate
    std::vector<double> residual_norms; // after each iteration
    std::vector<Eigen::Index> trace;    // chosen index per iteration
    std::uint64_t multiplications = 0;
};

/// Index (1-based) of the largest |A^H r| entry; ties resolve to the lowest
/// index.
inline Eigen::Index matched_filter(const KroneckerOperator &op, const Eigen::VectorXcd &residual) {
    const Eigen::VectorXcd corr = op.adjoint_apply(residual);
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < corr.size(); ++i)
        if (std::abs(corr[i]) > best_abs) {
            best_abs = std::abs(corr[i]);
            best = i;
        }
    return best + 1;
}

/// Least-squares coefficients over the selected columns, solved by
/// column-pivoted Householder QR.
inline Eigen::VectorXcd support_ls(const KroneckerOperator &op, const Eigen::VectorXcd &measurements,
                                   const std::vector<Eigen::Index> &support) {
    require(!support.empty(), "support_ls: empty support");
    require(static_cast<Eigen::Index>(support.size()) <= op.rows(),
            "support_ls: support larger than the measurement count");
    Eigen::MatrixXcd a_sel(op.rows(), support.size());
    for (std::size_t c = 0; c < support.size(); ++c)
        a_sel.col(c) = op.column(support[c]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a_sel);
    const Eigen::Index rank = qr.rank();
    if (rank < static_cast<Eigen::Index>(support.size())) {
        const auto &r = qr.matrixR();
        const double r_max = std::abs(r(0, 0));
        const double r_min = std::abs(r(support.size() - 1, support.size() - 1));
        std::ostringstream msg;
        msg << "support_ls: numerically singular selected-column system, rank " << rank << " of " << support.size()
            << ", |R| diagonal ratio " << (r_min > 0.0 ? r_max / r_min : std::numeric_limits<double>::infinity());
        throw numeric_error(msg.str());
    }
    return qr.solve(measurements);
}

/// Greedy sparse recovery: matched filter, support augmentation, LS on the
/// support, residual update, for max_iters rounds (or until the residual
/// norm falls below residual_tol when that is enabled). An exactly zero
/// residual ends the loop: re-running the matched filter on it would
/// re-select an index already in the support.
inline SparseEstimate omp(const KroneckerOperator &op, const Eigen::VectorXcd &measurements, const OmpConfig &cfg) {
    cfg.validate();
    require(measurements.size() == op.rows(), "omp: measurement size mismatch");
    op.reset_multiplication_count();

    SparseEstimate est;
    Eigen::VectorXcd residual = measurements;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        if (residual.norm() == 0.0)
            break;
        const Eigen::Index pick = matched_filter(op, residual);
        est.support.push_back(pick);
        est.trace.push_back(pick);
        est.values = support_ls(op, measurements, est.support);
        Eigen::VectorXcd on_support = Eigen::VectorXcd::Zero(op.rows());
        for (std::size_t c = 0; c < est.support.size(); ++c)
            on_support += op.column(est.support[c]) * est.values[c];
        residual = measurements - on_support;
        est.residual_norms.push_back(residual.norm());
        if (cfg.residual_tol > 0.0 && residual.norm() <= cfg.residual_tol)
            break;
    }

    est.h_hat.setZero(op.b_total(), op.n_cp());
    for (std::size_t c = 0; c < est.support.size(); ++c) {
        const Eigen::Index b = (est.support[c] - 1) % op.b_total();
        const Eigen::Index t = (est.support[c] - 1) / op.b_total();
        est.h_hat(b, t) = est.values[c];
    }
    est.multiplications = op.multiplication_count();
    return est;
}

} // namespace holoris
