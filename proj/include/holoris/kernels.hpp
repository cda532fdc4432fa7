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

/// N-order Dirichlet kernel sin(N x / 2) / (N sin(x / 2)).
/// The removable singularities at x = 2 k pi evaluate to (-1)^{k (N-1)}.
inline double dirichlet(int n, double x) {
    require(n >= 1, "dirichlet: order must be >= 1");
    const double k = std::round(x / two_pi);
    const double delta = x - two_pi * k;
    const long long ki = static_cast<long long>(k);
    const double sign = ((ki * (n - 1)) % 2 == 0) ? 1.0 : -1.0;
    if (std::abs(delta) < 1e-12) {
        // second-order expansion around the singularity
        return sign * (1.0 - (static_cast<double>(n) * n - 1.0) * delta * delta / 24.0);
    }
    return sign * std::sin(0.5 * n * delta) / (n * std::sin(0.5 * delta));
}

/// sin(x)/x with sinc(0) = 1.
inline double sinc(double x) {
    if (std::abs(x) < 1e-8)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

} // namespace holoris
