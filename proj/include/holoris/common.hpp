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

#include <complex>
#include <stdexcept>
#include <string>

namespace holoris {

using cd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double speed_of_light = 299792458.0; // m/s

inline constexpr cd j1i{0.0, 1.0};

/// e^{j phase}
inline cd cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

/// Thrown when an input violates a documented domain precondition.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown on structural problems (dimension mismatches, bad configuration).
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation fails numerically (singular system, non-finite values).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string &msg) {
    if (!cond)
        throw domain_error(msg);
}

} // namespace holoris
