/*
 Copyright 2025 The brachsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <array>
#include <cmath>

namespace brachsim {

/// State vector x = [theta, gamma, dtheta, dgamma].
///
/// theta is the rod angle from the downward vertical and is kept unwrapped:
/// it accumulates across full revolutions so that crossing counts and
/// terminal-angle conditions (e.g. |theta| = 9 pi) are direct. gamma is the
/// crank angle of the slider mechanism.
struct State {
    double theta = 0.0;   ///< rod angle [rad], unwrapped
    double gamma = 0.0;   ///< crank angle [rad]
    double dtheta = 0.0;  ///< rod angular velocity [rad/s]
    double dgamma = 0.0;  ///< crank angular velocity [rad/s]

    std::array<double, 4> to_array() const { return {theta, gamma, dtheta, dgamma}; }
    static State from_array(const std::array<double, 4>& a) {
        return {a[0], a[1], a[2], a[3]};
    }

    bool finite() const {
        return std::isfinite(theta) && std::isfinite(gamma) && std::isfinite(dtheta) &&
               std::isfinite(dgamma);
    }

    friend State operator+(const State& a, const State& b) {
        return {a.theta + b.theta, a.gamma + b.gamma, a.dtheta + b.dtheta, a.dgamma + b.dgamma};
    }
    friend State operator-(const State& a, const State& b) {
        return {a.theta - b.theta, a.gamma - b.gamma, a.dtheta - b.dtheta, a.dgamma - b.dgamma};
    }
    friend State operator*(double s, const State& a) {
        return {s * a.theta, s * a.gamma, s * a.dtheta, s * a.dgamma};
    }
    State& operator+=(const State& b) {
        theta += b.theta;
        gamma += b.gamma;
        dtheta += b.dtheta;
        dgamma += b.dgamma;
        return *this;
    }
};

/// Component pair indexed by the two generalized coordinates.
struct JointVec {
    double rod = 0.0;    ///< theta component
    double crank = 0.0;  ///< gamma component
};

/// Angle reduced to (-pi, pi].
inline double wrap_to_pi(double angle) { return std::remainder(angle, 2.0 * M_PI); }

}  // namespace brachsim
